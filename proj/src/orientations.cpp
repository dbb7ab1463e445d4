#include "linkpoly/orientations.hpp"

#include "linkpoly/kv.hpp"
#include "linkpoly/parallel.hpp"
#include "linkpoly/skein.hpp"

namespace linkpoly {

namespace {

RationalFunction qa(const std::string& s) { return parse_expression(s, vars_qa()); }

std::array<std::int8_t, 4> dir4_at(const MapTables& t, const Diagram& d, int v) {
  std::array<std::int8_t, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = d.dir[t.vertices[v][k]];
  return out;
}

const Bindings& r_to_q() {
  static const Bindings b = {{"z", qa("q - q^-1")}, {"a", qa("a")}};
  return b;
}

const Bindings& ab_to_q() {
  static const Bindings b = {{"A", qa("q")}, {"B", qa("q^-1")}, {"a", qa("a")}};
  return b;
}

// Everything one orientation contributes; the value depends on `link_mode`.
std::vector<WeightedTerm> terms_of(const Diagram& src, const MapTables& t, const BalancedOrientation& o,
                                   int index, bool link_mode) {
  Diagram od = with_orientation(src, o);
  CompactDiagram base = to_compact(od);
  const int nv = static_cast<int>(t.vertices.size());
  const RationalFunction qa_inv = qa("q*a^-1");
  std::vector<WeightedTerm> out;
  for (auto& choice : resolutions(o.site_class)) {
    WeightedTerm w;
    w.orientation = index;
    w.site_class = o.site_class;
    w.weight = RationalFunction::constant(vars_qa(), 1);
    std::vector<SiteAction> acts(nv);
    std::vector<int> pairing(nv);
    for (int v = 0; v < nv; ++v) {
      w.weight *= link_mode ? crossing_weight(o.site_class[v], choice[v]) : vertex_weight(choice[v]);
      if (choice[v] == Smoothing::None) {
        pairing[v] = seifert_pairing(dir4_at(t, od, v));
      } else {
        pairing[v] = smoothing_pairing(t, od, v, choice[v]);
        acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(pairing[v])};
      }
    }
    w.choice = std::move(choice);
    w.result = resolve(base, acts);
    w.rot = smoothed_circles(od.map, t, od.dir, pairing, od.loop_signs).rotation();
    if (w.weight.is_zero()) {
      w.value = RationalFunction::constant(vars_qa(), 0);
    } else {
      RationalFunction poly = link_mode ? substitute(r_poly(w.result), r_to_q(), vars_qa())
                                        : substitute(eval_r(w.result), ab_to_q(), vars_qa());
      w.value = jaeger_j() * qa_inv.pow(w.rot) * w.weight * poly;
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<WeightedTerm> all_terms(const Diagram& d, bool link_mode, bool skip_zero, int jobs) {
  MapTables t(d.map);
  auto orients = enumerate_balanced(d);
  if (skip_zero) {
    std::erase_if(orients, [](const BalancedOrientation& o) {
      for (auto c : o.site_class)
        if (c == SiteClass::TopInward) return true;
      return false;
    });
  }
  auto parts = parallel_map(orients.size(), jobs,
                            [&](std::size_t i) { return terms_of(d, t, orients[i], static_cast<int>(i), link_mode); });
  std::vector<WeightedTerm> out;
  for (auto& p : parts)
    for (auto& w : p) out.push_back(std::move(w));
  return out;
}

RationalFunction sum_values(const std::vector<WeightedTerm>& terms) {
  RationalFunction total = RationalFunction::constant(vars_qa(), 0);
  for (const auto& w : terms) total += w.value;
  return total;
}

}  // namespace

bool is_alternating(SiteClass c) {
  return c == SiteClass::TopOutward || c == SiteClass::TopInward || c == SiteClass::Alternating;
}

const char* site_class_name(SiteClass c) {
  switch (c) {
    case SiteClass::PositiveCrossingLike: return "positive-crossing-like";
    case SiteClass::NegativeCrossingLike: return "negative-crossing-like";
    case SiteClass::TopOutward: return "top-outward";
    case SiteClass::TopInward: return "top-inward";
    case SiteClass::CrossingLike: return "crossing-like";
    case SiteClass::Alternating: return "alternating";
  }
  return "?";
}

char smoothing_letter(Smoothing s) {
  switch (s) {
    case Smoothing::None: return '-';
    case Smoothing::A: return 'A';
    case Smoothing::B: return 'B';
    case Smoothing::L: return 'L';
    case Smoothing::R: return 'R';
  }
  return '?';
}

std::vector<BalancedOrientation> enumerate_balanced(const Diagram& d) {
  if (d.trivalent()) throw DiagramError("balanced orientations need a 4-valent diagram");
  MapTables t(d.map);
  const int n = d.map.dart_count();
  const int nv = static_cast<int>(t.vertices.size());
  for (const auto& cyc : t.vertices)
    if (cyc.size() != 4) throw DiagramError("balanced orientations need a 4-valent diagram");
  std::vector<int> edges;
  for (int x = 0; x < n; ++x)
    if (x < d.map.edge[x]) edges.push_back(x);

  std::vector<std::vector<std::int8_t>> found;
  std::vector<std::int8_t> dir(n, 0);
  std::vector<int> outs(nv, 0), ins(nv, 0);
  auto place = [&](auto&& self, std::size_t k) -> void {
    if (k == edges.size()) {
      found.push_back(dir);
      return;
    }
    const int x = edges[k], y = d.map.edge[x];
    const int vx = t.vertex_of[x], vy = t.vertex_of[y];
    for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
      int& ox = s > 0 ? outs[vx] : ins[vx];
      int& iy = s > 0 ? ins[vy] : outs[vy];
      ++ox;
      ++iy;
      if (ox <= 2 && iy <= 2) {
        dir[x] = s;
        dir[y] = static_cast<std::int8_t>(-s);
        self(self, k + 1);
      }
      --ox;
      --iy;
    }
  };
  place(place, 0);

  const int loops = d.map.free_loops;
  std::vector<BalancedOrientation> out;
  for (const auto& f : found) {
    for (long mask = 0; mask < (1L << loops); ++mask) {
      BalancedOrientation o;
      o.dir = f;
      for (int i = 0; i < loops; ++i) o.loop_signs.push_back(mask >> i & 1 ? -1 : 1);
      Diagram od = with_orientation(d, o);
      o.site_class.resize(nv);
      for (int v = 0; v < nv; ++v) o.site_class[v] = classify_site(t, od, v);
      out.push_back(std::move(o));
    }
  }
  return out;
}

Diagram with_orientation(const Diagram& d, const BalancedOrientation& o) {
  Diagram out = d;
  out.dir = o.dir;
  out.loop_signs = o.loop_signs;
  return out;
}

SiteClass classify_site(const MapTables& t, const Diagram& d, int v) {
  auto d4 = dir4_at(t, d, v);
  const bool adjacent = d4[0] == d4[1] || d4[1] == d4[2];
  const bool rigid = d.over.empty() || d.over[v] < 0;
  if (rigid) return adjacent ? SiteClass::CrossingLike : SiteClass::Alternating;
  if (adjacent) return crossing_sign(t, d, v) > 0 ? SiteClass::PositiveCrossingLike : SiteClass::NegativeCrossingLike;
  return d4[over_position(t, d, v)] == 1 ? SiteClass::TopOutward : SiteClass::TopInward;
}

RationalFunction crossing_weight(SiteClass c, Smoothing s) {
  switch (c) {
    case SiteClass::PositiveCrossingLike:
    case SiteClass::NegativeCrossingLike:
    case SiteClass::CrossingLike:
      if (s != Smoothing::None) throw DiagramError("crossing-like sites are not smoothed");
      return qa("1");
    case SiteClass::TopOutward:
      if (s == Smoothing::A) return qa("q - q^-1");
      if (s == Smoothing::B) return qa("q^-1 - q");
      break;
    case SiteClass::TopInward:
      if (s == Smoothing::A || s == Smoothing::B) return qa("0");
      break;
    case SiteClass::Alternating:
      return vertex_weight(s);
  }
  throw DiagramError("crossing needs an A or B smoothing");
}

RationalFunction vertex_weight(Smoothing s) {
  switch (s) {
    case Smoothing::None: return qa("1");
    case Smoothing::L: return qa("-q");
    case Smoothing::R: return qa("-q^-1");
    default: throw DiagramError("vertex needs an L or R smoothing");
  }
}

int smoothing_pairing(const MapTables& t, const Diagram& d, int v, Smoothing s) {
  switch (s) {
    case Smoothing::A: return a_pairing(over_position(t, d, v));
    case Smoothing::B: return b_pairing(over_position(t, d, v));
    case Smoothing::L: return left_pairing(dir4_at(t, d, v));
    case Smoothing::R: return 1 - left_pairing(dir4_at(t, d, v));
    default: throw DiagramError("no smoothing chosen");
  }
}

std::vector<std::vector<Smoothing>> resolutions(const std::vector<SiteClass>& classes) {
  std::vector<int> alt;
  for (std::size_t v = 0; v < classes.size(); ++v)
    if (is_alternating(classes[v])) alt.push_back(static_cast<int>(v));
  std::vector<std::vector<Smoothing>> out;
  for (long mask = 0; mask < (1L << alt.size()); ++mask) {
    std::vector<Smoothing> c(classes.size(), Smoothing::None);
    for (std::size_t k = 0; k < alt.size(); ++k) {
      bool second = mask >> k & 1;
      bool graph = classes[alt[k]] == SiteClass::Alternating;
      c[alt[k]] = graph ? (second ? Smoothing::R : Smoothing::L) : (second ? Smoothing::B : Smoothing::A);
    }
    out.push_back(std::move(c));
  }
  return out;
}

const RationalFunction& jaeger_j() {
  static const RationalFunction j = qa("1/(q*a^-1 + q^-1*a)");
  return j;
}

std::vector<WeightedTerm> jaeger_terms(const Diagram& link, bool skip_zero, int jobs) {
  if (link.vertex_count() > 0 && (link.over.empty() || link.over[0] < 0))
    throw DiagramError("Jaeger's formula needs a link diagram");
  return all_terms(link, true, skip_zero, jobs);
}

std::vector<WeightedTerm> wu_terms(const Diagram& graph, int jobs) {
  return all_terms(as_graph(graph), false, false, jobs);
}

RationalFunction jaeger_rhs(const Diagram& link, bool skip_zero, int jobs) {
  return sum_values(jaeger_terms(link, skip_zero, jobs));
}

RationalFunction wu_rhs(const Diagram& graph, int jobs) { return sum_values(wu_terms(graph, jobs)); }

RationalFunction jaeger_lhs(const Diagram& link) {
  static const Bindings b = {{"z", qa("q - q^-1")}, {"a", qa("a^2*q^-1")}};
  return substitute(d_poly(link), b, vars_qa());
}

RationalFunction wu_lhs(const Diagram& graph) {
  static const Bindings b = {{"A", qa("q")}, {"B", qa("q^-1")}, {"a", qa("a^2*q^-1")}};
  return substitute(eval_d(graph), b, vars_qa());
}

}  // namespace linkpoly
