#include "linkpoly/correspondence.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

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

const Bindings& ab_to_q() {
  static const Bindings b = {{"A", qa("q")}, {"B", qa("q^-1")}, {"a", qa("a")}};
  return b;
}

Configuration crossing_like_tag(SiteClass c, bool along, bool kept) {
  int base = kept ? 0 : 4;
  int k = (c == SiteClass::PositiveCrossingLike ? 0 : 2) + (along ? 0 : 1);
  return static_cast<Configuration>(base + k);
}

Configuration alternating_tag(SiteClass c, bool a_pair) {
  bool out = c == SiteClass::TopOutward;
  if (a_pair) return out ? Configuration::A1 : Configuration::A2;
  return out ? Configuration::A3 : Configuration::A4;
}

// One way to treat a crossing under a fixed orientation.
struct Option {
  Configuration cfg;
  int pairing = -1;  // -1: kept as a vertex
  std::int8_t f_choice = 0;
  Smoothing wu = Smoothing::None;
  RationalFunction weight;
};

struct SiteContext {
  const MapTables& t;
  const Diagram& od;
  const BalancedOrientation& o;
};

bool along_over(const SiteContext& s, int v) { return s.od.dir[s.od.over[v]] == 1; }

// HJ: Jaeger resolution at alternating sites, then vertex or oriented
// smoothing at crossing-like ones.
std::vector<Option> hj_options(const SiteContext& s, int v) {
  const SiteClass c = s.o.site_class[v];
  std::vector<Option> out;
  if (is_alternating(c)) {
    for (auto sm : {Smoothing::A, Smoothing::B}) {
      int p = smoothing_pairing(s.t, s.od, v, sm);
      out.push_back({alternating_tag(c, sm == Smoothing::A), p, 0, Smoothing::None, crossing_weight(c, sm)});
    }
    return out;
  }
  const bool along = along_over(s, v);
  const int seif = seifert_pairing(dir4_at(s.t, s.od, v));
  const RationalFunction one = crossing_weight(c, Smoothing::None);
  out.push_back({crossing_like_tag(c, along, true), -1, 0, Smoothing::None, one});
  // [L+] = [X] + A [L0], [L-] = [X] + B [L0]
  RationalFunction h = c == SiteClass::PositiveCrossingLike ? qa("q") : qa("q^-1");
  out.push_back({crossing_like_tag(c, along, false), seif, 0, Smoothing::None, one * h});
  return out;
}

// WF: the Kauffman expansion picks vertex / A / B; the orientation must run
// through any smoothing, and alternating vertices then take L or R.
std::vector<Option> wf_options(const SiteContext& s, int v) {
  const SiteClass c = s.o.site_class[v];
  const int op = over_position(s.t, s.od, v);
  const int pa = a_pairing(op), pb = b_pairing(op);
  std::vector<Option> out;
  if (is_alternating(c)) {
    for (auto w : {Smoothing::L, Smoothing::R}) {
      int p = w == Smoothing::L ? left_pairing(dir4_at(s.t, s.od, v)) : 1 - left_pairing(dir4_at(s.t, s.od, v));
      out.push_back({alternating_tag(c, p == pa), p, 0, w, vertex_weight(w)});
    }
    out.push_back({alternating_tag(c, true), pa, 1, Smoothing::None, qa("q")});
    out.push_back({alternating_tag(c, false), pb, 2, Smoothing::None, qa("q^-1")});
    return out;
  }
  const bool along = along_over(s, v);
  const int seif = seifert_pairing(dir4_at(s.t, s.od, v));
  out.push_back({crossing_like_tag(c, along, true), -1, 0, Smoothing::None, vertex_weight(Smoothing::None)});
  if (seif == pa)
    out.push_back({crossing_like_tag(c, along, false), pa, 1, Smoothing::None, qa("q")});
  else
    out.push_back({crossing_like_tag(c, along, false), pb, 2, Smoothing::None, qa("q^-1")});
  return out;
}

// Shared product walk: calls emit(choice indices) for every combination,
// crossing 0 varying fastest.
template <class Emit>
void for_each_choice(const std::vector<std::vector<Option>>& opts, Emit&& emit) {
  const std::size_t n = opts.size();
  std::vector<int> idx(n, 0);
  while (true) {
    emit(idx);
    std::size_t v = 0;
    while (v < n && idx[v] + 1 == static_cast<int>(opts[v].size())) idx[v++] = 0;
    if (v == n) return;
    ++idx[v];
  }
}

struct Built {
  std::vector<Configuration> config;
  std::vector<RationalFunction> weights;
  RationalFunction product;
  std::vector<int> pairing;
  int rot = 0;
  CompactDiagram graph;
};

Built build(const SiteContext& s, const CompactDiagram& base, const std::vector<std::vector<Option>>& opts,
            const std::vector<int>& idx) {
  const int nv = static_cast<int>(opts.size());
  Built b;
  b.product = RationalFunction::constant(vars_qa(), 1);
  b.pairing.resize(nv);
  std::vector<SiteAction> acts(nv);
  for (int v = 0; v < nv; ++v) {
    const Option& op = opts[v][idx[v]];
    b.config.push_back(op.cfg);
    b.weights.push_back(op.weight);
    b.product *= op.weight;
    if (op.pairing < 0) {
      b.pairing[v] = seifert_pairing(dir4_at(s.t, s.od, v));
    } else {
      b.pairing[v] = op.pairing;
      acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(op.pairing)};
    }
  }
  b.rot = smoothed_circles(s.od.map, s.t, s.od.dir, b.pairing, s.od.loop_signs).rotation();
  b.graph = resolve(base, acts);
  return b;
}

RationalFunction prefactor(int rot) { return jaeger_j() * qa("q*a^-1").pow(rot); }

void require_link(const Diagram& d) {
  if (d.trivalent()) throw DiagramError("expected a link diagram");
  for (int o : d.over)
    if (o < 0) throw DiagramError("expected a link diagram (every crossing needs an over strand)");
}

Diagram unoriented(const Diagram& d) {
  Diagram u = d;
  u.dir.clear();
  u.loop_signs.clear();
  return u;
}

template <class Term>
std::vector<Term> flatten(std::vector<std::vector<Term>>&& parts) {
  std::vector<Term> out;
  for (auto& p : parts)
    for (auto& x : p) out.push_back(std::move(x));
  return out;
}

bool same_weights(const std::vector<RationalFunction>& a, const std::vector<RationalFunction>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

bool same_multiset(std::vector<std::vector<RationalFunction>> a, std::vector<std::vector<RationalFunction>> b) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& x : a) {
    bool hit = false;
    for (std::size_t k = 0; k < b.size() && !hit; ++k)
      if (!used[k] && same_weights(x, b[k])) used[k] = hit = true;
    if (!hit) return false;
  }
  return true;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<RationalFunction> parse_bracket(const std::string& s, int line) {
  auto l = s.find('['), r = s.rfind(']');
  if (l == std::string::npos || r == std::string::npos || r < l)
    throw DiagramError("table line " + std::to_string(line) + ": expected [w1, w2, ...]");
  std::vector<RationalFunction> out;
  std::stringstream in(s.substr(l + 1, r - l - 1));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(qa(trim(item)));
    } catch (const std::exception& e) {
      throw DiagramError("table line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

const char* configuration_name(Configuration c) {
  static const char* names[] = {"V1", "V2", "V3", "V4", "C1", "C2", "C3", "C4", "A1", "A2", "A3", "A4"};
  return names[static_cast<int>(c)];
}

RationalFunction hj_configuration_weight(Configuration c) {
  switch (c) {
    case Configuration::V1: case Configuration::V2: case Configuration::V3: case Configuration::V4:
      return qa("1");
    case Configuration::C1: case Configuration::C2: return qa("q");
    case Configuration::C3: case Configuration::C4: return qa("q^-1");
    case Configuration::A1: return qa("q - q^-1");
    case Configuration::A3: return qa("q^-1 - q");
    case Configuration::A2: case Configuration::A4: return qa("0");
  }
  return qa("0");
}

// ------------------------------------------------------------------- models

std::vector<HJTerm> hj_expand(const Diagram& link, int jobs) {
  require_link(link);
  Diagram u = unoriented(link);
  MapTables t(u.map);
  auto orients = enumerate_balanced(u);
  auto parts = parallel_map(orients.size(), jobs, [&](std::size_t oi) {
    const auto& o = orients[oi];
    Diagram od = with_orientation(u, o);
    SiteContext s{t, od, o};
    CompactDiagram base = to_compact(as_graph(od));
    std::vector<std::vector<Option>> opts;
    for (int v = 0; v < u.vertex_count(); ++v) opts.push_back(hj_options(s, v));
    // resolutions first, then the vertex/smoothing choice
    std::vector<std::pair<std::vector<int>, HJTerm>> local;
    for_each_choice(opts, [&](const std::vector<int>& idx) {
      Built b = build(s, base, opts, idx);
      HJTerm h;
      h.orientation = static_cast<int>(oi);
      h.dir = o.dir;
      h.loop_signs = o.loop_signs;
      h.config = std::move(b.config);
      h.weights = std::move(b.weights);
      h.rot = b.rot;
      h.state = std::move(b.graph);
      h.c_weight = prefactor(h.rot) * b.product;
      std::vector<int> key;
      for (int v = 0; v < static_cast<int>(idx.size()); ++v)
        key.push_back(is_alternating(o.site_class[v]) ? idx[v] : 0);
      for (int v = 0; v < static_cast<int>(idx.size()); ++v)
        key.push_back(is_alternating(o.site_class[v]) ? 0 : idx[v]);
      std::reverse(key.begin(), key.begin() + static_cast<long>(idx.size()));
      std::reverse(key.begin() + static_cast<long>(idx.size()), key.end());
      local.emplace_back(std::move(key), std::move(h));
    });
    std::stable_sort(local.begin(), local.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<HJTerm> out;
    for (auto& [k, h] : local) out.push_back(std::move(h));
    return out;
  });
  auto all = flatten(std::move(parts));
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = static_cast<int>(i + 1);
  return all;
}

std::vector<WFTerm> wf_expand(const Diagram& link, int jobs) {
  require_link(link);
  Diagram u = unoriented(link);
  MapTables t(u.map);
  const int nv = u.vertex_count();
  auto orients = enumerate_balanced(u);
  auto parts = parallel_map(orients.size(), jobs, [&](std::size_t oi) {
    const auto& o = orients[oi];
    Diagram od = with_orientation(u, o);
    SiteContext s{t, od, o};
    CompactDiagram base = to_compact(as_graph(od));
    std::vector<std::vector<Option>> opts;
    for (int v = 0; v < nv; ++v) opts.push_back(wf_options(s, v));
    std::vector<WFTerm> out;
    for_each_choice(opts, [&](const std::vector<int>& idx) {
      Built b = build(s, base, opts, idx);
      WFTerm w;
      w.orientation = static_cast<int>(oi);
      w.dir = o.dir;
      w.loop_signs = o.loop_signs;
      int graph = 0, pow3 = 1;
      for (int v = 0; v < nv; ++v) {
        const Option& op = opts[v][idx[v]];
        w.f_choice.push_back(op.f_choice);
        w.wu_choice.push_back(op.wu);
        graph += pow3 * op.f_choice;
        pow3 *= 3;
      }
      w.graph = graph;
      w.config = std::move(b.config);
      w.weights = std::move(b.weights);
      w.rot = b.rot;
      w.result = std::move(b.graph);
      w.d_weight = prefactor(w.rot) * b.product;
      out.push_back(std::move(w));
    });
    return out;
  });
  auto all = flatten(std::move(parts));
  // Graph first, then orientation, then Wu resolution (L before R, crossing 0 slowest).
  auto res_key = [](const WFTerm& w) {
    std::vector<int> k;
    for (auto it = w.wu_choice.rbegin(); it != w.wu_choice.rend(); ++it) k.push_back(*it == Smoothing::R);
    return k;
  };
  std::stable_sort(all.begin(), all.end(), [&](const WFTerm& a, const WFTerm& b) {
    if (a.graph != b.graph) return a.graph < b.graph;
    if (a.orientation != b.orientation) return a.orientation < b.orientation;
    return res_key(a) < res_key(b);
  });
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = static_cast<int>(i + 1);
  return all;
}

int wf_graph_count(const std::vector<WFTerm>& wf) {
  std::vector<int> g;
  for (const auto& w : wf) g.push_back(w.graph);
  std::sort(g.begin(), g.end());
  return static_cast<int>(std::unique(g.begin(), g.end()) - g.begin());
}

RationalFunction hj_total(const std::vector<HJTerm>& hj, int jobs) {
  auto vals = parallel_map(hj.size(), jobs, [&](std::size_t i) {
    if (hj[i].c_weight.is_zero()) return RationalFunction::constant(vars_qa(), 0);
    return hj[i].c_weight * substitute(eval_r(hj[i].state), ab_to_q(), vars_qa());
  });
  RationalFunction total = RationalFunction::constant(vars_qa(), 0);
  for (const auto& v : vals) total += v;
  return total;
}

RationalFunction wf_total(const std::vector<WFTerm>& wf, int jobs) {
  auto vals = parallel_map(wf.size(), jobs, [&](std::size_t i) {
    if (wf[i].d_weight.is_zero()) return RationalFunction::constant(vars_qa(), 0);
    return wf[i].d_weight * substitute(eval_r(wf[i].result), ab_to_q(), vars_qa());
  });
  RationalFunction total = RationalFunction::constant(vars_qa(), 0);
  for (const auto& v : vals) total += v;
  return total;
}

// ----------------------------------------------------------- correspondence

bool CorrespondenceReport::pass() const {
  if (!leftovers.empty() || !disjoint) return false;
  for (const auto& g : groups)
    if (!g.pass) return false;
  return true;
}

CorrespondenceReport build_correspondence(const std::vector<HJTerm>& hj, const std::vector<WFTerm>& wf) {
  using Key = std::pair<std::vector<Configuration>, std::vector<int>>;
  std::map<Key, int> index;
  CorrespondenceReport r;
  for (std::size_t i = 0; i < hj.size(); ++i) {
    if (!index.emplace(Key{hj[i].config, hj[i].loop_signs}, static_cast<int>(i)).second) r.disjoint = false;
    CorrespondenceGroup g;
    g.state = hj[i].id;
    g.weight_sum = RationalFunction::constant(vars_qa(), 0);
    g.d_sum = RationalFunction::constant(vars_qa(), 0);
    r.groups.push_back(std::move(g));
  }
  for (const auto& w : wf) {
    auto it = index.find(Key{w.config, w.loop_signs});
    if (it == index.end() || hj[it->second].dir != w.dir) {
      r.leftovers.push_back(w.id);
      continue;
    }
    auto& g = r.groups[it->second];
    g.members.push_back(w.id);
    RationalFunction prod = RationalFunction::constant(vars_qa(), 1);
    for (const auto& x : w.weights) prod *= x;
    g.weight_sum += prod;
    g.d_sum += w.d_weight;
  }
  for (std::size_t i = 0; i < hj.size(); ++i) {
    auto& g = r.groups[i];
    g.pass = !g.members.empty() && g.d_sum == hj[i].c_weight;
  }
  return r;
}

std::string format_weights(const std::vector<RationalFunction>& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].str();
  return s + "]";
}

std::string format_report(const CorrespondenceReport& r, const std::vector<HJTerm>& hj,
                          const std::vector<WFTerm>& wf) {
  std::ostringstream out;
  out << "# states=" << hj.size() << " terms=" << wf.size() << " graphs=" << wf_graph_count(wf) << "\n";
  out << "# term ids: graph (vertex/A/B per crossing, crossing 1 fastest), then orientation, then L/R\n";
  std::map<int, const WFTerm*> by_id;
  for (const auto& w : wf) by_id[w.id] = &w;
  for (std::size_t i = 0; i < r.groups.size(); ++i) {
    const auto& g = r.groups[i];
    out << "s" << g.state << " c=" << format_weights(hj[i].weights) << " | T={";
    for (std::size_t k = 0; k < g.members.size(); ++k)
      out << (k ? ", " : "") << g.members[k] << ":" << format_weights(by_id.at(g.members[k])->weights);
    out << "} | sum=" << g.weight_sum.str() << " | verdict=" << (g.pass ? "PASS" : "FAIL") << "\n";
  }
  if (!r.leftovers.empty()) {
    out << "leftovers:";
    for (int id : r.leftovers) out << ' ' << id;
    out << "\n";
  }
  out << "result=" << (r.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::vector<TableRow> parse_table(std::istream& in) {
  // <label> [w1, w2] : id [w1, w2]; id [w1, w2]; ...
  std::vector<TableRow> rows;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto colon = s.find(':');
    if (colon == std::string::npos) throw DiagramError("table line " + std::to_string(line) + ": missing ':'");
    TableRow row;
    std::string head = s.substr(0, colon);
    row.label = trim(head.substr(0, head.find('[')));
    row.state = parse_bracket(head, line);
    std::stringstream members(s.substr(colon + 1));
    std::string m;
    while (std::getline(members, m, ';')) {
      if (trim(m).empty()) continue;
      row.members.push_back(parse_bracket(m, line));
      std::string id = trim(m.substr(0, m.find('[')));
      row.member_ids.push_back(id.empty() ? 0 : std::stoi(id));
    }
    if (row.members.empty()) throw DiagramError("table line " + std::to_string(line) + ": no members");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TableRow> load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DiagramError("cannot open " + path);
  return parse_table(in);
}

std::vector<TableRow> report_rows(const CorrespondenceReport& r, const std::vector<HJTerm>& hj,
                                  const std::vector<WFTerm>& wf) {
  std::map<int, const WFTerm*> by_id;
  for (const auto& w : wf) by_id[w.id] = &w;
  std::vector<TableRow> rows;
  for (std::size_t gi = 0; gi < r.groups.size(); ++gi) {
    TableRow row;
    row.label = "s" + std::to_string(hj[gi].id);
    row.state = hj[gi].weights;
    for (int id : r.groups[gi].members) {
      row.member_ids.push_back(id);
      row.members.push_back(by_id.at(id)->weights);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table(const std::vector<TableRow>& rows) {
  auto bracket = [](const std::vector<RationalFunction>& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + w[i].str();
    return s + "]";
  };
  std::string out;
  for (const auto& row : rows) {
    out += row.label + " " + bracket(row.state) + " :";
    for (std::size_t k = 0; k < row.members.size(); ++k) {
      out += k ? "; " : " ";
      if (k < row.member_ids.size()) out += std::to_string(row.member_ids[k]) + " ";
      out += bracket(row.members[k]);
    }
    out += "\n";
  }
  return out;
}

TableMatch match_rows(const std::vector<TableRow>& ours, const std::vector<TableRow>& rows) {
  auto attempt = [&](bool swap) {
    TableMatch m;
    m.swapped = swap;
    auto perm = [&](std::vector<RationalFunction> w) {
      if (swap && w.size() == 2) std::swap(w[0], w[1]);
      return w;
    };
    std::vector<char> used(rows.size(), 0);
    m.row_of_group.assign(ours.size(), -1);
    for (std::size_t gi = 0; gi < ours.size(); ++gi) {
      auto state = perm(ours[gi].state);
      std::vector<std::vector<RationalFunction>> members;
      for (const auto& w : ours[gi].members) members.push_back(perm(w));
      for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        if (used[ri] || !same_weights(state, rows[ri].state)) continue;
        if (!same_multiset(members, rows[ri].members)) continue;
        used[ri] = 1;
        m.row_of_group[gi] = static_cast<int>(ri);
        break;
      }
      if (m.row_of_group[gi] < 0) m.problems.push_back(ours[gi].label + " matches no row");
    }
    for (std::size_t ri = 0; ri < rows.size(); ++ri)
      if (!used[ri]) m.problems.push_back("row " + rows[ri].label + " unmatched");
    m.ok = m.problems.empty();
    return m;
  };
  TableMatch first = attempt(false);
  if (first.ok || ours.empty() || ours[0].state.size() != 2) return first;
  TableMatch second = attempt(true);
  return second.ok ? second : first;
}

TableMatch match_table(const CorrespondenceReport& r, const std::vector<HJTerm>& hj,
                       const std::vector<WFTerm>& wf, const std::vector<TableRow>& rows) {
  return match_rows(report_rows(r, hj, wf), rows);
}

// ----------------------------------------------------------- proof identities

CaseIdentityReport case_identities_report(int a1, int a2, int a3) {
  const RationalFunction q = qa("q"), qi = qa("q^-1"), zero = qa("0"), one = qa("1");
  auto binomial_sum = [&](int a, const RationalFunction& f, const RationalFunction& w) {
    RationalFunction s = zero;
    for (int k = 0; k <= a; ++k) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(k));
      s += RationalFunction::constant(vars_qa(), c) * f.pow(k) * w.pow(a - k);
    }
    return s;
  };
  auto brute = [&](int a, const RationalFunction& f, const RationalFunction& w) {
    RationalFunction s = zero;
    for (long mask = 0; mask < (1L << a); ++mask) {
      RationalFunction p = one;
      for (int k = 0; k < a; ++k) p *= (mask >> k & 1) ? f : w;
      s += p;
    }
    return s;
  };
  CaseIdentityReport r;
  // Case 1: A2 from F weighs q, from W (L) -q; A4: q^-1 and -q^-1.
  auto c1 = binomial_sum(a2, q, -q), c1b = binomial_sum(a2, qi, -qi);
  r.case1 = a2 == 0 ? c1 == one && c1b == one : c1.is_zero() && c1b.is_zero();
  // Case 2: A1 from F q, from W (R) -q^-1; A3 from F q^-1, from W (L) -q.
  auto c2a = binomial_sum(a1, q, -qi), c2b = binomial_sum(a3, qi, -q);
  r.case2a = c2a == (q - qi).pow(a1);
  r.case2b = c2b == (qi - q).pow(a3);
  r.brute_force = c1 == brute(a2, q, -q) && c1b == brute(a2, qi, -qi) && c2a == brute(a1, q, -qi) &&
                  c2b == brute(a3, qi, -q);
  return r;
}

bool case_identities(int a1, int a2, int a3) { return case_identities_report(a1, a2, a3).ok(); }

RationalFunction simplified_hj(const Diagram& link, int jobs) {
  require_link(link);
  Diagram u = unoriented(link);
  MapTables t(u.map);
  auto orients = enumerate_balanced(u);
  std::erase_if(orients, [](const BalancedOrientation& o) {
    return std::count(o.site_class.begin(), o.site_class.end(), SiteClass::TopInward) > 0;
  });
  auto vals = parallel_map(orients.size(), jobs, [&](std::size_t oi) {
    const auto& o = orients[oi];
    Diagram od = with_orientation(u, o);
    SiteContext s{t, od, o};
    CompactDiagram base = to_compact(as_graph(od));
    std::vector<std::vector<Option>> opts;
    for (int v = 0; v < u.vertex_count(); ++v) {
      std::vector<Option> local;
      for (auto& op : hj_options(s, v)) {
        if (op.cfg == Configuration::A2 || op.cfg == Configuration::A4) continue;
        op.weight = hj_configuration_weight(op.cfg);
        local.push_back(std::move(op));
      }
      opts.push_back(std::move(local));
    }
    RationalFunction sum = RationalFunction::constant(vars_qa(), 0);
    for_each_choice(opts, [&](const std::vector<int>& idx) {
      Built b = build(s, base, opts, idx);
      sum += prefactor(b.rot) * b.product * substitute(eval_r(b.graph), ab_to_q(), vars_qa());
    });
    return sum;
  });
  RationalFunction total = RationalFunction::constant(vars_qa(), 0);
  for (const auto& v : vals) total += v;
  return total;
}

// ----------------------------------------------------------- trivalent model

namespace {

// Replaces every vertex of a 4-valent oriented map by two trivalent vertices
// joined by a thick edge: the inward pair plus the thick tail, the outward
// pair plus the thick head.
Diagram split_vertices(const Diagram& g) {
  MapTables t(g.map);
  Diagram out = g;
  const int nv = static_cast<int>(t.vertices.size());
  out.thick.assign(g.map.dart_count(), EdgeKind::Common);
  out.over.clear();
  for (int v = 0; v < nv; ++v) {
    const auto& cyc = t.vertices[v];
    int k = 0;
    while (!(g.dir[cyc[k]] == -1 && g.dir[cyc[(k + 1) % 4]] == -1)) ++k;
    int i1 = cyc[k], i2 = cyc[(k + 1) % 4], o1 = cyc[(k + 2) % 4], o2 = cyc[(k + 3) % 4];
    int tu = out.map.dart_count(), tw = tu + 1;
    out.map.next.resize(tw + 1);
    out.map.edge.resize(tw + 1);
    out.map.next[i1] = i2;
    out.map.next[i2] = tu;
    out.map.next[tu] = i1;
    out.map.next[o1] = o2;
    out.map.next[o2] = tw;
    out.map.next[tw] = o1;
    out.map.edge[tu] = tw;
    out.map.edge[tw] = tu;
    out.dir.push_back(1);
    out.dir.push_back(-1);
    out.thick.push_back(EdgeKind::Thick);
    out.thick.push_back(EdgeKind::Thick);
  }
  out.over.assign(out.vertex_count(), -1);
  return out;
}

}  // namespace

std::vector<ClassicState> classic_states(const Diagram& link) {
  require_link(link);
  if (!link.oriented()) throw DiagramError("the trivalent model needs an oriented diagram");
  CompactDiagram c = to_compact(link);
  CompactDiagram g = to_compact(as_graph(link));
  const int nv = c.vertex_count();
  std::vector<int> sign(nv);
  std::vector<std::int8_t> pairing(nv);
  for (int v = 0; v < nv; ++v) {
    sign[v] = compact_sign(c, v);
    std::array<std::int8_t, 4> d4 = {c.dir[4 * v], c.dir[4 * v + 1], c.dir[4 * v + 2], c.dir[4 * v + 3]};
    pairing[v] = static_cast<std::int8_t>(seifert_pairing(d4));
  }
  std::vector<ClassicState> out;
  for (long mask = 0; mask < (1L << nv); ++mask) {
    ClassicState s;
    std::vector<SiteAction> acts(nv);
    for (int v = 0; v < nv; ++v) {
      bool sm = mask >> v & 1;
      s.smoothed.push_back(sm);
      if (sm) {
        acts[v] = {SiteAction::Smooth, pairing[v]};
        (sign[v] > 0 ? s.i : s.j)++;
      } else {
        (sign[v] > 0 ? s.s : s.t)++;
      }
    }
    Diagram state = from_compact(resolve(g, acts));
    state.loop_signs.assign(state.map.free_loops, 1);
    if (state.map.dart_count() == 0) {
      s.classic = state;
    } else {
      s.classic = split_vertices(state);
      require_valid(s.classic);
    }
    Diagram contracted = contract_thick_edges(s.classic);
    contracted.loop_signs.clear();
    s.contracted = to_compact(contracted);
    out.push_back(std::move(s));
  }
  return out;
}

bool trivalent_bijection(const Diagram& link, std::string* problem) {
  auto classic = classic_states(link);
  auto kv = expand_r(link);
  if (classic.size() != kv.size()) {
    if (problem) *problem = "state counts differ";
    return false;
  }
  for (std::size_t k = 0; k < kv.size(); ++k) {
    bool same_choice = true;
    for (std::size_t v = 0; v < classic[k].smoothed.size(); ++v)
      same_choice &= (kv[k].choice[v] != 0) == (classic[k].smoothed[v] != 0);
    if (!same_choice || canonical_key(classic[k].contracted) != canonical_key(kv[k].graph) ||
        classic[k].i != kv[k].i || classic[k].j != kv[k].j) {
      if (problem) *problem = "state " + std::to_string(k + 1) + " differs after contraction";
      return false;
    }
  }
  return true;
}

RationalFunction homflypt_n_specialization(const Diagram& link, int n, int jobs) {
  if (n < 2) throw DiagramError("n must be at least 2");
  auto states = classic_states(link);
  const Bindings b = {{"A", parse_expression("q", vars_q())},
                      {"B", parse_expression("q^-1", vars_q())},
                      {"a", parse_expression("q^" + std::to_string(n), vars_q())}};
  auto vals = parallel_map(states.size(), jobs, [&](std::size_t k) {
    const auto& s = states[k];
    RationalFunction w(LaurentPoly::monomial(vars_q(), 1, {s.i - s.j}));
    return w * substitute(eval_r(s.contracted), b, vars_q());
  });
  RationalFunction total = RationalFunction::constant(vars_q(), 0);
  for (const auto& v : vals) total += v;
  return total;
}

RationalFunction homflypt_n_reference(const Diagram& link, int n) {
  const Bindings b = {{"z", parse_expression("q - q^-1", vars_q())},
                      {"a", parse_expression("q^" + std::to_string(n), vars_q())}};
  return substitute(r_poly(link), b, vars_q());
}

}  // namespace linkpoly
