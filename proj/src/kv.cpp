#include "linkpoly/kv.hpp"

#include <atomic>

#include "linkpoly/memo.hpp"
#include "linkpoly/skein.hpp"

namespace linkpoly {

namespace {

RationalFunction abA(const std::string& s) { return parse_expression(s, vars_ABa()); }

RationalFunction monomial_ab(int i, int j) {
  return RationalFunction(LaurentPoly::monomial(vars_ABa(), 1, {i, j, 0}));
}

RationalFunction one_ab() { return RationalFunction::constant(vars_ABa(), 1); }

ConcurrentMemo<RationalFunction> memo_tables[2][2];
std::atomic<std::size_t> fallbacks{0};

ConcurrentMemo<RationalFunction>& memo_for(Calculus c, SiteOrder o) {
  return memo_tables[c == Calculus::R ? 0 : 1][o == SiteOrder::SmallestFirst ? 0 : 1];
}

RationalFunction eval_any(const CompactDiagram& g, Calculus calc, const EvalOptions& opt);

RationalFunction eval_connected(const CompactDiagram& g, Calculus calc, const EvalOptions& opt) {
  const bool use_memo = opt.rules == nullptr;
  std::vector<int> key;
  if (use_memo) {
    key = canonical_key(g);
    if (auto hit = memo_for(calc, opt.order).find(key)) return *hit;
  }
  const auto& rules = opt.rules ? *opt.rules : default_rules();
  RationalFunction value;
  if (auto m = find_match(g, rules, calc, opt.order)) {
    value = RationalFunction::constant(vars_ABa(), 0);
    for (const auto& [coef, next] : apply_match(g, *m)) {
      if (coef.is_zero()) continue;
      value += coef * eval_any(next, calc, opt);
    }
  } else {
    ++fallbacks;
    value = calc == Calculus::R ? eval_r_definition(g) : eval_d_definition(g);
  }
  if (use_memo) memo_for(calc, opt.order).insert(key, value);
  return value;
}

RationalFunction eval_any(const CompactDiagram& g, Calculus calc, const EvalOptions& opt) {
  const auto& k = KVCoefficients::get();
  auto parts = components(g);
  const int count = static_cast<int>(parts.size()) + g.loops;
  RationalFunction out = count > 1 ? (calc == Calculus::R ? k.delta : k.mu).pow(count - 1) : one_ab();
  for (const auto& p : parts) out *= eval_connected(p, calc, opt);
  return out;
}

void require_rigid(const CompactDiagram& g) {
  for (auto o : g.over)
    if (o != -1) throw DiagramError("graph evaluation expects rigid vertices only");
}

}  // namespace

const KVCoefficients& KVCoefficients::get() {
  static const KVCoefficients k = [] {
    KVCoefficients c;
    c.delta = abA("(a - a^-1)/(A - B)");
    c.lambda = abA("(A*a^-1 - B*a)/(A - B)");
    c.theta = abA("(B^2*a - A^2*a^-1)/(A - B)");
    c.eta = abA("(B^3*a - A^3*a^-1)/(A - B)");
    c.mu = c.delta + one_ab();
    c.o = c.lambda - abA("A + B");
    c.gamma = c.theta + abA("A*B");
    c.xi = c.eta;
    return c;
  }();
  return k;
}

std::map<std::string, RationalFunction> KVCoefficients::named() const {
  return {{"delta", delta}, {"lambda", lambda}, {"theta", theta}, {"eta", eta},
          {"mu", mu},       {"o", o},           {"gamma", gamma}, {"xi", xi}};
}

RationalFunction eval_r(const CompactDiagram& g, const EvalOptions& opt) {
  require_rigid(g);
  if (!g.oriented() && g.dart_count() > 0) throw DiagramError("eval_r needs an oriented graph");
  return eval_any(g, Calculus::R, opt);
}

RationalFunction eval_d(const CompactDiagram& g, const EvalOptions& opt) {
  require_rigid(g);
  CompactDiagram u = g;
  u.dir.clear();
  return eval_any(u, Calculus::D, opt);
}

RationalFunction eval_r(const Diagram& g) { return eval_r(to_compact(as_graph(g))); }
RationalFunction eval_d(const Diagram& g) { return eval_d(to_compact(as_graph(g))); }

std::size_t kv_fallback_count() { return fallbacks.load(); }

void clear_kv_memo() {
  for (auto& row : memo_tables)
    for (auto& m : row) m.clear();
  fallbacks = 0;
}

// ------------------------------------------------------------ definition route

RationalFunction r_poly_ab(const CompactDiagram& c) {
  static const Bindings b = {{"z", abA("A - B")}, {"a", abA("a")}};
  return substitute(r_poly(c), b, vars_ABa());
}

RationalFunction d_poly_ab(const CompactDiagram& c) {
  static const Bindings b = {{"z", abA("A - B")}, {"a", abA("a")}};
  return substitute(d_poly(c), b, vars_ABa());
}

std::int8_t positive_over(const CompactDiagram& c, int v) {
  for (int i = 0; i < 4; ++i)
    if (c.dir[4 * v + i] == -1 && c.dir[4 * v + ((i + 1) & 3)] == -1) return static_cast<std::int8_t>(i & 1);
  throw DiagramError("vertex is not crossing-like oriented");
}

RationalFunction eval_r_definition(const CompactDiagram& g) {
  // [X] = [L+] - A [L0] at every vertex.
  const int nv = g.vertex_count();
  CompactDiagram crossed = g;
  std::vector<SiteAction> acts(nv);
  for (int v = 0; v < nv; ++v) {
    crossed.over[v] = positive_over(g, v);
    std::array<std::int8_t, 4> d4 = {g.dir[4 * v], g.dir[4 * v + 1], g.dir[4 * v + 2], g.dir[4 * v + 3]};
    acts[v].pairing = static_cast<std::int8_t>(seifert_pairing(d4));
  }
  RationalFunction total = RationalFunction::constant(vars_ABa(), 0);
  for (long mask = 0; mask < (1L << nv); ++mask) {
    int smooth = 0;
    for (int v = 0; v < nv; ++v) {
      bool s = mask >> v & 1;
      smooth += s;
      acts[v].kind = s ? SiteAction::Smooth : SiteAction::Keep;
    }
    RationalFunction coef = RationalFunction(LaurentPoly::monomial(vars_ABa(), smooth % 2 ? -1 : 1, {smooth, 0, 0}));
    total += coef * r_poly_ab(resolve(crossed, acts));
  }
  return total;
}

RationalFunction eval_d_definition(const CompactDiagram& g) {
  // [X] = [Cr] - A [S_A] - B [S_B] at every vertex.
  const int nv = g.vertex_count();
  CompactDiagram crossed = g;
  crossed.dir.clear();
  std::fill(crossed.over.begin(), crossed.over.end(), std::int8_t{0});
  const int pa = a_pairing(0);
  std::vector<SiteAction> acts(nv);
  std::vector<int> digit(nv, 0);
  RationalFunction total = RationalFunction::constant(vars_ABa(), 0);
  while (true) {
    int na = 0, nb = 0;
    for (int v = 0; v < nv; ++v) {
      if (digit[v] == 0) acts[v] = {SiteAction::Keep, 0};
      else if (digit[v] == 1) acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(pa)}, ++na;
      else acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(1 - pa)}, ++nb;
    }
    long sign = (na + nb) % 2 ? -1 : 1;
    RationalFunction coef(LaurentPoly::monomial(vars_ABa(), sign, {na, nb, 0}));
    total += coef * d_poly_ab(resolve(crossed, acts));
    int v = 0;
    while (v < nv && digit[v] == 2) digit[v++] = 0;
    if (v == nv) break;
    ++digit[v];
  }
  return total;
}

// ------------------------------------------------------------------ expansions

std::vector<StateTerm> expand_r(const Diagram& link) {
  if (!link.oriented()) throw DiagramError("expand_r needs an oriented diagram");
  CompactDiagram c = to_compact(link);
  const int nv = c.vertex_count();
  for (auto o : c.over)
    if (o < 0) throw DiagramError("expand_r needs a link diagram");
  std::vector<int> sign(nv);
  std::vector<std::int8_t> pairing(nv);
  for (int v = 0; v < nv; ++v) {
    sign[v] = compact_sign(c, v);
    std::array<std::int8_t, 4> d4 = {c.dir[4 * v], c.dir[4 * v + 1], c.dir[4 * v + 2], c.dir[4 * v + 3]};
    pairing[v] = static_cast<std::int8_t>(seifert_pairing(d4));
  }
  std::vector<StateTerm> out;
  out.reserve(std::size_t{1} << nv);
  std::vector<SiteAction> acts(nv);
  for (long mask = 0; mask < (1L << nv); ++mask) {
    StateTerm t;
    t.choice.assign(nv, 0);
    for (int v = 0; v < nv; ++v) {
      if (mask >> v & 1) {
        acts[v] = {SiteAction::Smooth, pairing[v]};
        t.choice[v] = sign[v] > 0 ? 1 : 2;
        (sign[v] > 0 ? t.i : t.j)++;
      } else {
        acts[v] = {SiteAction::Rigid, 0};
      }
    }
    t.graph = resolve(c, acts);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<StateTerm> expand_d(const Diagram& link) {
  CompactDiagram c = to_compact(link);
  c.dir.clear();
  const int nv = c.vertex_count();
  for (auto o : c.over)
    if (o < 0) throw DiagramError("expand_d needs a link diagram");
  std::vector<StateTerm> out;
  std::vector<int> digit(nv, 0);
  std::vector<SiteAction> acts(nv);
  while (true) {
    StateTerm t;
    t.choice.assign(nv, 0);
    for (int v = 0; v < nv; ++v) {
      int pa = a_pairing(c.over[v]);
      t.choice[v] = static_cast<std::int8_t>(digit[v]);
      if (digit[v] == 0) acts[v] = {SiteAction::Rigid, 0};
      else if (digit[v] == 1) acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(pa)}, ++t.i;
      else acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(1 - pa)}, ++t.j;
    }
    t.graph = resolve(c, acts);
    out.push_back(std::move(t));
    int v = 0;
    while (v < nv && digit[v] == 2) digit[v++] = 0;
    if (v == nv) break;
    ++digit[v];
  }
  return out;
}

RationalFunction kv_sum_r(const Diagram& link) {
  RationalFunction total = RationalFunction::constant(vars_ABa(), 0);
  for (const auto& t : expand_r(link)) total += monomial_ab(t.i, t.j) * eval_r(t.graph);
  return total;
}

RationalFunction kv_sum_d(const Diagram& link) {
  RationalFunction total = RationalFunction::constant(vars_ABa(), 0);
  for (const auto& t : expand_d(link)) total += monomial_ab(t.i, t.j) * eval_d(t.graph);
  return total;
}

}  // namespace linkpoly
