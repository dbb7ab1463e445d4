#include "linkpoly/skein.hpp"

#include "linkpoly/memo.hpp"

namespace linkpoly {

namespace {

ConcurrentMemo<LaurentPoly> r_memo, d_memo;

LaurentPoly za(long c, int ez, int ea) { return LaurentPoly::monomial(vars_za(), c, {ez, ea}); }

// Orients every strand of an unoriented diagram: the smallest unvisited dart
// of a strand is taken as inward.
std::vector<std::int8_t> orient_strands(const CompactDiagram& c) {
  const int n = c.dart_count();
  std::vector<std::int8_t> dir(n, 0);
  for (int d = 0; d < n; ++d) {
    if (dir[d] != 0) continue;
    int x = d;
    do {
      dir[x] = -1;
      int out = CompactDiagram::opposite(x);
      dir[out] = 1;
      x = c.edge[out];
    } while (x != d);
  }
  return dir;
}

int sign_with(const CompactDiagram& c, const std::vector<std::int8_t>& dir, int v) {
  for (int i = 0; i < 4; ++i)
    if (dir[4 * v + i] == -1 && dir[4 * v + ((i + 1) & 3)] == -1)
      return (i & 1) == c.over[v] ? 1 : -1;
  throw DiagramError("crossing is not crossing-like oriented");
}

struct Descent {
  int bad = -1;     // first crossing met from below, or -1
  int w_self = 0;   // writhe over self-crossings
  int strands = 0;  // number of link components
};

// Components are walked in order of their smallest inward dart, each from that dart.
Descent descend(const CompactDiagram& c, const std::vector<std::int8_t>& dir) {
  const int n = c.dart_count();
  const int nv = c.vertex_count();
  Descent out;
  std::vector<int> comp(n, -1);
  std::vector<int> starts;
  for (int d = 0; d < n; ++d) {
    if (comp[d] != -1 || dir[d] != -1) continue;
    const int id = static_cast<int>(starts.size());
    starts.push_back(d);
    int x = d;
    do {
      int o = CompactDiagram::opposite(x);
      comp[x] = comp[o] = id;
      x = c.edge[o];
    } while (x != d);
  }
  out.strands = static_cast<int>(starts.size());
  for (int v = 0; v < nv; ++v)
    if (comp[4 * v] == comp[4 * v + 1]) out.w_self += sign_with(c, dir, v);

  std::vector<char> seen(nv, 0);
  for (int d : starts) {
    int x = d;
    do {
      int v = x >> 2;
      if (!seen[v]) {
        seen[v] = 1;
        if (((x & 3) & 1) != c.over[v]) {
          out.bad = v;
          return out;
        }
      }
      x = c.edge[CompactDiagram::opposite(x)];
    } while (x != d);
  }
  return out;
}

CompactDiagram smooth_one(const CompactDiagram& c, int v, int pairing) {
  std::vector<SiteAction> acts(c.vertex_count());
  acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(pairing)};
  return resolve(c, acts);
}

LaurentPoly power(const LaurentPoly& p, int k) { return k <= 0 ? LaurentPoly::constant(p.vars(), 1) : p.pow(k); }

LaurentPoly r_connected(const CompactDiagram& c);
LaurentPoly d_connected(const CompactDiagram& c);

template <class F>
LaurentPoly split_eval(const CompactDiagram& c, const LaurentPoly& loop_factor, F connected) {
  auto parts = components(c);
  const int k = static_cast<int>(parts.size()) + c.loops;
  LaurentPoly out = power(loop_factor, k - 1);
  for (const auto& p : parts) out = out * connected(p);
  return out;
}

LaurentPoly r_connected(const CompactDiagram& c) {
  auto key = canonical_key(c);
  if (auto hit = r_memo.find(key)) return *hit;
  Descent ds = descend(c, c.dir);
  LaurentPoly value;
  if (ds.bad < 0) {
    value = za(1, 0, ds.w_self) * power(skein_delta(), ds.strands - 1);
  } else {
    const int v = ds.bad;
    const int eps = sign_with(c, c.dir, v);
    CompactDiagram switched = c;
    switched.over[v] ^= 1;
    std::array<std::int8_t, 4> dir4 = {c.dir[4 * v], c.dir[4 * v + 1], c.dir[4 * v + 2], c.dir[4 * v + 3]};
    CompactDiagram smoothed = smooth_one(c, v, seifert_pairing(dir4));
    // R(L+) - R(L-) = z R(L0)
    LaurentPoly zr0 = za(1, 1, 0) * r_poly(smoothed);
    value = eps > 0 ? r_connected(switched) + zr0 : r_connected(switched) - zr0;
  }
  r_memo.insert(key, value);
  return value;
}

LaurentPoly d_connected(const CompactDiagram& c) {
  auto key = canonical_key(c);
  if (auto hit = d_memo.find(key)) return *hit;
  auto dir = orient_strands(c);
  Descent ds = descend(c, dir);
  LaurentPoly value;
  if (ds.bad < 0) {
    value = za(1, 0, ds.w_self) * power(skein_mu(), ds.strands - 1);
  } else {
    const int v = ds.bad;
    CompactDiagram switched = c;
    switched.over[v] ^= 1;
    const int pa = a_pairing(c.over[v]);
    // D(L) - D(L') = z (D(L_A) - D(L_B)), smoothings taken at the crossing of L.
    LaurentPoly diff = d_poly(smooth_one(c, v, pa)) - d_poly(smooth_one(c, v, 1 - pa));
    value = d_connected(switched) + za(1, 1, 0) * diff;
  }
  d_memo.insert(key, value);
  return value;
}

void require_crossings(const CompactDiagram& c) {
  for (auto o : c.over)
    if (o < 0) throw DiagramError("skein evaluation needs a crossing at every vertex");
}

}  // namespace

LaurentPoly skein_delta() { return za(1, -1, 1) - za(1, -1, -1); }
LaurentPoly skein_mu() { return skein_delta() + za(1, 0, 0); }

int compact_sign(const CompactDiagram& c, int vertex) { return sign_with(c, c.dir, vertex); }

LaurentPoly r_poly(const CompactDiagram& c) {
  if (!c.oriented() && c.dart_count() > 0) throw DiagramError("r_poly needs an oriented diagram");
  require_crossings(c);
  return split_eval(c, skein_delta(), r_connected);
}

LaurentPoly d_poly(const CompactDiagram& c) {
  require_crossings(c);
  CompactDiagram u = c;
  u.dir.clear();
  return split_eval(u, skein_mu(), d_connected);
}

LaurentPoly r_poly(const Diagram& d) {
  if (!d.oriented()) throw DiagramError("r_poly needs an oriented diagram");
  return r_poly(to_compact(d));
}

LaurentPoly d_poly(const Diagram& d) { return d_poly(to_compact(d)); }

LaurentPoly kauffman_bracket(const Diagram& d) {
  static const VariableSet vA({"A"});
  CompactDiagram c = to_compact(d);
  require_crossings(c);
  c.dir.clear();
  const int nv = c.vertex_count();
  if (nv > 20) throw DiagramError("kauffman_bracket: too many crossings");
  LaurentPoly loop = LaurentPoly::monomial(vA, -1, {2}) + LaurentPoly::monomial(vA, -1, {-2});
  LaurentPoly total(vA);
  std::vector<SiteAction> acts(nv);
  for (long mask = 0; mask < (1L << nv); ++mask) {
    int nb = 0;
    for (int v = 0; v < nv; ++v) {
      bool b = mask >> v & 1;
      nb += b;
      int pa = a_pairing(c.over[v]);
      acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(b ? 1 - pa : pa)};
    }
    int loops = resolve(c, acts).loops;
    total += LaurentPoly::monomial(vA, 1, {nv - 2 * nb}) * power(loop, loops - 1);
  }
  return total;
}

std::size_t skein_memo_size() { return r_memo.size() + d_memo.size(); }

void clear_skein_memo() {
  r_memo.clear();
  d_memo.clear();
}

}  // namespace linkpoly
