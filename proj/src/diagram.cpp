#include "linkpoly/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

namespace linkpoly {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool is_permutation_of_range(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

// ------------------------------------------------------------------ MapTables

MapTables::MapTables(const PlanarMap& map) {
  const int n = map.dart_count();
  prev.assign(n, -1);
  for (int d = 0; d < n; ++d) prev[map.next[d]] = d;

  vertex_of.assign(n, -1);
  position.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (vertex_of[d] != -1) continue;
    std::vector<int> cyc;
    int x = d;
    do {
      vertex_of[x] = static_cast<int>(vertices.size());
      position[x] = static_cast<int>(cyc.size());
      cyc.push_back(x);
      x = map.next[x];
    } while (x != d);
    vertices.push_back(std::move(cyc));
  }

  face_of.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (face_of[d] != -1) continue;
    int x = d;
    do {
      face_of[x] = face_count;
      x = prev[map.edge[x]];
    } while (x != d);
    ++face_count;
  }

  UnionFind uf(n);
  for (int d = 0; d < n; ++d) {
    uf.unite(d, map.next[d]);
    uf.unite(d, map.edge[d]);
  }
  component_of.assign(n, -1);
  std::map<int, int> ids;
  for (int d = 0; d < n; ++d) {
    auto [it, inserted] = ids.try_emplace(uf.find(d), component_count);
    if (inserted) ++component_count;
    component_of[d] = it->second;
  }
}

int Diagram::vertex_count() const {
  const int n = map.dart_count();
  std::vector<char> seen(n, 0);
  int count = 0;
  for (int d = 0; d < n; ++d) {
    if (seen[d]) continue;
    ++count;
    for (int x = d; !seen[x]; x = map.next[x]) seen[x] = 1;
  }
  return count;
}

// ----------------------------------------------------------------- validation

ValidationReport validate(const PlanarMap& map) {
  ValidationReport r;
  const int n = map.dart_count();
  if (static_cast<int>(map.edge.size()) != n) {
    r.issues.push_back("edge involution size differs from dart count");
    return r;
  }
  if (!is_permutation_of_range(map.next)) {
    r.issues.push_back("vertex rotation is not a permutation of the darts");
    return r;
  }
  for (int d = 0; d < n; ++d) {
    int e = map.edge[d];
    if (e < 0 || e >= n) {
      r.issues.push_back("involution: dart " + std::to_string(d + 1) + " is unpaired");
      return r;
    }
    if (e == d) {
      r.issues.push_back("involution: dart " + std::to_string(d + 1) + " is a fixed point");
      return r;
    }
    if (map.edge[e] != d) {
      r.issues.push_back("involution: dart " + std::to_string(d + 1) + " pairing is not symmetric");
      return r;
    }
  }
  if (map.free_loops < 0) r.issues.push_back("negative free loop count");

  MapTables t(map);
  r.vertices = static_cast<int>(t.vertices.size());
  r.edges = n / 2;
  r.components = t.component_count;
  std::vector<int> cv(t.component_count, 0), ce(t.component_count, 0), cf(t.component_count, 0);
  for (const auto& vtx : t.vertices) ++cv[t.component_of[vtx[0]]];
  for (int d = 0; d < n; ++d)
    if (d < map.edge[d]) ++ce[t.component_of[d]];
  std::vector<char> face_seen(t.face_count, 0);
  for (int d = 0; d < n; ++d) {
    if (face_seen[t.face_of[d]]) continue;
    face_seen[t.face_of[d]] = 1;
    ++cf[t.component_of[d]];
  }
  for (int k = 0; k < t.component_count; ++k) {
    if (cv[k] - ce[k] + cf[k] != 2)
      r.issues.push_back("Euler check failed on component " + std::to_string(k + 1) +
                         ": V-E+F=" + std::to_string(cv[k] - ce[k] + cf[k]));
  }
  // Components share one unbounded face.
  r.faces = t.face_count - std::max(0, t.component_count - 1);

  if (n > 0) {
    std::vector<int> outer_per(t.component_count, 0);
    for (int d : map.outer) {
      if (d < 0 || d >= n) {
        r.issues.push_back("outer dart out of range");
        continue;
      }
      ++outer_per[t.component_of[d]];
    }
    for (int k = 0; k < t.component_count; ++k)
      if (outer_per[k] != 1)
        r.issues.push_back("outer face: component " + std::to_string(k + 1) + " needs exactly one outer dart");
  } else if (!map.outer.empty()) {
    r.issues.push_back("outer dart given for a map without darts");
  }
  return r;
}

ValidationReport validate(const Diagram& d) {
  ValidationReport r = validate(d.map);
  if (!r.ok()) return r;
  const int n = d.map.dart_count();
  MapTables t(d.map);
  const int valence = d.trivalent() ? 3 : 4;
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    if (static_cast<int>(t.vertices[v].size()) != valence)
      r.issues.push_back("valence: vertex " + std::to_string(v + 1) + " has degree " +
                         std::to_string(t.vertices[v].size()) + ", expected " +
                         std::to_string(valence));
  if (!r.ok()) return r;

  if (!d.over.empty() && d.over.size() != t.vertices.size())
    r.issues.push_back("over: one entry per vertex required");
  for (std::size_t v = 0; v < d.over.size() && v < t.vertices.size(); ++v) {
    int o = d.over[v];
    if (o == -1) continue;
    if (d.trivalent()) r.issues.push_back("over: trivalent vertices cannot be crossings");
    if (o < 0 || o >= n || t.vertex_of[o] != static_cast<int>(v))
      r.issues.push_back("over: dart for vertex " + std::to_string(v + 1) + " is not incident to it");
  }

  if (d.trivalent()) {
    if (static_cast<int>(d.thick.size()) != n) r.issues.push_back("ekind: one kind per dart required");
    else {
      for (int x = 0; x < n; ++x)
        if (d.thick[x] != d.thick[d.map.edge[x]]) r.issues.push_back("ekind: edge ends disagree");
      for (std::size_t v = 0; v < t.vertices.size(); ++v) {
        int thick = 0;
        for (int x : t.vertices[v]) thick += d.thick[x] == EdgeKind::Thick;
        if (thick != 1)
          r.issues.push_back("ekind: vertex " + std::to_string(v + 1) + " must have exactly one thick edge");
      }
    }
  }

  if (d.oriented()) {
    if (static_cast<int>(d.dir.size()) != n) {
      r.issues.push_back("orient: one mark per dart required");
      return r;
    }
    for (int x = 0; x < n; ++x) {
      if (d.dir[x] != 1 && d.dir[x] != -1) r.issues.push_back("orient: invalid mark");
      else if (d.dir[x] + d.dir[d.map.edge[x]] != 0)
        r.issues.push_back("orient: edge at dart " + std::to_string(x + 1) + " has inconsistent direction");
    }
    if (!r.ok()) return r;
    for (std::size_t v = 0; v < t.vertices.size(); ++v) {
      const auto& vd = t.vertices[v];
      if (d.trivalent()) {
        int thick_dir = 0, common_sum = 0;
        for (int x : vd) {
          if (d.thick[x] == EdgeKind::Thick) thick_dir = d.dir[x];
          else common_sum += d.dir[x];
        }
        if (common_sum != -2 * thick_dir)
          r.issues.push_back("orient: vertex " + std::to_string(v + 1) + " is not a classic-graph vertex");
        continue;
      }
      int ins = 0;
      for (int x : vd) ins += d.dir[x] == -1;
      if (ins != 2) {
        r.issues.push_back("orient: vertex " + std::to_string(v + 1) + " is not 2-in-2-out");
        continue;
      }
      if (d.dir[vd[0]] == d.dir[vd[2]])
        r.issues.push_back("orient: vertex " + std::to_string(v + 1) + " is not crossing-like");
    }
    if (static_cast<int>(d.loop_signs.size()) != d.map.free_loops)
      r.issues.push_back("louts: one sign per free loop required");
    for (int s : d.loop_signs)
      if (s != 1 && s != -1) r.issues.push_back("louts: invalid sign");
  }
  return r;
}

void require_valid(const Diagram& d) {
  ValidationReport r = validate(d);
  if (!r.ok()) throw DiagramError("invalid diagram: " + r.issues.front());
}

// -------------------------------------------------------- crossing conventions

int over_position(const MapTables& t, const Diagram& d, int vertex) {
  if (d.over.empty() || d.over[vertex] < 0) return -1;
  return t.position[d.over[vertex]];
}

int crossing_sign(const MapTables& t, const Diagram& d, int vertex) {
  const auto& vd = t.vertices[vertex];
  const int k = over_position(t, d, vertex);
  if (k < 0) throw DiagramError("crossing_sign: vertex has no over strand");
  if (!d.oriented()) throw DiagramError("crossing_sign: diagram is unoriented");
  for (int i = 0; i < 4; ++i) {
    if (d.dir[vd[i]] == -1 && d.dir[vd[(i + 1) % 4]] == -1) return (i % 2 == k % 2) ? 1 : -1;
  }
  throw DiagramError("crossing_sign: crossing is not crossing-like oriented");
}

int a_pairing(int over_pos) { return over_pos % 2 == 0 ? 1 : 0; }

int seifert_pairing(std::span<const std::int8_t> dir4) { return dir4[0] == dir4[1] ? 1 : 0; }

int left_pairing(std::span<const std::int8_t> dir4) { return dir4[0] == -1 ? 1 : 0; }

// ------------------------------------------------------------ Seifert circles

int SeifertDecomposition::rotation() const {
  int r = 0;
  for (const auto& c : circles) r += c.sign;
  return r;
}

SeifertDecomposition smoothed_circles(const PlanarMap& map, const MapTables& t,
                                      std::span<const std::int8_t> dir,
                                      std::span<const int> pairing,
                                      std::span<const int> loop_signs) {
  const int n = map.dart_count();
  std::vector<int> partner(n, -1);
  UnionFind regions(std::max(t.face_count, 1));
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    const auto& p = t.vertices[v];
    if (p.size() != 4) throw DiagramError("smoothing requires 4-valent vertices");
    if (pairing[v] == 0) {
      partner[p[0]] = p[1], partner[p[1]] = p[0], partner[p[2]] = p[3], partner[p[3]] = p[2];
      regions.unite(t.face_of[p[1]], t.face_of[p[3]]);
    } else {
      partner[p[3]] = p[0], partner[p[0]] = p[3], partner[p[1]] = p[2], partner[p[2]] = p[1];
      regions.unite(t.face_of[p[0]], t.face_of[p[2]]);
    }
  }
  for (int x = 0; x < n; ++x)
    if (dir[x] + dir[partner[x]] != 0)
      throw DiagramError("smoothing does not respect the orientation");

  SeifertDecomposition out;
  std::vector<std::pair<int, int>> sides;  // (left region, right region)
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    if (seen[x] || dir[x] != 1) continue;
    SeifertCircle c;
    int y = x;
    do {
      seen[y] = 1;
      c.darts.push_back(y);
      int in = map.edge[y];
      seen[in] = 1;
      y = partner[in];
    } while (y != x);
    sides.emplace_back(regions.find(t.face_of[x]), regions.find(t.face_of[map.edge[x]]));
    out.circles.push_back(std::move(c));
  }

  if (!out.circles.empty()) {
    // Region adjacency is a forest; depth from each component's unbounded
    // region decides which side of a circle is bounded.
    const int nf = t.face_count;
    std::vector<std::vector<int>> adj(nf);
    for (const auto& [l, r] : sides) {
      if (l == r) throw DiagramError("degenerate Seifert circle (map is not planar)");
      adj[l].push_back(r);
      adj[r].push_back(l);
    }
    std::vector<int> depth(nf, -1);
    std::queue<int> bfs;
    for (int d : map.outer) {
      int root = regions.find(t.face_of[d]);
      if (depth[root] == -1) {
        depth[root] = 0;
        bfs.push(root);
      }
    }
    while (!bfs.empty()) {
      int f = bfs.front();
      bfs.pop();
      for (int g : adj[f])
        if (depth[g] == -1) {
          depth[g] = depth[f] + 1;
          bfs.push(g);
        }
    }
    for (std::size_t i = 0; i < out.circles.size(); ++i) {
      const auto& [l, r] = sides[i];
      if (depth[l] < 0 || depth[r] < 0) throw DiagramError("outer face does not reach every circle");
      out.circles[i].sign = depth[r] < depth[l] ? 1 : -1;
    }
  }
  for (int s : loop_signs) out.circles.push_back(SeifertCircle{{}, s});
  return out;
}

SeifertDecomposition seifert_decompose(const Diagram& d) {
  if (!d.oriented()) throw DiagramError("seifert_decompose: orientation missing");
  if (d.trivalent()) throw DiagramError("seifert_decompose: expects a 4-valent diagram");
  require_valid(d);
  MapTables t(d.map);
  std::vector<int> pairing(t.vertices.size());
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    std::array<std::int8_t, 4> dir4;
    for (int k = 0; k < 4; ++k) dir4[k] = d.dir[t.vertices[v][k]];
    pairing[v] = seifert_pairing(dir4);
  }
  return smoothed_circles(d.map, t, d.dir, pairing, d.loop_signs);
}

int rotation_number(const Diagram& d) { return seifert_decompose(d).rotation(); }

int writhe(const Diagram& d) {
  if (!d.oriented()) throw DiagramError("writhe: orientation missing");
  MapTables t(d.map);
  int w = 0;
  for (std::size_t v = 0; v < t.vertices.size(); ++v)
    if (over_position(t, d, static_cast<int>(v)) >= 0) w += crossing_sign(t, d, static_cast<int>(v));
  return w;
}

// ------------------------------------------------------------ constructions

Diagram from_pd(const std::vector<std::array<int, 4>>& pd) {
  const int nc = static_cast<int>(pd.size());
  const int n = 4 * nc;
  Diagram d;
  d.map.next.resize(n);
  d.map.edge.assign(n, -1);
  d.dir.assign(n, 0);
  d.over.assign(nc, -1);
  std::map<int, std::vector<int>> by_label;
  for (int c = 0; c < nc; ++c) {
    for (int k = 0; k < 4; ++k) {
      d.map.next[4 * c + k] = 4 * c + (k + 1) % 4;
      by_label[pd[c][k]].push_back(4 * c + k);
    }
    d.dir[4 * c + 0] = -1;
    d.dir[4 * c + 2] = 1;
    d.over[c] = 4 * c + 1;
  }
  for (const auto& [label, darts] : by_label) {
    if (darts.size() != 2) throw DiagramError("PD label " + std::to_string(label) + " must occur twice");
    d.map.edge[darts[0]] = darts[1];
    d.map.edge[darts[1]] = darts[0];
  }
  // Over-strand directions: propagate along edges from the known under darts.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      int y = d.map.edge[x];
      if (d.dir[x] != 0 && d.dir[y] == 0) {
        d.dir[y] = static_cast<std::int8_t>(-d.dir[x]);
        changed = true;
      }
      int o = (x & ~3) | ((x + 2) & 3);
      if (x % 2 == 1 && d.dir[x] != 0 && d.dir[o] == 0) {
        d.dir[o] = static_cast<std::int8_t>(-d.dir[x]);
        changed = true;
      }
    }
  }
  for (int c = 0; c < nc; ++c) {
    if (d.dir[4 * c + 1] != 0) continue;
    int b = pd[c][1], dd = pd[c][3];
    bool b_in = (dd - b == 1) || (b - dd > 1);
    d.dir[4 * c + 1] = b_in ? -1 : 1;
    d.dir[4 * c + 3] = b_in ? 1 : -1;
    changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < n; ++x) {
        int y = d.map.edge[x];
        if (d.dir[x] != 0 && d.dir[y] == 0) {
          d.dir[y] = static_cast<std::int8_t>(-d.dir[x]);
          changed = true;
        }
        int o = (x & ~3) | ((x + 2) & 3);
        if (d.dir[x] != 0 && d.dir[o] == 0) {
          d.dir[o] = static_cast<std::int8_t>(-d.dir[x]);
          changed = true;
        }
      }
    }
  }
  MapTables t(d.map);
  std::vector<char> has(t.component_count, 0);
  for (int x = 0; x < n; ++x)
    if (!has[t.component_of[x]]) {
      has[t.component_of[x]] = 1;
      d.map.outer.push_back(x);
    }
  return d;
}

Diagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw DiagramError("braid needs at least one strand");
  const int nc = static_cast<int>(word.size());
  Diagram d;
  const int n = 4 * nc;
  d.map.next.resize(n);
  d.map.edge.assign(n, -1);
  d.dir.assign(n, 0);
  d.over.assign(nc, -1);
  std::vector<int> top(strands, -1), bottom(strands, -1), out_pos(n, -1);
  auto link = [&](int a, int b) {
    d.map.edge[a] = b;
    d.map.edge[b] = a;
  };
  // Dart positions: 0 lower-right, 1 upper-right, 2 upper-left, 3 lower-left.
  for (int c = 0; c < nc; ++c) {
    int g = word[c];
    int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands) throw DiagramError("braid letter out of range");
    for (int k = 0; k < 4; ++k) d.map.next[4 * c + k] = 4 * c + (k + 1) % 4;
    int lr = 4 * c, ur = 4 * c + 1, ul = 4 * c + 2, ll = 4 * c + 3;
    d.dir[lr] = d.dir[ll] = -1;
    d.dir[ur] = d.dir[ul] = 1;
    d.over[c] = g > 0 ? ll : lr;
    if (top[i] == -1) bottom[i] = ll;
    else link(top[i], ll);
    if (top[i + 1] == -1) bottom[i + 1] = lr;
    else link(top[i + 1], lr);
    top[i] = ul;
    top[i + 1] = ur;
    out_pos[ul] = i;
    out_pos[ur] = i + 1;
  }
  for (int p = 0; p < strands; ++p) {
    if (top[p] == -1) {
      ++d.map.free_loops;
      d.loop_signs.push_back(-1);
    } else {
      link(top[p], bottom[p]);
    }
  }
  MapTables t(d.map);
  std::vector<int> best(t.component_count, -1);
  for (int x = 0; x < n; ++x) {
    if (out_pos[x] < 0) continue;
    int& b = best[t.component_of[x]];
    if (b == -1 || out_pos[x] < out_pos[b]) b = x;
  }
  for (int b : best) d.map.outer.push_back(b);
  return d;
}

Diagram mirror(const Diagram& d) {
  Diagram m = d;
  for (int& o : m.over)
    if (o >= 0) o = d.map.next[o];
  return m;
}

Diagram reverse_orientation(const Diagram& d) {
  Diagram r = d;
  for (auto& x : r.dir) x = static_cast<std::int8_t>(-x);
  for (auto& s : r.loop_signs) s = -s;
  return r;
}

Diagram disjoint_union(const Diagram& a, const Diagram& b) {
  if (a.oriented() != b.oriented() || a.trivalent() != b.trivalent())
    throw DiagramError("disjoint_union: decorations differ");
  Diagram u = a;
  const int off = a.map.dart_count();
  for (int x : b.map.next) u.map.next.push_back(x + off);
  for (int x : b.map.edge) u.map.edge.push_back(x + off);
  for (int x : b.map.outer) u.map.outer.push_back(x + off);
  u.map.free_loops += b.map.free_loops;
  // `over` is indexed by vertex (smallest dart first), so the union keeps order.
  for (int o : b.over) u.over.push_back(o < 0 ? -1 : o + off);
  u.dir.insert(u.dir.end(), b.dir.begin(), b.dir.end());
  u.loop_signs.insert(u.loop_signs.end(), b.loop_signs.begin(), b.loop_signs.end());
  u.thick.insert(u.thick.end(), b.thick.begin(), b.thick.end());
  if (u.over.size() != static_cast<std::size_t>(u.vertex_count())) u.over.clear();
  return u;
}

Diagram as_graph(const Diagram& d) {
  Diagram g = d;
  std::fill(g.over.begin(), g.over.end(), -1);
  return g;
}

Diagram contract_thick_edges(const Diagram& g) {
  if (g.map.dart_count() == 0) {
    Diagram loops = g;
    loops.thick.clear();
    return loops;
  }
  if (!g.trivalent()) throw DiagramError("contract_thick_edges: not a trivalent graph");
  require_valid(g);
  const int n = g.map.dart_count();
  for (int x = 0; x < n; ++x) {
    if (g.thick[x] != EdgeKind::Thick) continue;
    int y = g.map.edge[x];
    if (g.map.next[x] == y || g.map.next[y] == x || g.map.next[g.map.next[x]] == y)
      throw DiagramError("contract_thick_edges: thick loop");
  }
  std::vector<int> renum(n, -1);
  int m = 0;
  for (int x = 0; x < n; ++x)
    if (g.thick[x] == EdgeKind::Common) renum[x] = m++;

  Diagram out;
  out.map.next.assign(m, -1);
  out.map.edge.assign(m, -1);
  out.map.free_loops = g.map.free_loops;
  out.loop_signs = g.loop_signs;
  if (g.oriented()) out.dir.assign(m, 0);
  for (int x = 0; x < n; ++x) {
    if (renum[x] < 0) continue;
    out.map.edge[renum[x]] = renum[g.map.edge[x]];
    if (g.oriented()) out.dir[renum[x]] = g.dir[x];
  }
  for (int tu = 0; tu < n; ++tu) {
    if (g.thick[tu] != EdgeKind::Thick) continue;
    int tw = g.map.edge[tu];
    if (tw < tu) continue;
    std::array<int, 4> cyc = {g.map.next[tu], g.map.next[g.map.next[tu]], g.map.next[tw],
                              g.map.next[g.map.next[tw]]};
    for (int k = 0; k < 4; ++k) out.map.next[renum[cyc[k]]] = renum[cyc[(k + 1) % 4]];
  }
  for (int o : g.map.outer) {
    if (g.thick[o] == EdgeKind::Thick) {
      int tw = g.map.edge[o];
      o = g.map.next[g.map.next[tw]];
    }
    out.map.outer.push_back(renum[o]);
  }
  out.over.assign(out.vertex_count(), -1);
  return out;
}

// ----------------------------------------------------------- compact diagram

CompactDiagram to_compact(const Diagram& d) {
  if (d.trivalent()) throw DiagramError("to_compact: expects a 4-valent diagram");
  MapTables t(d.map);
  CompactDiagram c;
  const int nv = static_cast<int>(t.vertices.size());
  c.edge.assign(4 * nv, -1);
  c.over.assign(nv, -1);
  if (d.oriented()) c.dir.assign(4 * nv, 0);
  auto id = [&](int dart) { return 4 * t.vertex_of[dart] + t.position[dart]; };
  for (int v = 0; v < nv; ++v) {
    if (t.vertices[v].size() != 4) throw DiagramError("to_compact: vertex is not 4-valent");
    for (int k = 0; k < 4; ++k) {
      int x = t.vertices[v][k];
      c.edge[4 * v + k] = id(d.map.edge[x]);
      if (d.oriented()) c.dir[4 * v + k] = d.dir[x];
    }
    int op = over_position(t, d, v);
    if (op >= 0) c.over[v] = static_cast<std::int8_t>(op % 2);
  }
  c.loops = d.map.free_loops;
  return c;
}

Diagram from_compact(const CompactDiagram& c) {
  Diagram d;
  const int n = c.dart_count();
  d.map.next.resize(n);
  for (int x = 0; x < n; ++x) d.map.next[x] = CompactDiagram::next(x);
  d.map.edge = c.edge;
  d.map.free_loops = c.loops;
  UnionFind uf(c.vertex_count());
  for (int x = 0; x < n; ++x) uf.unite(x / 4, c.edge[x] / 4);
  std::vector<char> seen(c.vertex_count(), 0);
  for (int v = 0; v < c.vertex_count(); ++v) {
    int r = uf.find(v);
    if (!seen[r]) {
      seen[r] = 1;
      d.map.outer.push_back(4 * v);
    }
  }
  d.over.resize(c.vertex_count());
  for (int v = 0; v < c.vertex_count(); ++v) d.over[v] = c.over[v] < 0 ? -1 : 4 * v + c.over[v];
  d.dir = c.dir;
  return d;
}

CompactDiagram rebuild(const CompactDiagram& c,
                       const std::vector<std::array<int, 4>>& vertices,
                       const std::vector<std::int8_t>& over,
                       const std::vector<int>& through) {
  const int n = c.dart_count();
  std::vector<int> newid(n, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (int k = 0; k < 4; ++k) newid[vertices[i][k]] = static_cast<int>(4 * i + k);

  CompactDiagram out;
  out.edge.assign(4 * vertices.size(), -1);
  out.over = over;
  if (c.oriented()) out.dir.assign(4 * vertices.size(), 0);
  std::vector<char> used(n, 0);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (int k = 0; k < 4; ++k) {
      int d = vertices[i][k];
      int nd = static_cast<int>(4 * i + k);
      if (c.oriented()) out.dir[nd] = c.dir[d];
      int x = c.edge[d];
      while (newid[x] == -1) {
        int y = through[x];
        if (y < 0) throw DiagramError("rebuild: strand has no continuation");
        if (newid[y] != -1) throw DiagramError("rebuild: continuation lands on a kept dart");
        used[x] = used[y] = 1;
        x = c.edge[y];
      }
      out.edge[nd] = newid[x];
    }
  }
  out.loops = c.loops;
  for (int d = 0; d < n; ++d) {
    if (newid[d] != -1 || used[d] || through[d] == -2) continue;
    if (through[d] < 0) throw DiagramError("rebuild: dart of a removed vertex lacks a continuation");
    int x = d;
    do {
      int y = through[x];
      used[x] = used[y] = 1;
      x = c.edge[y];
    } while (x != d);
    ++out.loops;
  }
  return out;
}

CompactDiagram resolve(const CompactDiagram& c, std::span<const SiteAction> actions) {
  const int nv = c.vertex_count();
  std::vector<std::array<int, 4>> vertices;
  std::vector<std::int8_t> over;
  std::vector<int> through(c.dart_count(), -1);
  for (int v = 0; v < nv; ++v) {
    const SiteAction& a = actions[v];
    const int b = 4 * v;
    if (a.kind == SiteAction::Smooth) {
      if (a.pairing == 0) {
        through[b] = b + 1, through[b + 1] = b, through[b + 2] = b + 3, through[b + 3] = b + 2;
      } else {
        through[b + 3] = b, through[b] = b + 3, through[b + 1] = b + 2, through[b + 2] = b + 1;
      }
    } else {
      vertices.push_back({b, b + 1, b + 2, b + 3});
      over.push_back(a.kind == SiteAction::Rigid ? std::int8_t{-1} : c.over[v]);
    }
  }
  return rebuild(c, vertices, over, through);
}

std::vector<CompactDiagram> components(const CompactDiagram& c) {
  const int nv = c.vertex_count();
  UnionFind uf(std::max(nv, 1));
  for (int d = 0; d < c.dart_count(); ++d) uf.unite(d >> 2, c.edge[d] >> 2);
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < nv; ++v) groups[uf.find(v)].push_back(v);
  std::vector<CompactDiagram> out;
  for (const auto& [root, verts] : groups) {
    std::vector<int> local(nv, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    CompactDiagram part;
    part.edge.resize(4 * verts.size());
    part.over.resize(verts.size());
    if (c.oriented()) part.dir.resize(4 * verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      int v = verts[i];
      part.over[i] = c.over[v];
      for (int k = 0; k < 4; ++k) {
        int t = c.edge[4 * v + k];
        part.edge[4 * i + k] = 4 * local[t >> 2] + (t & 3);
        if (c.oriented()) part.dir[4 * i + k] = c.dir[4 * v + k];
      }
    }
    out.push_back(std::move(part));
  }
  return out;
}

namespace {

std::vector<int> component_code(const CompactDiagram& c, int start) {
  const int nv = c.vertex_count();
  std::vector<int> label(nv, -1), offset(nv, 0), order;
  order.reserve(nv);
  label[start >> 2] = 0;
  offset[start >> 2] = start & 3;
  order.push_back(start >> 2);
  std::vector<int> code;
  code.reserve(nv * 10);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    int off = offset[v];
    for (int k = 0; k < 4; ++k) {
      int d = 4 * v + ((off + k) & 3);
      int t = c.edge[d];
      int vt = t >> 2;
      if (label[vt] == -1) {
        label[vt] = static_cast<int>(order.size());
        offset[vt] = t & 3;
        order.push_back(vt);
      }
      code.push_back(4 * label[vt] + (((t & 3) - offset[vt]) & 3));
      if (c.oriented()) code.push_back(c.dir[d]);
    }
    code.push_back(c.over[v] < 0 ? 2 : ((c.over[v] - off) & 1));
  }
  return code;
}

}  // namespace

std::vector<int> canonical_key(const CompactDiagram& c) {
  std::vector<std::vector<int>> codes;
  for (const auto& part : components(c)) {
    std::vector<int> best;
    for (int s = 0; s < part.dart_count(); ++s) {
      auto code = component_code(part, s);
      if (best.empty() || code < best) best = std::move(code);
    }
    codes.push_back(std::move(best));
  }
  std::sort(codes.begin(), codes.end());
  std::vector<int> key = {c.oriented() ? 1 : 0, c.loops, static_cast<int>(codes.size())};
  for (const auto& code : codes) {
    key.push_back(static_cast<int>(code.size()));
    key.insert(key.end(), code.begin(), code.end());
  }
  return key;
}

}  // namespace linkpoly
