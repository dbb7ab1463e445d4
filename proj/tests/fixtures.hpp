#pragma once

#include "linkpoly/diagram.hpp"

namespace fixtures {

using linkpoly::Diagram;

inline Diagram free_loops(int k, int sign = 1) {
  Diagram d;
  d.map.free_loops = k;
  d.dir.clear();
  d.loop_signs.assign(k, sign);
  return d;
}

// Oriented loops carry signs; an empty `dir` would mark the diagram unoriented,
// which is fine for free loops since they have no darts.
inline Diagram unknot() { return free_loops(1, -1); }
inline Diagram unknot_curl() { return linkpoly::braid_closure(2, {1}); }
inline Diagram unlink2() { return free_loops(2, -1); }
inline Diagram hopf_pos() { return linkpoly::braid_closure(2, {1, 1}); }
inline Diagram hopf_neg() { return linkpoly::braid_closure(2, {-1, -1}); }
inline Diagram trefoil() { return linkpoly::braid_closure(2, {1, 1, 1}); }
inline Diagram trefoil_mirror() { return linkpoly::braid_closure(2, {-1, -1, -1}); }
inline Diagram figure8() { return linkpoly::braid_closure(3, {1, -2, 1, -2}); }
inline Diagram borromean() { return linkpoly::braid_closure(3, {1, -2, 1, -2, 1, -2}); }
inline Diagram torus26() { return linkpoly::braid_closure(2, {1, 1, 1, 1, 1, 1}); }

inline Diagram trefoil_pd() { return linkpoly::from_pd({{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}}); }
inline Diagram figure8_pd() {
  return linkpoly::from_pd({{4, 2, 5, 1}, {8, 6, 1, 5}, {6, 3, 7, 4}, {2, 7, 3, 8}});
}
inline Diagram hopf_pd() { return linkpoly::from_pd({{4, 1, 3, 2}, {2, 3, 1, 4}}); }

}  // namespace fixtures

namespace fixtures {

// Darts of each closed strand of a 4-valent diagram (straight through every vertex).
inline std::vector<std::vector<int>> strands(const Diagram& d) {
  linkpoly::MapTables t(d.map);
  const int n = d.map.dart_count();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<int> s;
    int y = x;
    do {
      seen[y] = 1;
      s.push_back(y);
      int z = d.map.edge[y];
      seen[z] = 1;
      s.push_back(z);
      const auto& vd = t.vertices[t.vertex_of[z]];
      y = vd[(t.position[z] + 2) % 4];
    } while (y != x);
    out.push_back(std::move(s));
  }
  return out;
}

inline Diagram reverse_strand(Diagram d, const std::vector<int>& darts) {
  for (int x : darts) d.dir[x] = static_cast<std::int8_t>(-d.dir[x]);
  return d;
}

}  // namespace fixtures
