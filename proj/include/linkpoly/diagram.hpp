#pragma once

// Planar combinatorial maps decorated as link diagrams, rigid-vertex 4-valent
// plane graphs and trivalent classic graphs. Everything is combinatorial:
// rotations are counterclockwise and one dart per connected component marks
// the unbounded face.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkpoly {

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Darts are 0-based internally; the text format uses 1-based identifiers.
struct PlanarMap {
  std::vector<int> next;   // counterclockwise successor around the vertex
  std::vector<int> edge;   // edge involution
  std::vector<int> outer;  // one dart per connected component, on its unbounded face
  int free_loops = 0;

  int dart_count() const { return static_cast<int>(next.size()); }
};

/// Derived vertex/face tables of a PlanarMap.
struct MapTables {
  std::vector<int> prev;             // inverse of next
  std::vector<int> vertex_of;        // dart -> vertex index
  std::vector<int> position;         // dart -> index inside its vertex cycle
  std::vector<std::vector<int>> vertices;  // ccw dart cycles, smallest dart first
  std::vector<int> face_of;          // dart -> face on the left of the dart
  int face_count = 0;
  std::vector<int> component_of;     // dart -> component index
  int component_count = 0;

  explicit MapTables(const PlanarMap& map);
};

enum class EdgeKind : std::uint8_t { Common, Thick };

/// A planar map with optional decorations.
///  - Link diagram: every vertex has an over dart.
///  - 4-valent graph: no over darts (rigid vertices).
///  - Trivalent classic graph: `thick` is non-empty.
/// `dir` is empty for unoriented inputs; otherwise +1 marks a dart whose edge
/// leaves the vertex and -1 one whose edge enters it.
struct Diagram {
  PlanarMap map;
  std::vector<int> over;            // per vertex: a dart of the over strand, or -1
  std::vector<std::int8_t> dir;     // per dart
  std::vector<int> loop_signs;      // per free loop (+1 ccw, -1 cw) when oriented
  std::vector<EdgeKind> thick;      // per dart, trivalent inputs only

  // A dartless diagram is oriented when its free loops carry signs.
  bool oriented() const {
    return !dir.empty() || (map.next.empty() && map.free_loops > 0 &&
                            static_cast<int>(loop_signs.size()) == map.free_loops);
  }
  bool trivalent() const { return !thick.empty(); }
  int vertex_count() const;
};

// ------------------------------------------------------------- text format

Diagram parse_diagram(std::istream& in);
Diagram parse_diagram_string(const std::string& text);
Diagram load_diagram(const std::string& path);
std::string format_diagram(const Diagram& d);

// --------------------------------------------------------------- validation

struct ValidationReport {
  std::vector<std::string> issues;
  int vertices = 0, edges = 0, faces = 0, components = 0;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const PlanarMap& map);
/// Map checks plus decoration checks (valence, over darts, orientation).
ValidationReport validate(const Diagram& d);
/// Throws DiagramError carrying the first issue when invalid.
void require_valid(const Diagram& d);

// ------------------------------------------------------- crossing conventions

/// Position (0..3) of the over dart inside its vertex cycle, or -1.
int over_position(const MapTables& t, const Diagram& d, int vertex);

/// Sign of an oriented crossing: +1 when, counterclockwise around the vertex,
/// the over strand's inward dart is immediately followed by the under strand's
/// inward dart.
int crossing_sign(const MapTables& t, const Diagram& d, int vertex);

/// Smoothings are encoded as one of two pairings of a vertex's darts p0..p3:
///   pairing 0 joins (p0 p1)(p2 p3), pairing 1 joins (p3 p0)(p1 p2).
/// Kauffman A-smoothing joins each over dart with its clockwise neighbour.
int a_pairing(int over_pos);
inline int b_pairing(int over_pos) { return 1 - a_pairing(over_pos); }
/// The orientation-respecting smoothing of a crossing-like oriented vertex.
int seifert_pairing(std::span<const std::int8_t> dir4);
/// Wu's L smoothing of an alternatingly oriented vertex: every strand turns
/// left. R is the other pairing.
int left_pairing(std::span<const std::int8_t> dir4);

// ------------------------------------------------------------ Seifert circles

struct SeifertCircle {
  std::vector<int> darts;  // outward darts in traversal order (empty for free loops)
  int sign = 0;            // +1 counterclockwise, -1 clockwise
};

struct SeifertDecomposition {
  std::vector<SeifertCircle> circles;
  int rotation() const;
};

/// Smooths every vertex with the given pairing (one entry per vertex) and
/// signs the resulting circles. The pairing must respect `dir`.
SeifertDecomposition smoothed_circles(const PlanarMap& map, const MapTables& t,
                                      std::span<const std::int8_t> dir,
                                      std::span<const int> pairing,
                                      std::span<const int> loop_signs);

/// Orientation-respecting smoothing at every crossing/vertex.
SeifertDecomposition seifert_decompose(const Diagram& d);
int rotation_number(const Diagram& d);
int writhe(const Diagram& d);

// ------------------------------------------------------------ constructions

/// Planar diagram code: each crossing (a b c d) lists edge labels
/// counterclockwise starting from the incoming under-strand. Orientation
/// follows increasing labels along each component.
Diagram from_pd(const std::vector<std::array<int, 4>>& pd);

/// Closure of a braid word on `strands` strands; letter +i / -i is
/// sigma_i^{+1} / sigma_i^{-1} (1-based). Strands run upward and close on
/// the right, so every Seifert circle is clockwise.
Diagram braid_closure(int strands, const std::vector<int>& word);

Diagram mirror(const Diagram& d);
Diagram reverse_orientation(const Diagram& d);
Diagram disjoint_union(const Diagram& a, const Diagram& b);
/// Forgets over/under information: crossings become rigid vertices.
Diagram as_graph(const Diagram& d);

/// Merges the two endpoints of every thick edge into one 4-valent vertex.
Diagram contract_thick_edges(const Diagram& g);

// ----------------------------------------------------------- compact diagram

/// Working form used by the evaluation engines: vertex v owns darts
/// 4v..4v+3 in counterclockwise order.
struct CompactDiagram {
  std::vector<int> edge;
  std::vector<std::int8_t> over;  // per vertex: -1 rigid, 0 over on {0,2}, 1 over on {1,3}
  std::vector<std::int8_t> dir;   // per dart, empty when unoriented
  int loops = 0;

  int vertex_count() const { return static_cast<int>(over.size()); }
  int dart_count() const { return static_cast<int>(edge.size()); }
  bool oriented() const { return !dir.empty(); }
  static int next(int d) { return (d & ~3) | ((d + 1) & 3); }
  static int prev(int d) { return (d & ~3) | ((d + 3) & 3); }
  static int opposite(int d) { return d ^ 2; }
};

/// How a vertex of the source is treated when resolving.
struct SiteAction {
  enum Kind : std::uint8_t { Keep, Rigid, Smooth } kind = Keep;
  std::int8_t pairing = 0;  // for Smooth
};

CompactDiagram to_compact(const Diagram& d);
/// Back to a Diagram. The unbounded face of each component is the face left
/// of its smallest dart, which is arbitrary but harmless for sphere invariants.
Diagram from_compact(const CompactDiagram& c);

/// Applies per-vertex actions: smoothed vertices disappear and their strands
/// are spliced; closed strands become free loops.
CompactDiagram resolve(const CompactDiagram& c, std::span<const SiteAction> actions);

/// General rebuild: `vertices` lists the surviving/new vertices as four source
/// darts each (ccw) with their over flags; `through[d]` names the dart a strand
/// entering a removed region at d leaves by (-1 for darts of kept vertices,
/// -2 for darts discarded together with their edge).
CompactDiagram rebuild(const CompactDiagram& c,
                       const std::vector<std::array<int, 4>>& vertices,
                       const std::vector<std::int8_t>& over,
                       const std::vector<int>& through);

/// Splits into connected components (each a standalone diagram, no loops)
/// and returns the number of free loops separately.
std::vector<CompactDiagram> components(const CompactDiagram& c);

/// Canonical key: invariant under dart relabeling that preserves rotations,
/// over flags and orientation.
std::vector<int> canonical_key(const CompactDiagram& c);

}  // namespace linkpoly
