#pragma once

// Balanced (2-in 2-out) orientations of unoriented diagrams and graphs, and
// the Jaeger and Wu state sums built on them.

#include <cstdint>
#include <string>
#include <vector>

#include "linkpoly/algebra.hpp"
#include "linkpoly/diagram.hpp"

namespace linkpoly {

enum class SiteClass : std::uint8_t {
  PositiveCrossingLike,
  NegativeCrossingLike,
  TopOutward,  // both over darts leave the crossing
  TopInward,
  CrossingLike,  // rigid vertex, inward darts adjacent
  Alternating,   // rigid vertex, inward darts opposite
};

enum class Smoothing : std::uint8_t { None, A, B, L, R };

bool is_alternating(SiteClass c);
const char* site_class_name(SiteClass c);
char smoothing_letter(Smoothing s);

struct BalancedOrientation {
  std::vector<std::int8_t> dir;  // per dart of the source map
  std::vector<int> loop_signs;   // per free loop
  std::vector<SiteClass> site_class;  // per vertex (MapTables order)
};

/// Every balanced orientation, in a fixed order: edges by smallest dart, the
/// smaller dart outward first; free loops last, +1 before -1.
std::vector<BalancedOrientation> enumerate_balanced(const Diagram& d);

/// Copy of `d` carrying the orientation.
Diagram with_orientation(const Diagram& d, const BalancedOrientation& o);

/// Classifies vertex `v` of an oriented diagram.
SiteClass classify_site(const MapTables& t, const Diagram& oriented, int v);

/// Weights over {q, a}. Throws DiagramError on a choice that does not fit
/// the site (a smoothing at a crossing-like site, or none at an alternating one).
RationalFunction crossing_weight(SiteClass c, Smoothing s);
RationalFunction vertex_weight(Smoothing s);

/// Pairing (see a_pairing) realising a smoothing at vertex `v`.
int smoothing_pairing(const MapTables& t, const Diagram& oriented, int v, Smoothing s);

/// One (orientation, resolution) term.
struct WeightedTerm {
  int orientation = 0;              // index into enumerate_balanced
  std::vector<SiteClass> site_class;
  std::vector<Smoothing> choice;    // per vertex; None at crossing-like sites
  CompactDiagram result;            // oriented, smoothed at the alternating sites
  RationalFunction weight;          // product of site weights
  int rot = 0;
  RationalFunction value;           // J (q a^-1)^rot weight <polynomial of result>
};

/// J = 1 / (q a^-1 + q^-1 a).
const RationalFunction& jaeger_j();

/// Terms of Jaeger's formula. With skip_zero, orientations with a top-inward
/// crossing are dropped (they carry weight 0).
std::vector<WeightedTerm> jaeger_terms(const Diagram& link, bool skip_zero = false, int jobs = 1);
std::vector<WeightedTerm> wu_terms(const Diagram& graph, int jobs = 1);

RationalFunction jaeger_rhs(const Diagram& link, bool skip_zero = false, int jobs = 1);
RationalFunction wu_rhs(const Diagram& graph, int jobs = 1);

/// Left-hand sides: D_L(q - q^-1, a^2 q^-1) and [G]_D(q, q^-1, a^2 q^-1).
RationalFunction jaeger_lhs(const Diagram& link);
RationalFunction wu_lhs(const Diagram& graph);

/// Resolutions of one orientation: all A/B (links) or L/R (graphs) choices on
/// the alternating sites, site 0 varying fastest, A/L before B/R.
std::vector<std::vector<Smoothing>> resolutions(const std::vector<SiteClass>& classes);

}  // namespace linkpoly
