#pragma once

// State expansions of link diagrams into 4-valent plane graphs and the
// bracket values [G]_R, [G]_D of such graphs, computed by local rewriting.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linkpoly/algebra.hpp"
#include "linkpoly/diagram.hpp"

namespace linkpoly {

/// Graph-calculus constants over {A, B, a}.
struct KVCoefficients {
  RationalFunction delta, lambda, theta, eta;  // R calculus
  RationalFunction mu, o, gamma, xi;           // D calculus
  static const KVCoefficients& get();
  /// Named constants for parse_expression ("delta", "lambda", ...).
  std::map<std::string, RationalFunction> named() const;
};

enum class Calculus : std::uint8_t { R, D };
enum class SiteOrder : std::uint8_t { SmallestFirst, LargestFirst };

// ------------------------------------------------------------------ rule table

struct RewriteTerm {
  RationalFunction coefficient;
  std::vector<std::pair<int, int>> joins;  // boundary darts joined pairwise
  std::optional<std::array<int, 4>> vertex;
  int loops = 0;
};

/// A fragment with `vertices` (pattern darts, ccw), internal edges and boundary
/// darts. Pattern darts are 0-based.
struct Rule {
  std::string name;
  Calculus calculus = Calculus::R;
  std::vector<std::array<int, 4>> vertices;
  std::vector<int> edge;          // per pattern dart: partner, or -1 on the boundary
  std::vector<std::int8_t> dir;   // empty when the rule ignores orientation
  std::vector<int> boundary;
  std::vector<RewriteTerm> rewrites;
};

std::vector<Rule> parse_rules(std::istream& in);
std::vector<Rule> parse_rules_string(const std::string& text);
const std::string& default_rule_text();
const std::vector<Rule>& default_rules();

struct RuleMatch {
  const Rule* rule = nullptr;
  std::vector<int> image;  // pattern dart -> graph dart
};

std::optional<RuleMatch> find_match(const CompactDiagram& g, const std::vector<Rule>& rules,
                                    Calculus calc, SiteOrder order);
std::vector<std::pair<RationalFunction, CompactDiagram>> apply_match(const CompactDiagram& g,
                                                                     const RuleMatch& m);

// ------------------------------------------------------------------ evaluation

struct EvalOptions {
  SiteOrder order = SiteOrder::SmallestFirst;
  const std::vector<Rule>* rules = nullptr;  // default table when null
};

/// [G]_R of a crossing-like oriented rigid-vertex graph.
RationalFunction eval_r(const CompactDiagram& g, const EvalOptions& opt = {});
/// [G]_D of an unoriented rigid-vertex graph (orientation ignored).
RationalFunction eval_d(const CompactDiagram& g, const EvalOptions& opt = {});
RationalFunction eval_r(const Diagram& g);
RationalFunction eval_d(const Diagram& g);

/// The same values straight from the defining relations: every vertex is
/// expanded into a crossing and smoothings, evaluated by the skein oracle.
RationalFunction eval_r_definition(const CompactDiagram& g);
RationalFunction eval_d_definition(const CompactDiagram& g);

/// Connected pieces for which no rule applied and the definition route was used.
std::size_t kv_fallback_count();
void clear_kv_memo();

// ------------------------------------------------------------------ expansions

struct StateTerm {
  CompactDiagram graph;
  int i = 0, j = 0;
  /// Per crossing of the source: 0 vertex, 1 smoothing counted in i,
  /// 2 smoothing counted in j.
  std::vector<std::int8_t> choice;
};

/// 2^n terms: each crossing becomes a vertex or its oriented smoothing.
std::vector<StateTerm> expand_r(const Diagram& link);
/// 3^n terms: vertex, A-smoothing (i) or B-smoothing (j).
std::vector<StateTerm> expand_d(const Diagram& link);

/// Sums of A^i B^j [G] over the expansions.
RationalFunction kv_sum_r(const Diagram& link);
RationalFunction kv_sum_d(const Diagram& link);

/// Skein-oracle values with z = A - B, over {A, B, a}.
RationalFunction r_poly_ab(const CompactDiagram& c);
RationalFunction d_poly_ab(const CompactDiagram& c);

/// Positive crossing placed on a crossing-like oriented vertex (over parity).
std::int8_t positive_over(const CompactDiagram& c, int vertex);

}  // namespace linkpoly
