#pragma once

// The two oriented 4-valent models of D_L(q - q^-1, a^2 q^-1):
//  HJ: Jaeger's formula, then the Homflypt graph expansion;
//  WF: the Kauffman graph expansion, then Wu's formula.
// Every HJ state s owns the WF terms producing the same labelled oriented
// graph, and c_s equals the sum of their weights.

#include <cstdint>
#include <string>
#include <vector>

#include "linkpoly/algebra.hpp"
#include "linkpoly/diagram.hpp"
#include "linkpoly/orientations.hpp"

namespace linkpoly {

/// Local oriented replacement of one labelled crossing.
///  V1..V4  crossing-like orientation kept as a vertex,
///  C1..C4  crossing-like orientation, oriented smoothing;
///          1,2 positive and 3,4 negative, odd when the stored over dart leaves;
///  A1 top outward + A pairing, A2 top inward + A pairing,
///  A3 top outward + B pairing, A4 top inward + B pairing.
enum class Configuration : std::uint8_t { V1, V2, V3, V4, C1, C2, C3, C4, A1, A2, A3, A4 };

const char* configuration_name(Configuration c);

/// Per-crossing weights of the HJ model (the ten-configuration table; A2 and
/// A4 weigh 0).
RationalFunction hj_configuration_weight(Configuration c);

struct HJTerm {
  int id = 0;  // 1-based, enumeration order
  int orientation = 0;
  std::vector<std::int8_t> dir;
  std::vector<int> loop_signs;
  std::vector<Configuration> config;          // per crossing
  std::vector<RationalFunction> weights;      // per crossing
  int rot = 0;
  CompactDiagram state;                       // oriented rigid-vertex graph
  RationalFunction c_weight;                  // J (q a^-1)^rot prod(weights)
};

struct WFTerm {
  int id = 0;  // 1-based: graph, then orientation, then resolution
  int graph = 0;  // index of the unoriented graph in expand_d order
  std::vector<std::int8_t> f_choice;  // per crossing: 0 vertex, 1 A, 2 B
  int orientation = 0;
  std::vector<Smoothing> wu_choice;   // L/R at alternating vertices, else None
  std::vector<std::int8_t> dir;
  std::vector<int> loop_signs;
  std::vector<Configuration> config;
  std::vector<RationalFunction> weights;  // F weight times W weight, per crossing
  int rot = 0;
  CompactDiagram result;
  RationalFunction d_weight;
};

std::vector<HJTerm> hj_expand(const Diagram& link, int jobs = 1);
std::vector<WFTerm> wf_expand(const Diagram& link, int jobs = 1);
/// Number of distinct unoriented graphs behind a WF term list.
int wf_graph_count(const std::vector<WFTerm>& wf);

/// Sums of weight times [graph]_R(q, q^-1, a); both equal D_L(q - q^-1, a^2 q^-1).
RationalFunction hj_total(const std::vector<HJTerm>& hj, int jobs = 1);
RationalFunction wf_total(const std::vector<WFTerm>& wf, int jobs = 1);

struct CorrespondenceGroup {
  int state = 0;             // HJ id
  std::vector<int> members;  // WF ids
  RationalFunction weight_sum;  // sum over members of prod(weights)
  RationalFunction d_sum;       // sum over members of d_weight
  bool pass = false;
};

struct CorrespondenceReport {
  std::vector<CorrespondenceGroup> groups;  // one per HJ state, in id order
  std::vector<int> leftovers;               // WF ids matching no state
  bool disjoint = true;
  bool pass() const;
};

CorrespondenceReport build_correspondence(const std::vector<HJTerm>& hj, const std::vector<WFTerm>& wf);
std::string format_report(const CorrespondenceReport& r, const std::vector<HJTerm>& hj,
                          const std::vector<WFTerm>& wf);
std::string format_weights(const std::vector<RationalFunction>& w);

/// One row of a reference table: state weights and member weight pairs.
struct TableRow {
  std::string label;
  std::vector<RationalFunction> state;
  std::vector<std::vector<RationalFunction>> members;
  std::vector<int> member_ids;
};
std::vector<TableRow> parse_table(std::istream& in);
std::vector<TableRow> load_table(const std::string& path);
/// The report as table rows, and rows in the text form parse_table reads.
std::vector<TableRow> report_rows(const CorrespondenceReport& r, const std::vector<HJTerm>& hj,
                                  const std::vector<WFTerm>& wf);
std::string format_table(const std::vector<TableRow>& rows);

struct TableMatch {
  bool ok = false;
  bool swapped = false;  // crossing labels exchanged
  std::vector<int> row_of_group;  // group index -> row index, -1 unmatched
  std::vector<std::string> problems;
};
/// Matches report groups to table rows bijectively on (state weights,
/// multiset of member weights), allowing one global relabelling of crossings
/// for two-crossing diagrams.
TableMatch match_rows(const std::vector<TableRow>& ours, const std::vector<TableRow>& rows);
TableMatch match_table(const CorrespondenceReport& r, const std::vector<HJTerm>& hj,
                       const std::vector<WFTerm>& wf, const std::vector<TableRow>& rows);

/// Proof identities over attributions of a1 A1, a2 A2 / A4 and a3 A3 sites
/// to the smoothing (F) or the vertex resolution (W).
struct CaseIdentityReport {
  bool case1 = true;   // a2 >= 1: sum_k C(a2,k) q^k (-q)^(a2-k) = 0, and the A4 analogue
  bool case2a = true;  // (q - q^-1)^a1 = sum_k C(a1,k) q^k (-q^-1)^(a1-k)
  bool case2b = true;  // (q^-1 - q)^a3 = sum_k C(a3,k) (-q)^(a3-k) q^-k
  bool brute_force = true;  // each closed form equals the 2^a attribution sum
  bool ok() const { return case1 && case2a && case2b && brute_force; }
};
CaseIdentityReport case_identities_report(int a1, int a2, int a3);
bool case_identities(int a1, int a2, int a3);

/// HJ model with zero terms removed: orientations without top-inward
/// crossings, configurations V, C, A1 and A3, weights from the table.
RationalFunction simplified_hj(const Diagram& link, int jobs = 1);

// ---------------------------------------------------------- trivalent model

struct ClassicState {
  std::vector<std::int8_t> smoothed;  // per crossing
  int i = 0, j = 0;  // smoothed positive / negative crossings
  int s = 0, t = 0;  // kept positive / negative crossings
  Diagram classic;   // trivalent graph, thick edge per kept crossing
  CompactDiagram contracted;
};

/// 2^n classic graphs, crossing 0 varying fastest (the expand_r order).
std::vector<ClassicState> classic_states(const Diagram& link);
/// Contracting thick edges reproduces the expand_r graph of the same choices.
bool trivalent_bijection(const Diagram& link, std::string* problem = nullptr);

/// sum_G q^(i-j) [f(G)]_R(q, q^-1, q^n) over {q}; n >= 2.
RationalFunction homflypt_n_specialization(const Diagram& link, int n, int jobs = 1);
/// R_L(q - q^-1, q^n) from the skein oracle.
RationalFunction homflypt_n_reference(const Diagram& link, int n);

}  // namespace linkpoly
