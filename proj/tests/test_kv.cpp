#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "linkpoly/kv.hpp"
#include "linkpoly/skein.hpp"

using namespace linkpoly;

namespace {

RationalFunction AB(const std::string& s) { return parse_expression(s, vars_ABa()); }

RationalFunction at_q(const RationalFunction& f) {
  Bindings b = {{"A", parse_expression("q", vars_qa())},
                {"B", parse_expression("q^-1", vars_qa())},
                {"a", parse_expression("a", vars_qa())}};
  return substitute(f, b, vars_qa());
}

RationalFunction at_numbers(const RationalFunction& f) {
  const VariableSet va({"a"});
  Bindings b = {{"A", RationalFunction::constant(va, 2)},
                {"B", RationalFunction::constant(va, 1)},
                {"a", parse_expression("a", va)}};
  return substitute(f, b, va);
}

std::vector<Diagram> small_corpus() {
  return {fixtures::unknot(),   fixtures::unknot_curl(), fixtures::unlink2(),     fixtures::hopf_pos(),
          fixtures::hopf_neg(), fixtures::trefoil(),     fixtures::trefoil_mirror(), fixtures::figure8(),
          fixtures::trefoil_pd(), fixtures::figure8_pd()};
}

std::vector<Diagram> big_corpus() {
  auto c = small_corpus();
  c.push_back(fixtures::torus26());
  c.push_back(fixtures::borromean());
  return c;
}

}  // namespace

TEST_CASE("coefficient relations") {
  const auto& k = KVCoefficients::get();
  CHECK(k.mu == k.delta + AB("1"));
  CHECK(k.o == k.lambda - AB("A + B"));
  CHECK(k.gamma == k.theta + AB("A*B"));
  CHECK(k.xi == k.eta);
  CHECK(k.lambda == AB("(A*a^-1 - B*a)/(A - B)"));
  // The curl value agrees with the defining relation: a - A delta.
  CHECK(k.lambda == AB("a") - AB("A") * k.delta);
}

TEST_CASE("rule table ships as a data file identical to the embedded default") {
  std::ifstream in(std::string(LINKPOLY_SOURCE_DIR) + "/data/kv_rules.txt");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == default_rule_text());
  CHECK(default_rules().size() == 6);
}

TEST_CASE("rule parser reports bad blocks") {
  CHECK_THROWS_AS(parse_rules_string("rule x\ncalculus: R\nvrot: (1 2 3 4)\neinv: (1 2)\nboundary: 3 4\nend\n"),
                  DiagramError);
  CHECK_THROWS_AS(parse_rules_string("rule x\ncalculus: R\nvrot: (1 2 3 4)\neinv: (1 2)\nboundary: 3\n"
                                     "rewrite: lambda => match (3 4)\nend\n"),
                  DiagramError);
  CHECK_THROWS_AS(parse_rules_string("rule x\ncalculus: R\nvrot: (1 2 3 4)\neinv: (1 2)\nboundary: 3 4\n"
                                     "rewrite: kappa => match (3 4)\nend\n"),
                  DiagramError);
}

TEST_CASE("loop values") {
  const auto& k = KVCoefficients::get();
  CompactDiagram one;
  one.loops = 1;
  CHECK(eval_r(one) == AB("1"));
  CHECK(eval_d(one) == AB("1"));
  CompactDiagram two;
  two.loops = 2;
  CHECK(eval_r(two) == k.delta);
  CHECK(eval_d(two) == k.mu);
}

TEST_CASE("expand_r and expand_d on the Hopf link") {
  auto r = expand_r(fixtures::hopf_pos());
  REQUIRE(r.size() == 4);
  std::multiset<std::pair<int, int>> ij;
  for (const auto& t : r) ij.insert({t.i, t.j});
  CHECK(ij == std::multiset<std::pair<int, int>>{{2, 0}, {1, 0}, {1, 0}, {0, 0}});
  auto d = expand_d(fixtures::hopf_pos());
  CHECK(d.size() == 9);
  std::set<std::vector<std::int8_t>> choices;
  for (const auto& t : d) choices.insert(t.choice);
  CHECK(choices.size() == 9);
  CHECK(expand_r(fixtures::unknot()).size() == 1);
  CHECK(expand_d(fixtures::unknot()).size() == 1);
  CHECK(expand_r(fixtures::unknot())[0].graph.loops == 1);
}

TEST_CASE("Hopf KV sums against the skein oracle") {
  auto h = fixtures::hopf_pos();
  CompactDiagram c = to_compact(h);
  CHECK(at_q(kv_sum_r(h)) == at_q(r_poly_ab(c)));
  CHECK(at_q(kv_sum_d(h)) == at_q(d_poly_ab(c)));
}

TEST_CASE("rewriting agrees with the defining relations on expansion graphs") {
  for (const auto& d : small_corpus()) {
    for (const auto& t : expand_r(d)) {
      auto v = eval_r(t.graph);
      CHECK(v == eval_r_definition(t.graph));
      CHECK(v == eval_r(t.graph, {SiteOrder::LargestFirst, nullptr}));
    }
    for (const auto& t : expand_d(d)) {
      auto v = eval_d(t.graph);
      CHECK(v == eval_d_definition(t.graph));
      CHECK(v == eval_d(t.graph, {SiteOrder::LargestFirst, nullptr}));
    }
  }
}

TEST_CASE("expansion sums on the corpus") {
  for (const auto& d : big_corpus()) {
    CompactDiagram c = to_compact(d);
    auto r = r_poly_ab(c);
    auto s = kv_sum_r(d);
    CHECK(s == r);
    CHECK(at_q(s) == at_q(r));
    CHECK(at_numbers(s) == at_numbers(r));
    auto dd = d_poly_ab(c);
    auto sd = kv_sum_d(d);
    CHECK(sd == dd);
    CHECK(at_q(sd) == at_q(dd));
    CHECK(at_numbers(sd) == at_numbers(dd));
  }
}

TEST_CASE("disjoint loops multiply by the loop value") {
  const auto& k = KVCoefficients::get();
  for (const auto& t : expand_d(fixtures::trefoil())) {
    CompactDiagram g = t.graph;
    CompactDiagram g1 = g;
    g1.loops += 1;
    CHECK(eval_d(g1) == k.mu * eval_d(g));
  }
  for (const auto& t : expand_r(fixtures::figure8())) {
    CompactDiagram g1 = t.graph;
    g1.loops += 1;
    CHECK(eval_r(g1) == k.delta * eval_r(t.graph));
  }
}

TEST_CASE("random braid closures satisfy both expansion identities") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    int strands = 2 + trial % 2;
    int len = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<int> w;
    for (int k = 0; k < len; ++k) {
      int g = std::uniform_int_distribution<int>(1, strands - 1)(rng);
      w.push_back(rng() % 2 ? g : -g);
    }
    Diagram d = braid_closure(strands, w);
    CompactDiagram c = to_compact(d);
    CHECK(kv_sum_r(d) == r_poly_ab(c));
    CHECK(kv_sum_d(d) == d_poly_ab(c));
  }
}

TEST_CASE("small diagrams never need the definition fallback") {
  for (const auto& d : {fixtures::hopf_pos(), fixtures::trefoil(), fixtures::figure8(), fixtures::torus26()}) {
    clear_kv_memo();
    kv_sum_r(d);
    kv_sum_d(d);
    CHECK(kv_fallback_count() == 0);
  }
}
