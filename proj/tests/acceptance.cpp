// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "linkpoly/cli.hpp"
#include "linkpoly/correspondence.hpp"
#include "linkpoly/kv.hpp"
#include "linkpoly/orientations.hpp"
#include "linkpoly/skein.hpp"

using namespace linkpoly;
namespace fs = std::filesystem;

namespace {

const std::string kRoot = LINKPOLY_SOURCE_DIR;

struct Named {
  std::string name;
  Diagram d;
};

std::vector<Named> load_dir(const fs::path& dir) {
  std::vector<Named> out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) out.push_back({p.stem().string(), load_diagram(p.string())});
  return out;
}

std::vector<Named> corpus_links(int max_crossings) {
  std::vector<Named> out;
  for (auto& n : load_dir(kRoot + "/data/corpus"))
    if (n.d.vertex_count() <= max_crossings) out.push_back(std::move(n));
  return out;
}

Diagram hopf() { return load_diagram(kRoot + "/data/corpus/hopf_pos.txt"); }

std::vector<int> random_word(std::mt19937& rng, int strands, int min_len, int max_len) {
  int len = std::uniform_int_distribution<int>(min_len, max_len)(rng);
  std::vector<int> w;
  for (int k = 0; k < len; ++k) {
    int g = std::uniform_int_distribution<int>(1, strands - 1)(rng);
    w.push_back(rng() % 2 ? g : -g);
  }
  return w;
}

RationalFunction za_at_q(const RationalFunction& f) {
  auto q = [](const char* s) { return parse_expression(s, vars_qa()); };
  return substitute(f, {{"z", q("q - q^-1")}, {"a", q("a")}}, vars_qa());
}

RationalFunction ab_at_q(const RationalFunction& f) {
  auto q = [](const char* s) { return parse_expression(s, vars_qa()); };
  return substitute(f, {{"A", q("q")}, {"B", q("q^-1")}, {"a", q("a")}}, vars_qa());
}

struct Outcome {
  bool ok = true;
  std::string detail;
};

// ------------------------------------------------------------------ criteria

Outcome hj_census() {
  auto hj = hj_expand(hopf());
  std::set<int> orients;
  for (const auto& h : hj) orients.insert(h.orientation);
  bool ok = hj.size() == 24 && orients.size() == 6;
  return {ok, std::to_string(orients.size()) + " orientations, " + std::to_string(hj.size()) + " states"};
}

Outcome wf_census() {
  auto wf = wf_expand(hopf());
  bool ok = wf.size() == 48 && wf_graph_count(wf) == 9;
  return {ok, std::to_string(wf_graph_count(wf)) + " graphs, " + std::to_string(wf.size()) + " terms"};
}

Outcome table_reproduction() {
  auto rows = load_table(kRoot + "/data/golden/hopf_correspondence.txt");
  Outcome o;
  for (const char* name : {"hopf_pos", "hopf_neg"}) {
    Diagram d = load_diagram(kRoot + "/data/corpus/" + name + ".txt");
    auto hj = hj_expand(d);
    auto wf = wf_expand(d);
    auto r = build_correspondence(hj, wf);
    auto m = match_table(r, hj, wf, rows);
    bool all = r.groups.size() == 24 && r.pass();
    o.ok &= all && m.ok;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + name + ": " + std::to_string(r.groups.size()) +
                " groups, verdicts " + (all ? "PASS" : "FAIL") + ", rows " + (m.ok ? "match" : "differ") +
                (m.swapped ? " (crossings relabelled)" : "");
    for (const auto& p : m.problems) o.detail += "; " + p;
  }
  return o;
}

Outcome jaeger_corpus() {
  Outcome o;
  int n = 0;
  for (const auto& c : corpus_links(6)) {
    // Substitute the skein oracle directly rather than through jaeger_lhs.
    auto q = [](const char* s) { return parse_expression(s, vars_qa()); };
    auto direct = substitute(RationalFunction(d_poly(c.d)), {{"z", q("q - q^-1")}, {"a", q("a^2 * q^-1")}}, vars_qa());
    bool ok = direct == jaeger_rhs(c.d) && direct == jaeger_lhs(c.d);
    if (!ok) o.detail += c.name + " fails; ";
    o.ok &= ok;
    ++n;
  }
  o.detail += std::to_string(n) + " diagrams";
  return o;
}

Outcome wu_graphs() {
  Outcome o;
  std::vector<Named> graphs = load_dir(kRoot + "/data/corpus/graphs");
  // The 4-valent graphs of the trefoil expansion with at most 3 vertices.
  int k = 0;
  for (const auto& t : expand_d(load_diagram(kRoot + "/data/corpus/trefoil.txt")))
    graphs.push_back({"trefoil_graph_" + std::to_string(++k), from_compact(t.graph)});
  for (const auto& c : corpus_links(3)) graphs.push_back({c.name + "_as_graph", as_graph(c.d)});
  int n = 0;
  for (const auto& g : graphs) {
    if (g.d.vertex_count() > 3) continue;
    Diagram u = g.d;
    u.dir.clear();
    auto q = [](const char* s) { return parse_expression(s, vars_qa()); };
    auto lhs = substitute(eval_d(u), {{"A", q("q")}, {"B", q("q^-1")}, {"a", q("a^2 * q^-1")}}, vars_qa());
    bool ok = lhs == wu_rhs(u);
    if (!ok) o.detail += g.name + " fails; ";
    o.ok &= ok;
    ++n;
  }
  o.detail += std::to_string(n) + " graphs";
  return o;
}

Outcome kv_expansions() {
  Outcome o;
  int n = 0;
  for (const auto& c : corpus_links(6)) {
    bool ok = ab_at_q(kv_sum_d(c.d)) == za_at_q(RationalFunction(d_poly(c.d)));
    if (c.d.oriented()) ok &= ab_at_q(kv_sum_r(c.d)) == za_at_q(RationalFunction(r_poly(c.d)));
    if (!ok) o.detail += c.name + " fails; ";
    o.ok &= ok;
    ++n;
  }
  o.detail += std::to_string(n) + " diagrams";
  return o;
}

Outcome random_correspondence() {
  std::vector<Named> cases;
  std::mt19937 rng(2718);
  for (int k = 0; k < 20; ++k) {
    int strands = 2 + k % 2;
    auto w = random_word(rng, strands, 1, 4);
    cases.push_back({"random_" + std::to_string(k + 1), braid_closure(strands, w)});
  }
  for (auto& c : corpus_links(6)) cases.push_back(std::move(c));
  Outcome o;
  for (const auto& c : cases) {
    auto hj = hj_expand(c.d);
    auto wf = wf_expand(c.d);
    auto r = build_correspondence(hj, wf);
    bool ok = r.pass() && r.leftovers.empty() && r.disjoint;
    for (const auto& g : r.groups) ok &= g.pass;
    if (!ok) o.detail += c.name + " fails; ";
    o.ok &= ok;
  }
  o.detail += std::to_string(cases.size()) + " diagrams";
  return o;
}

Outcome proof_identities() {
  Outcome o;
  int n = 0;
  for (int a1 = 0; a1 <= 8; ++a1)
    for (int a2 = 0; a2 <= 8; ++a2)
      for (int a3 = 0; a3 <= 8; ++a3) {
        auto r = case_identities_report(a1, a2, a3);
        o.ok &= r.ok();
        ++n;
      }
  o.detail = std::to_string(n) + " triples";
  return o;
}

Outcome axioms() {
  Outcome o;
  auto za = [](const char* s) { return parse_expression(s, vars_za()).num(); };
  int checks = 0;
  auto check = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      o.ok = false;
      o.detail += what + " fails; ";
    }
  };
  // Skein closure at every crossing of the corpus.
  for (const auto& c : corpus_links(4)) {
    CompactDiagram cd = to_compact(c.d);
    for (int v = 0; v < cd.vertex_count(); ++v) {
      CompactDiagram sw = cd;
      sw.over[v] ^= 1;
      std::vector<SiteAction> acts(cd.vertex_count());
      std::array<std::int8_t, 4> dir4 = {cd.dir[4 * v], cd.dir[4 * v + 1], cd.dir[4 * v + 2], cd.dir[4 * v + 3]};
      acts[v] = {SiteAction::Smooth, static_cast<std::int8_t>(seifert_pairing(dir4))};
      CompactDiagram l0 = resolve(cd, acts);
      int eps = compact_sign(cd, v);
      const CompactDiagram& plus = eps > 0 ? cd : sw;
      const CompactDiagram& minus = eps > 0 ? sw : cd;
      check((r_poly(plus) - r_poly(minus) - za("z") * r_poly(l0)).is_zero(), c.name + " R skein");
      int pa = a_pairing(cd.over[v]);
      acts[v].pairing = static_cast<std::int8_t>(pa);
      CompactDiagram la = resolve(cd, acts);
      acts[v].pairing = static_cast<std::int8_t>(1 - pa);
      CompactDiagram lb = resolve(cd, acts);
      check((d_poly(cd) - d_poly(sw) - za("z") * (d_poly(la) - d_poly(lb))).is_zero(), c.name + " D skein");
    }
  }
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    int strands = 2 + trial % 2;
    auto w = random_word(rng, strands, 0, 4);
    Diagram base = braid_closure(strands, w);
    // Kinks: stabilization adds a curl of either sign.
    for (int s : {1, -1}) {
      auto w2 = w;
      w2.push_back(s * strands);
      Diagram kinked = braid_closure(strands + 1, w2);
      auto factor = s > 0 ? za("a") : za("a^-1");
      check(r_poly(kinked) == factor * r_poly(base) && d_poly(kinked) == factor * d_poly(base), "kink");
    }
    // Reidemeister II and III on three strands.
    auto w3 = random_word(rng, 3, 0, 3);
    auto with = [&](std::vector<int> pre) {
      pre.insert(pre.end(), w3.begin(), w3.end());
      return braid_closure(3, pre);
    };
    Diagram plain = with({});
    for (int g : {1, -1, 2, -2}) {
      Diagram r2 = with({g, -g});
      check(r_poly(r2) == r_poly(plain) && d_poly(r2) == d_poly(plain), "Reidemeister II");
    }
    for (int s : {1, -1}) {
      Diagram l = with({s, 2 * s, s});
      Diagram r = with({2 * s, s, 2 * s});
      check(r_poly(l) == r_poly(r) && d_poly(l) == d_poly(r), "Reidemeister III");
    }
    Diagram ml = with({1, 2, -1});
    Diagram mr = with({-2, 1, 2});
    check(r_poly(ml) == r_poly(mr) && d_poly(ml) == d_poly(mr), "Reidemeister III mixed");
  }
  o.detail += std::to_string(checks) + " checks";
  return o;
}

Outcome n_specialization() {
  Outcome o;
  int n_checks = 0;
  for (const auto& c : corpus_links(6)) {
    if (!c.d.oriented()) continue;
    for (int n : {2, 3}) {
      auto q = [](const std::string& s) { return parse_expression(s, vars_q()); };
      auto ref = substitute(RationalFunction(r_poly(c.d)), {{"z", q("q - q^-1")}, {"a", q("q^" + std::to_string(n))}},
                            vars_q());
      bool ok = homflypt_n_specialization(c.d, n) == ref;
      if (!ok) o.detail += c.name + " n=" + std::to_string(n) + " fails; ";
      o.ok &= ok;
      ++n_checks;
    }
  }
  for (const char* name : {"hopf_pos", "trefoil"}) {
    std::string why;
    bool ok = trivalent_bijection(load_diagram(kRoot + "/data/corpus/" + name + ".txt"), &why);
    if (!ok) o.detail += std::string(name) + " bijection: " + why + "; ";
    o.ok &= ok;
  }
  o.detail += std::to_string(n_checks) + " specializations, bijection on hopf_pos and trefoil";
  return o;
}

Outcome determinism() {
  Outcome o;
  auto run = [](std::vector<std::string> args) {
    std::istringstream in;
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return std::to_string(code) + "\n" + out.str();
  };
  std::vector<std::vector<std::string>> cmds = {
      {"verify-correspondence", kRoot + "/data/corpus/trefoil.txt"},
      {"verify-correspondence", kRoot + "/data/corpus/figure8.txt"},
      {"report-table", kRoot + "/data/corpus/hopf_pos.txt"},
      {"verify-jaeger", kRoot + "/data/corpus/borromean.txt"},
      {"verify-wu", kRoot + "/data/corpus/graphs/hopf_graph_1.txt"},
      {"specialize-n", "--n", "3", kRoot + "/data/corpus/figure8.txt"},
      {"expand", "--model", "wf", kRoot + "/data/corpus/trefoil.txt"}};
  for (auto cmd : cmds) {
    auto one = cmd, eight = cmd;
    one.insert(one.end(), {"--jobs", "1"});
    eight.insert(eight.end(), {"--jobs", "8"});
    bool ok = run(one) == run(eight);
    if (!ok) o.detail += cmd[0] + " differs; ";
    o.ok &= ok;
  }
  o.detail += std::to_string(cmds.size()) + " report pairs";
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> all = {
      {1, "Hopf HJ census", 1, hj_census},
      {2, "Hopf WF census", 1, wf_census},
      {3, "Hopf correspondence table", 5, table_reproduction},
      {4, "Jaeger formula on the corpus", 60, jaeger_corpus},
      {5, "Wu formula on small graphs", 60, wu_graphs},
      {6, "KV expansions at A=q, B=q^-1", 0, kv_expansions},
      {7, "correspondence on random diagrams and the corpus", 300, random_correspondence},
      {8, "proof identities", 0, proof_identities},
      {9, "skein axioms, kinks, Reidemeister moves", 0, axioms},
      {10, "n-specialization and trivalent bijection", 0, n_specialization},
      {11, "determinism across job counts", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.budget_s <= 0 || s < c.budget_s;
    if (!in_time) o.detail += "; over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
    bool ok = o.ok && in_time;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << std::fixed
              << std::setprecision(2) << s << " s] " << o.detail << std::endl;
  }
  std::cout << (failed ? "FAIL" : "PASS") << " acceptance: " << all.size() - failed << "/" << all.size()
            << " criteria" << std::endl;
  return failed ? 1 : 0;
}
