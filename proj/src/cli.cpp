#include "linkpoly/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "linkpoly/correspondence.hpp"
#include "linkpoly/kv.hpp"
#include "linkpoly/orientations.hpp"
#include "linkpoly/skein.hpp"

namespace linkpoly {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string input;
  std::string model;
  std::string vars;
  std::optional<int> n;
  int jobs = 1;
  std::string out;
};

const std::set<std::string> kCommands = {"compute",   "expand",       "verify-jaeger", "verify-wu",
                                         "verify-correspondence", "specialize-n", "report-table"};
const std::set<std::string> kModels = {"skein", "kv", "jaeger", "wu", "hj", "wf", "simplified-hj"};

std::set<std::string> models_for(const std::string& cmd) {
  if (cmd == "compute") return kModels;
  if (cmd == "expand") return {"kv", "hj", "wf", "jaeger", "wu"};
  if (cmd == "verify-jaeger") return {"jaeger"};
  if (cmd == "verify-wu") return {"wu"};
  if (cmd == "specialize-n") return {"kv"};
  return {"hj", "wf"};
}

std::string default_model(const std::string& cmd) {
  if (cmd == "compute") return "skein";
  if (cmd == "expand") return "kv";
  return *models_for(cmd).begin();
}

bool is_link(const Diagram& d) {
  if (d.trivalent()) return false;
  for (int o : d.over)
    if (o < 0) return false;
  return true;
}

Diagram require_link_input(const Diagram& d, const std::string& what) {
  if (!is_link(d)) throw InputError(what + " needs a link diagram (an over strand at every crossing)");
  return d;
}

Diagram graph_input(const Diagram& d) {
  if (d.trivalent()) return contract_thick_edges(d);
  return as_graph(d);
}

const VariableSet& parse_vars(const std::string& text, const std::string& native) {
  std::string s;
  for (char c : text.empty() ? native : text)
    if (c != ' ') s += c;
  if (s == "z,a") return vars_za();
  if (s == "A,B,a") return vars_ABa();
  if (s == "q,a") return vars_qa();
  throw InputError("--vars must be one of z,a | A,B,a | q,a");
}

// Re-expresses a value over another variable set: z = A - B, A = q, B = q^-1.
RationalFunction convert(const RationalFunction& f, const VariableSet& to) {
  const auto& from = f.vars();
  if (from == to) return f;
  auto p = [&](const char* s) { return parse_expression(s, to); };
  if (from == vars_za() && to == vars_ABa()) return substitute(f, {{"z", p("A - B")}, {"a", p("a")}}, to);
  if (from == vars_za() && to == vars_qa()) return substitute(f, {{"z", p("q - q^-1")}, {"a", p("a")}}, to);
  if (from == vars_ABa() && to == vars_qa())
    return substitute(f, {{"A", p("q")}, {"B", p("q^-1")}, {"a", p("a")}}, to);
  throw InputError("values of this model cannot be written in the requested variables");
}

std::string choice_list(const std::vector<std::int8_t>& c, const char* letters) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += std::string(i ? "," : "") + letters[c[i]];
  return s + "]";
}

std::string smoothing_list(const std::vector<Smoothing>& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += std::string(i ? "," : "") + smoothing_letter(c[i]);
  return s + "]";
}

std::string config_list(const std::vector<Configuration>& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += std::string(i ? "," : "") + configuration_name(c[i]);
  return s + "]";
}

std::string class_list(const std::vector<SiteClass>& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += std::string(i ? "," : "") + site_class_name(c[i]);
  return s + "]";
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// ----------------------------------------------------------------- commands

int cmd_compute(const Config& c, const Diagram& d, std::ostream& out) {
  const std::string& m = c.model;
  if (m == "skein" || m == "kv") {
    const VariableSet& vars = parse_vars(c.vars, m == "skein" ? "z,a" : "A,B,a");
    if (m == "kv" && vars == vars_za()) throw InputError("the kv model works over A,B,a or q,a");
    std::optional<RationalFunction> r, dd;
    if (m == "skein") {
      require_link_input(d, "the skein model");
      if (d.oriented()) r = RationalFunction(r_poly(d));
      dd = RationalFunction(d_poly(d));
    } else if (is_link(d)) {
      if (d.oriented()) r = kv_sum_r(d);
      dd = kv_sum_d(d);
    } else {
      Diagram g = graph_input(d);
      if (g.oriented()) r = eval_r(g);
      dd = eval_d(g);
    }
    if (r) out << "R: " << convert(*r, vars).str() << "\n";
    out << "D: " << convert(*dd, vars).str() << "\n";
    return kExitOk;
  }
  if (parse_vars(c.vars, "q,a") != vars_qa()) throw InputError("model " + m + " works over q,a");
  RationalFunction v;
  if (m == "jaeger") v = jaeger_rhs(require_link_input(d, "Jaeger's formula"), false, c.jobs);
  else if (m == "wu") v = wu_rhs(graph_input(d), c.jobs);
  else if (m == "hj") v = hj_total(hj_expand(require_link_input(d, "the HJ model"), c.jobs), c.jobs);
  else if (m == "wf") v = wf_total(wf_expand(require_link_input(d, "the WF model"), c.jobs), c.jobs);
  else v = simplified_hj(require_link_input(d, "the simplified HJ model"), c.jobs);
  out << m << ": " << v.str() << "\n";
  return kExitOk;
}

int cmd_expand(const Config& c, const Diagram& d, std::ostream& out) {
  const std::string& m = c.model;
  if (m == "kv") {
    if (is_link(d) && d.oriented()) {
      auto r = expand_r(d);
      out << "# R expansion: " << r.size() << " graphs; choice V vertex, P/N smoothed positive/negative\n";
      for (std::size_t k = 0; k < r.size(); ++k)
        out << "r" << k + 1 << " choice=" << choice_list(r[k].choice, "VPN") << " i=" << r[k].i << " j=" << r[k].j
            << " vertices=" << r[k].graph.vertex_count() << " loops=" << r[k].graph.loops
            << " value=" << eval_r(r[k].graph).str() << "\n";
    }
    auto dd = expand_d(require_link_input(d, "the kv expansion"));
    out << "# D expansion: " << dd.size() << " graphs; choice V vertex, A/B smoothing\n";
    for (std::size_t k = 0; k < dd.size(); ++k)
      out << "d" << k + 1 << " choice=" << choice_list(dd[k].choice, "VAB") << " i=" << dd[k].i << " j=" << dd[k].j
          << " vertices=" << dd[k].graph.vertex_count() << " loops=" << dd[k].graph.loops
          << " value=" << eval_d(dd[k].graph).str() << "\n";
    return kExitOk;
  }
  if (m == "hj") {
    auto hj = hj_expand(require_link_input(d, "the HJ model"), c.jobs);
    out << "# HJ model: " << hj.size() << " states\n";
    for (const auto& h : hj)
      out << "s" << h.id << " o=" << h.orientation + 1 << " config=" << config_list(h.config)
          << " w=" << format_weights(h.weights) << " rot=" << h.rot << " c=" << h.c_weight.str() << "\n";
    return kExitOk;
  }
  if (m == "wf") {
    auto wf = wf_expand(require_link_input(d, "the WF model"), c.jobs);
    out << "# WF model: " << wf.size() << " terms from " << wf_graph_count(wf) << " graphs\n";
    for (const auto& w : wf)
      out << w.id << " G=" << w.graph + 1 << " f=" << choice_list(w.f_choice, "VAB") << " o=" << w.orientation + 1
          << " wu=" << smoothing_list(w.wu_choice) << " config=" << config_list(w.config)
          << " w=" << format_weights(w.weights) << " rot=" << w.rot << " d=" << w.d_weight.str() << "\n";
    return kExitOk;
  }
  auto terms = m == "jaeger" ? jaeger_terms(require_link_input(d, "Jaeger's formula"), false, c.jobs)
                             : wu_terms(graph_input(d), c.jobs);
  out << "# " << m << " terms: " << terms.size() << "\n";
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    out << "t" << k + 1 << " o=" << t.orientation + 1 << " classes=" << class_list(t.site_class)
        << " r=" << smoothing_list(t.choice) << " weight=" << t.weight.str() << " rot=" << t.rot
        << " value=" << t.value.str() << "\n";
  }
  return kExitOk;
}

int cmd_verify_jaeger(const Config& c, const Diagram& d, std::ostream& out) {
  Diagram l = require_link_input(d, "verify-jaeger");
  auto lhs = jaeger_lhs(l);
  auto rhs = jaeger_rhs(l, false, c.jobs);
  auto rhs_nz = jaeger_rhs(l, true, c.jobs);
  bool ok = lhs == rhs && lhs == rhs_nz;
  out << "lhs: " << lhs.str() << "\n"
      << "rhs: " << rhs.str() << "\n"
      << "rhs-without-top-inward: " << rhs_nz.str() << "\n"
      << "orientations: " << enumerate_balanced(l).size() << "\n"
      << "verdict: " << verdict(ok) << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_verify_wu(const Config& c, const Diagram& d, std::ostream& out) {
  Diagram g = graph_input(d);
  auto lhs = wu_lhs(g);
  auto rhs = wu_rhs(g, c.jobs);
  bool ok = lhs == rhs;
  out << "lhs: " << lhs.str() << "\n"
      << "rhs: " << rhs.str() << "\n"
      << "orientations: " << enumerate_balanced(g).size() << "\n"
      << "verdict: " << verdict(ok) << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_verify_correspondence(const Config& c, const Diagram& d, std::ostream& out) {
  Diagram l = require_link_input(d, "verify-correspondence");
  auto hj = hj_expand(l, c.jobs);
  auto wf = wf_expand(l, c.jobs);
  auto report = build_correspondence(hj, wf);
  auto ref = jaeger_lhs(l);
  bool hj_ok = hj_total(hj, c.jobs) == ref;
  bool wf_ok = wf_total(wf, c.jobs) == ref;
  out << format_report(report, hj, wf);
  out << "totals: hj=" << verdict(hj_ok) << " wf=" << verdict(wf_ok) << "\n";
  return report.pass() && hj_ok && wf_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_report_table(const Config& c, const Diagram& d, std::ostream& out) {
  Diagram l = require_link_input(d, "report-table");
  auto hj = hj_expand(l, c.jobs);
  auto wf = wf_expand(l, c.jobs);
  auto report = build_correspondence(hj, wf);
  out << "# " << hj.size() << " states, " << wf.size() << " terms; term ids in enumeration order\n";
  out << format_table(report_rows(report, hj, wf));
  return report.pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_specialize(const Config& c, const Diagram& d, std::ostream& out) {
  if (!c.n) throw InputError("specialize-n needs --n");
  if (*c.n < 2) throw InputError("--n must be at least 2");
  Diagram l = require_link_input(d, "specialize-n");
  if (!l.oriented()) throw InputError("specialize-n needs an oriented diagram");
  auto value = homflypt_n_specialization(l, *c.n, c.jobs);
  auto ref = homflypt_n_reference(l, *c.n);
  std::string why;
  bool bij = trivalent_bijection(l, &why);
  auto states = classic_states(l);
  bool ok = value == ref && bij;
  out << "n: " << *c.n << "\n"
      << "value: " << value.str() << "\n"
      << "reference: " << ref.str() << "\n"
      << "writhe: " << writhe(l) << "\n"
      << "classic-graphs: " << states.size() << "\n"
      << "bijection: " << verdict(bij) << (bij ? "" : " (" + why + ")") << "\n"
      << "verdict: " << verdict(ok) << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

Diagram read_input(const std::string& path, std::istream& in) {
  if (path == "-") return parse_diagram(in);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  return parse_diagram(f);
}

}  // namespace

int run_cli(const std::vector<std::string>& raw, std::istream& in, std::ostream& out, std::ostream& err) {
  // A trailing "--" names standard input rather than ending the options.
  std::vector<std::string> args = raw;
  if (!args.empty() && args.back() == "--") args.back() = "-";

  Config c;
  CLI::App app{"Link polynomial state models and their verification", "linkpoly"};
  app.add_option("command", c.command, "compute | expand | verify-jaeger | verify-wu | "
                                       "verify-correspondence | specialize-n | report-table")
      ->required();
  app.add_option("input", c.input, "diagram file, or -- for standard input")->required();
  app.add_option("--model", c.model, "skein | kv | jaeger | wu | hj | wf | simplified-hj");
  app.add_option("--vars", c.vars, "output variables: z,a | A,B,a | q,a");
  app.add_option("--n", c.n, "colour count for specialize-n");
  app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "write the report here instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  std::ostringstream report;
  int status = kExitOk;
  try {
    if (!kCommands.count(c.command)) throw InputError("unknown command " + c.command);
    if (c.model.empty()) c.model = default_model(c.command);
    if (!kModels.count(c.model)) throw InputError("unknown model " + c.model);
    if (!models_for(c.command).count(c.model))
      throw InputError("model " + c.model + " is not available for " + c.command);
    if (c.n && c.command != "specialize-n") throw InputError("--n only applies to specialize-n");
    if (!c.vars.empty() && c.command != "compute") throw InputError("--vars only applies to compute");

    Diagram d = read_input(c.input, in);
    if (c.command == "compute") status = cmd_compute(c, d, report);
    else if (c.command == "expand") status = cmd_expand(c, d, report);
    else if (c.command == "verify-jaeger") status = cmd_verify_jaeger(c, d, report);
    else if (c.command == "verify-wu") status = cmd_verify_wu(c, d, report);
    else if (c.command == "verify-correspondence") status = cmd_verify_correspondence(c, d, report);
    else if (c.command == "specialize-n") status = cmd_specialize(c, d, report);
    else status = cmd_report_table(c, d, report);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DiagramError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  if (c.out.empty()) {
    out << report.str();
  } else {
    std::ofstream f(c.out);
    if (!f) {
      err << "error: cannot write " << c.out << "\n";
      return kExitInputError;
    }
    f << report.str();
  }
  return status;
}

}  // namespace linkpoly
