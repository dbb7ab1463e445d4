#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "linkpoly/diagram.hpp"

namespace linkpoly {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw DiagramError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) fail(line, "bad integer '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "bad integer '" + tok + "'");
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// "(1 2 3)(4 5)" -> cycles, 1-based darts converted to 0-based.
std::vector<std::vector<int>> parse_cycles(const std::string& body, int line, int n) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  while (i < body.size()) {
    char ch = body[i];
    if (ch == ' ' || ch == '\t') {
      ++i;
      continue;
    }
    if (ch != '(') fail(line, "expected '(' in cycle list");
    auto close = body.find(')', i);
    if (close == std::string::npos) fail(line, "unterminated cycle");
    std::string inner = body.substr(i + 1, close - i - 1);
    std::replace(inner.begin(), inner.end(), ',', ' ');
    std::vector<int> cyc;
    for (const auto& tok : split_ws(inner)) {
      int d = parse_int(tok, line);
      if (d < 1 || d > n) fail(line, "dart " + tok + " out of range");
      cyc.push_back(d - 1);
    }
    if (cyc.empty()) fail(line, "empty cycle");
    cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  return cycles;
}

int parse_sign(std::string tok, int line) {
  if (tok == "+") return 1;
  if (tok == "-" || tok == "\xE2\x88\x92") return -1;
  fail(line, "expected + or -, got '" + tok + "'");
}

}  // namespace

Diagram parse_diagram(std::istream& in) {
  Diagram d;
  std::string raw;
  int line = 0;
  int n = -1;
  bool have_vrot = false, have_einv = false, have_outer = false;
  std::vector<std::vector<int>> vrot;
  std::vector<std::pair<int, int>> overs;  // (cycle index, dart), with line numbers below
  std::vector<int> over_lines;
  int last_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    last_line = line;
    if (n < 0) {
      auto toks = split_ws(s);
      if (toks.empty() || toks[0] != "pmap") fail(line, "expected 'pmap <darts> <free loops>' header");
      if (toks.size() != 3) fail(line, "pmap header takes two integers");
      n = parse_int(toks[1], line);
      d.map.free_loops = parse_int(toks[2], line);
      if (n < 0 || d.map.free_loops < 0) fail(line, "negative count in header");
      d.map.next.assign(n, -1);
      d.map.edge.assign(n, -1);
      continue;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(line, "expected '<key>: ...'");
    std::string key = trim(s.substr(0, colon));
    std::string body = trim(s.substr(colon + 1));
    if (key == "vrot") {
      if (have_vrot) fail(line, "duplicate vrot");
      have_vrot = true;
      vrot = parse_cycles(body, line, n);
      std::vector<char> seen(n, 0);
      for (const auto& cyc : vrot)
        for (std::size_t k = 0; k < cyc.size(); ++k) {
          if (seen[cyc[k]]) fail(line, "dart " + std::to_string(cyc[k] + 1) + " repeated");
          seen[cyc[k]] = 1;
          d.map.next[cyc[k]] = cyc[(k + 1) % cyc.size()];
        }
      for (int x = 0; x < n; ++x)
        if (!seen[x]) fail(line, "dart " + std::to_string(x + 1) + " missing from vrot");
    } else if (key == "einv") {
      if (have_einv) fail(line, "duplicate einv");
      have_einv = true;
      for (const auto& cyc : parse_cycles(body, line, n)) {
        if (cyc.size() != 2) fail(line, "einv cycles must be pairs");
        if (cyc[0] == cyc[1]) fail(line, "einv pair has a fixed point");
        for (int x : cyc)
          if (d.map.edge[x] != -1) fail(line, "dart " + std::to_string(x + 1) + " paired twice");
        d.map.edge[cyc[0]] = cyc[1];
        d.map.edge[cyc[1]] = cyc[0];
      }
      for (int x = 0; x < n; ++x)
        if (d.map.edge[x] == -1) fail(line, "dart " + std::to_string(x + 1) + " missing from einv");
    } else if (key == "outer") {
      if (have_outer) fail(line, "duplicate outer");
      have_outer = true;
      for (const auto& tok : split_ws(body)) {
        int x = parse_int(tok, line);
        if (x < 1 || x > n) fail(line, "outer dart out of range");
        d.map.outer.push_back(x - 1);
      }
    } else if (key == "over") {
      for (const auto& tok : split_ws(body)) {
        auto c = tok.find(':');
        if (c == std::string::npos) fail(line, "over entries look like <vertex>:<dart>");
        int v = parse_int(tok.substr(0, c), line);
        int x = parse_int(tok.substr(c + 1), line);
        if (x < 1 || x > n) fail(line, "over dart out of range");
        overs.emplace_back(v - 1, x - 1);
        over_lines.push_back(line);
      }
    } else if (key == "orient") {
      if (!d.dir.empty()) fail(line, "duplicate orient");
      d.dir.assign(n, 0);
      for (const auto& tok : split_ws(body)) {
        std::size_t cut = tok.size();
        while (cut > 0 && !std::isdigit(static_cast<unsigned char>(tok[cut - 1]))) --cut;
        if (cut == 0 || cut == tok.size()) fail(line, "orient entries look like <dart>+ or <dart>-");
        int x = parse_int(tok.substr(0, cut), line);
        if (x < 1 || x > n) fail(line, "orient dart out of range");
        if (d.dir[x - 1] != 0) fail(line, "dart " + std::to_string(x) + " oriented twice");
        d.dir[x - 1] = static_cast<std::int8_t>(parse_sign(tok.substr(cut), line));
      }
      for (int x = 0; x < n; ++x)
        if (d.dir[x] == 0) fail(line, "dart " + std::to_string(x + 1) + " has no orientation");
    } else if (key == "ekind") {
      if (!have_einv) fail(line, "ekind must follow einv");
      if (d.thick.empty()) d.thick.assign(n, EdgeKind::Common);
      for (const auto& tok : split_ws(body)) {
        auto c = tok.find(':');
        if (c == std::string::npos) fail(line, "ekind entries look like <dart>:thick");
        int x = parse_int(tok.substr(0, c), line);
        if (x < 1 || x > n) fail(line, "ekind dart out of range");
        std::string kind = tok.substr(c + 1);
        EdgeKind k;
        if (kind == "thick") k = EdgeKind::Thick;
        else if (kind == "common") k = EdgeKind::Common;
        else fail(line, "unknown edge kind '" + kind + "'");
        d.thick[x - 1] = k;
        d.thick[d.map.edge[x - 1]] = k;
      }
    } else if (key == "louts") {
      for (const auto& tok : split_ws(body)) d.loop_signs.push_back(parse_sign(tok, line));
      if (static_cast<int>(d.loop_signs.size()) != d.map.free_loops)
        fail(line, "louts needs one sign per free loop");
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  if (n < 0) fail(line + 1, "missing pmap header");
  if (n > 0 && !have_vrot) fail(last_line, "missing vrot");
  if (n > 0 && !have_einv) fail(last_line, "missing einv");
  if (n > 0 && !have_outer) fail(last_line, "missing outer");

  MapTables t(d.map);
  if (!overs.empty()) {
    d.over.assign(t.vertices.size(), -1);
    for (std::size_t i = 0; i < overs.size(); ++i) {
      auto [ci, x] = overs[i];
      if (ci < 0 || ci >= static_cast<int>(vrot.size())) fail(over_lines[i], "over vertex out of range");
      int v = t.vertex_of[vrot[ci][0]];
      if (t.vertex_of[x] != v) fail(over_lines[i], "over dart is not at that vertex");
      d.over[v] = x;
    }
  } else {
    d.over.assign(t.vertices.size(), -1);
  }
  if (d.oriented() && static_cast<int>(d.loop_signs.size()) != d.map.free_loops) {
    if (d.loop_signs.empty()) d.loop_signs.assign(d.map.free_loops, 1);
  }
  ValidationReport r = validate(d);
  if (!r.ok()) fail(last_line, r.issues.front());
  return d;
}

Diagram parse_diagram_string(const std::string& text) {
  std::istringstream in(text);
  return parse_diagram(in);
}

Diagram load_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DiagramError("cannot open " + path);
  return parse_diagram(in);
}

std::string format_diagram(const Diagram& d) {
  std::ostringstream out;
  const int n = d.map.dart_count();
  out << "pmap " << n << ' ' << d.map.free_loops << '\n';
  MapTables t(d.map);
  if (n > 0) {
    out << "vrot:";
    for (const auto& cyc : t.vertices) {
      out << " (";
      for (std::size_t k = 0; k < cyc.size(); ++k) out << (k ? " " : "") << cyc[k] + 1;
      out << ')';
    }
    out << "\neinv:";
    for (int x = 0; x < n; ++x)
      if (x < d.map.edge[x]) out << " (" << x + 1 << ' ' << d.map.edge[x] + 1 << ')';
    out << "\nouter:";
    for (int o : d.map.outer) out << ' ' << o + 1;
    out << '\n';
  }
  bool any_over = false;
  for (int o : d.over) any_over |= o >= 0;
  if (any_over) {
    out << "over:";
    for (std::size_t v = 0; v < d.over.size(); ++v)
      if (d.over[v] >= 0) out << ' ' << v + 1 << ':' << d.over[v] + 1;
    out << '\n';
  }
  if (d.oriented() && n > 0) {
    out << "orient:";
    for (int x = 0; x < n; ++x) out << ' ' << x + 1 << (d.dir[x] > 0 ? '+' : '-');
    out << '\n';
  }
  if (d.trivalent()) {
    out << "ekind:";
    for (int x = 0; x < n; ++x)
      if (x < d.map.edge[x] && d.thick[x] == EdgeKind::Thick) out << ' ' << x + 1 << ":thick";
    out << '\n';
  }
  if (d.oriented() && d.map.free_loops > 0) {
    out << "louts:";
    for (int s : d.loop_signs) out << ' ' << (s > 0 ? '+' : '-');
    out << '\n';
  }
  return out.str();
}

}  // namespace linkpoly
