#include <algorithm>
#include <sstream>

#include "kv_rules_text.hpp"
#include "linkpoly/kv.hpp"

namespace linkpoly {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw DiagramError("rules line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::logic_error&) {
  }
  fail(line, "bad integer '" + tok + "'");
}

// Parses "(1 2)(3 4)" starting at `pos`; stops at the first token that is not a cycle.
std::vector<std::vector<int>> cycles(const std::string& s, std::size_t& pos, int line) {
  std::vector<std::vector<int>> out;
  while (true) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos >= s.size() || s[pos] != '(') return out;
    auto close = s.find(')', pos);
    if (close == std::string::npos) fail(line, "unterminated cycle");
    std::istringstream in(s.substr(pos + 1, close - pos - 1));
    std::vector<int> cyc;
    std::string tok;
    while (in >> tok) cyc.push_back(to_int(tok, line) - 1);
    out.push_back(std::move(cyc));
    pos = close + 1;
  }
}

void finish_rule(Rule& r, int line) {
  const int n = static_cast<int>(r.edge.size());
  std::vector<char> bnd(n, 0);
  for (int b : r.boundary) {
    if (b < 0 || b >= n) fail(line, "boundary dart out of range");
    if (r.edge[b] != -1) fail(line, "boundary dart " + std::to_string(b + 1) + " is paired");
    bnd[b] = 1;
  }
  for (int x = 0; x < n; ++x)
    if (r.edge[x] == -1 && !bnd[x]) fail(line, "dart " + std::to_string(x + 1) + " is neither paired nor boundary");
  if (r.rewrites.empty()) fail(line, "rule '" + r.name + "' has no rewrite");
  for (const auto& t : r.rewrites) {
    std::vector<int> used(n, 0);
    for (auto [x, y] : t.joins) {
      if (x < 0 || x >= n || y < 0 || y >= n || !bnd[x] || !bnd[y]) fail(line, "join uses a non-boundary dart");
      ++used[x], ++used[y];
      if (!r.dir.empty() && r.dir[x] + r.dir[y] != 0) fail(line, "join breaks the orientation");
    }
    if (t.vertex)
      for (int x : *t.vertex) {
        if (x < 0 || x >= n || !bnd[x]) fail(line, "vertex uses a non-boundary dart");
        ++used[x];
      }
    for (int b : r.boundary)
      if (used[b] != 1) fail(line, "rewrite must use each boundary dart exactly once");
  }
}

}  // namespace

std::vector<Rule> parse_rules(std::istream& in) {
  const auto constants = KVCoefficients::get().named();
  std::vector<Rule> rules;
  std::optional<Rule> cur;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.rfind("rule ", 0) == 0) {
      if (cur) fail(line, "previous rule not closed with 'end'");
      cur.emplace();
      cur->name = trim(s.substr(5));
      continue;
    }
    if (!cur) fail(line, "expected 'rule <name>'");
    if (s == "end") {
      finish_rule(*cur, line);
      rules.push_back(std::move(*cur));
      cur.reset();
      continue;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(line, "expected '<key>: ...'");
    std::string key = trim(s.substr(0, colon));
    std::string body = trim(s.substr(colon + 1));
    Rule& r = *cur;
    if (key == "calculus") {
      if (body == "R") r.calculus = Calculus::R;
      else if (body == "D") r.calculus = Calculus::D;
      else fail(line, "calculus is R or D");
    } else if (key == "vrot") {
      std::size_t pos = 0;
      auto cyc = cycles(body, pos, line);
      if (pos != body.size()) fail(line, "trailing text after vrot");
      int n = 0;
      for (const auto& c : cyc) {
        if (c.size() != 4) fail(line, "pattern vertices are 4-valent");
        r.vertices.push_back({c[0], c[1], c[2], c[3]});
        n += 4;
      }
      std::vector<int> all;
      for (const auto& v : r.vertices) all.insert(all.end(), v.begin(), v.end());
      std::sort(all.begin(), all.end());
      for (int i = 0; i < n; ++i)
        if (all[i] != i) fail(line, "pattern darts must be 1..4k, each once");
      r.edge.assign(n, -1);
    } else if (key == "einv") {
      std::size_t pos = 0;
      for (const auto& c : cycles(body, pos, line)) {
        if (c.size() != 2) fail(line, "einv cycles are pairs");
        for (int x : c)
          if (x < 0 || x >= static_cast<int>(r.edge.size()) || r.edge[x] != -1) fail(line, "bad einv dart");
        r.edge[c[0]] = c[1];
        r.edge[c[1]] = c[0];
      }
    } else if (key == "orient") {
      r.dir.assign(r.edge.size(), 0);
      std::istringstream toks(body);
      std::string tok;
      while (toks >> tok) {
        if (tok.size() < 2) fail(line, "orient entries look like 3+");
        char sign = tok.back();
        int x = to_int(tok.substr(0, tok.size() - 1), line) - 1;
        if (x < 0 || x >= static_cast<int>(r.dir.size())) fail(line, "orient dart out of range");
        if (sign != '+' && sign != '-') fail(line, "orient mark is + or -");
        r.dir[x] = sign == '+' ? 1 : -1;
      }
      for (auto d : r.dir)
        if (d == 0) fail(line, "orient must mark every pattern dart");
    } else if (key == "boundary") {
      std::istringstream toks(body);
      std::string tok;
      while (toks >> tok) r.boundary.push_back(to_int(tok, line) - 1);
    } else if (key == "rewrite") {
      auto arrow = body.find("=>");
      if (arrow == std::string::npos) fail(line, "rewrite needs '=>'");
      RewriteTerm t;
      try {
        t.coefficient = parse_expression(trim(body.substr(0, arrow)), vars_ABa(), constants);
      } catch (const AlgebraError& e) {
        fail(line, e.what());
      }
      std::string rest = trim(body.substr(arrow + 2));
      std::size_t pos = 0;
      while (pos < rest.size()) {
        while (pos < rest.size() && rest[pos] == ' ') ++pos;
        auto word_end = rest.find_first_of(" (", pos);
        std::string word = rest.substr(pos, word_end == std::string::npos ? std::string::npos : word_end - pos);
        pos = word_end == std::string::npos ? rest.size() : word_end;
        if (word == "match") {
          for (const auto& c : cycles(rest, pos, line)) {
            if (c.size() != 2) fail(line, "match takes pairs");
            t.joins.emplace_back(c[0], c[1]);
          }
        } else if (word == "vertex") {
          auto c = cycles(rest, pos, line);
          if (c.size() != 1 || c[0].size() != 4 || t.vertex) fail(line, "vertex takes one 4-cycle");
          t.vertex = std::array<int, 4>{c[0][0], c[0][1], c[0][2], c[0][3]};
        } else if (word == "loops") {
          std::istringstream k(rest.substr(pos));
          std::string tok;
          if (!(k >> tok)) fail(line, "loops needs a count");
          t.loops = to_int(tok, line);
          pos = rest.find(tok, pos) + tok.size();
        } else if (!word.empty()) {
          fail(line, "unknown replacement '" + word + "'");
        }
      }
      r.rewrites.push_back(std::move(t));
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  if (cur) fail(line, "rule '" + cur->name + "' not closed with 'end'");
  return rules;
}

std::vector<Rule> parse_rules_string(const std::string& text) {
  std::istringstream in(text);
  return parse_rules(in);
}

const std::string& default_rule_text() {
  static const std::string text = detail::kKvRulesText;
  return text;
}

const std::vector<Rule>& default_rules() {
  static const std::vector<Rule> rules = parse_rules_string(default_rule_text());
  return rules;
}

// ------------------------------------------------------------------ matching

namespace {

std::optional<std::vector<int>> try_anchor(const CompactDiagram& g, const Rule& r, int v, int off) {
  const int pv_count = static_cast<int>(r.vertices.size());
  const int n = static_cast<int>(r.edge.size());
  std::vector<int> gv(pv_count, -1), goff(pv_count, 0);
  std::vector<int> pvertex(n), ppos(n);
  for (int i = 0; i < pv_count; ++i)
    for (int k = 0; k < 4; ++k) pvertex[r.vertices[i][k]] = i, ppos[r.vertices[i][k]] = k;
  gv[0] = v;
  goff[0] = off;
  std::vector<int> queue = {0};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int pv = queue[h];
    for (int k = 0; k < 4; ++k) {
      int pd = r.vertices[pv][k];
      int pe = r.edge[pd];
      if (pe < 0) continue;
      int gd = 4 * gv[pv] + ((k + goff[pv]) & 3);
      int ge = g.edge[gd];
      int pv2 = pvertex[pe], k2 = ppos[pe];
      if (gv[pv2] == -1) {
        int cand = ge >> 2;
        for (int x : gv)
          if (x == cand) return std::nullopt;
        gv[pv2] = cand;
        goff[pv2] = ((ge & 3) - k2) & 3;
        queue.push_back(pv2);
      } else if (ge != 4 * gv[pv2] + ((k2 + goff[pv2]) & 3)) {
        return std::nullopt;
      }
    }
  }
  if (static_cast<int>(queue.size()) != pv_count) return std::nullopt;
  std::vector<int> image(n);
  for (int pd = 0; pd < n; ++pd) image[pd] = 4 * gv[pvertex[pd]] + ((ppos[pd] + goff[pvertex[pd]]) & 3);
  for (int i = 0; i < pv_count; ++i)
    if (g.over[gv[i]] != -1) return std::nullopt;
  if (!r.dir.empty()) {
    if (!g.oriented()) return std::nullopt;
    for (int pd = 0; pd < n; ++pd)
      if (g.dir[image[pd]] != r.dir[pd]) return std::nullopt;
  }
  return image;
}

}  // namespace

std::optional<RuleMatch> find_match(const CompactDiagram& g, const std::vector<Rule>& rules,
                                    Calculus calc, SiteOrder order) {
  const int nv = g.vertex_count();
  for (int step = 0; step < nv; ++step) {
    int v = order == SiteOrder::SmallestFirst ? step : nv - 1 - step;
    for (const auto& r : rules) {
      if (r.calculus != calc) continue;
      for (int off = 0; off < 4; ++off)
        if (auto img = try_anchor(g, r, v, off)) return RuleMatch{&r, std::move(*img)};
    }
  }
  return std::nullopt;
}

std::vector<std::pair<RationalFunction, CompactDiagram>> apply_match(const CompactDiagram& g,
                                                                     const RuleMatch& m) {
  const Rule& r = *m.rule;
  const int nv = g.vertex_count();
  std::vector<char> matched(nv, 0);
  for (int x : m.image) matched[x >> 2] = 1;
  std::vector<std::array<int, 4>> kept;
  std::vector<std::int8_t> kept_over;
  for (int v = 0; v < nv; ++v)
    if (!matched[v]) {
      kept.push_back({4 * v, 4 * v + 1, 4 * v + 2, 4 * v + 3});
      kept_over.push_back(g.over[v]);
    }
  std::vector<std::pair<RationalFunction, CompactDiagram>> out;
  for (const auto& t : r.rewrites) {
    std::vector<int> through(g.dart_count(), -1);
    for (int pd = 0; pd < static_cast<int>(r.edge.size()); ++pd)
      if (r.edge[pd] >= 0) through[m.image[pd]] = -2;
    for (auto [x, y] : t.joins) {
      through[m.image[x]] = m.image[y];
      through[m.image[y]] = m.image[x];
    }
    auto verts = kept;
    auto over = kept_over;
    if (t.vertex) {
      const auto& pv = *t.vertex;
      verts.push_back({m.image[pv[0]], m.image[pv[1]], m.image[pv[2]], m.image[pv[3]]});
      over.push_back(-1);
    }
    CompactDiagram next = rebuild(g, verts, over, through);
    next.loops += t.loops;
    out.emplace_back(t.coefficient, std::move(next));
  }
  return out;
}

}  // namespace linkpoly
