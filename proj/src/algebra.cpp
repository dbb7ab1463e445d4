#include "linkpoly/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace linkpoly {

// ---------------------------------------------------------------- VariableSet

VariableSet::VariableSet(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw AlgebraError("duplicate variable name '" + names[i] + "'");
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

const std::vector<std::string>& VariableSet::names() const {
  static const std::vector<std::string> empty;
  return names_ ? *names_ : empty;
}

std::optional<std::size_t> VariableSet::index_of(std::string_view name) const {
  const auto& n = names();
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] == name) return i;
  return std::nullopt;
}

bool VariableSet::operator==(const VariableSet& other) const {
  if (names_ == other.names_) return true;
  return names() == other.names();
}

const VariableSet& vars_za() {
  static const VariableSet v({"z", "a"});
  return v;
}
const VariableSet& vars_qa() {
  static const VariableSet v({"q", "a"});
  return v;
}
const VariableSet& vars_ABa() {
  static const VariableSet v({"A", "B", "a"});
  return v;
}
const VariableSet& vars_q() {
  static const VariableSet v({"q"});
  return v;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(const VariableSet& vars, const mpz_class& c) {
  LaurentPoly p(vars);
  p.add_term(Exponents(vars.size(), 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const VariableSet& vars, const mpz_class& c,
                                  Exponents exps) {
  if (exps.size() != vars.size())
    throw AlgebraError("exponent tuple length does not match variable set");
  LaurentPoly p(vars);
  p.add_term(exps, c);
  return p;
}

LaurentPoly LaurentPoly::variable(const VariableSet& vars,
                                  std::string_view name, int power) {
  auto idx = vars.index_of(name);
  if (!idx) throw AlgebraError("unknown variable '" + std::string(name) + "'");
  Exponents e(vars.size(), 0);
  e[*idx] = power;
  return monomial(vars, 1, std::move(e));
}

bool LaurentPoly::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  return c == 1 && std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

void LaurentPoly::add_term(const Exponents& exps, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_same(const LaurentPoly& r) const {
  if (vars_ != r.vars_) throw AlgebraError("variable set mismatch");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& r) {
  check_same(r);
  for (const auto& [e, c] : r.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& r) {
  check_same(r);
  for (const auto& [e, c] : r.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& r) const {
  LaurentPoly out = *this;
  out += r;
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& r) const {
  LaurentPoly out = *this;
  out -= r;
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& r) const {
  check_same(r);
  LaurentPoly out(vars_);
  const std::size_t n = vars_.size();
  Exponents e(n);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : r.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result = constant(vars_, 1);
  LaurentPoly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(const Exponents& shift) const {
  LaurentPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += shift[i];
    out.terms_.emplace_hint(out.terms_.end(), std::move(f), c);
  }
  return out;
}

bool LaurentPoly::operator==(const LaurentPoly& r) const {
  check_same(r);
  return terms_ == r.terms_;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool any = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mono << '*' << vars_.name(i);
      if (e[i] != 1) mono << '^' << e[i];
      any = true;
    }
    os << mag.get_str();
    if (any) os << mono.str();
  }
  return os.str();
}

// -------------------------------------------------------------- exact divide

namespace {

struct DegreeBox {
  std::vector<int> lo, hi;
};

DegreeBox degree_box(const LaurentPoly& p) {
  const std::size_t n = p.vars().size();
  DegreeBox b{std::vector<int>(n, std::numeric_limits<int>::max()),
              std::vector<int>(n, std::numeric_limits<int>::min())};
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      b.lo[i] = std::min(b.lo[i], e[i]);
      b.hi[i] = std::max(b.hi[i], e[i]);
    }
  }
  return b;
}

}  // namespace

std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& p,
                                            const LaurentPoly& d) {
  if (p.vars() != d.vars()) throw AlgebraError("variable set mismatch");
  if (d.is_zero()) throw AlgebraError("division by zero polynomial");
  LaurentPoly quotient(p.vars());
  if (p.is_zero()) return quotient;

  const std::size_t n = p.vars().size();
  const DegreeBox pb = degree_box(p);
  const DegreeBox db = degree_box(d);
  // The quotient's degree in each variable is pinned by the extremes of p and d.
  std::vector<int> qlo(n), qhi(n);
  for (std::size_t i = 0; i < n; ++i) {
    qlo[i] = pb.lo[i] - db.lo[i];
    qhi[i] = pb.hi[i] - db.hi[i];
    if (qlo[i] > qhi[i]) return std::nullopt;
  }

  const auto& [dlead_e, dlead_c] = *d.terms().rbegin();
  LaurentPoly rem = p;
  Exponents qe(n);
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().rbegin();
    if (!mpz_divisible_p(rc.get_mpz_t(), dlead_c.get_mpz_t())) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      qe[i] = re[i] - dlead_e[i];
      if (qe[i] < qlo[i] || qe[i] > qhi[i]) return std::nullopt;
    }
    mpz_class qc = rc / dlead_c;
    quotient.add_term(qe, qc);
    for (const auto& [de, dc] : d.terms()) {
      Exponents e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = qe[i] + de[i];
      rem.add_term(e, -qc * dc);
    }
  }
  return quotient;
}

// ----------------------------------------------------------- RationalFunction

namespace {

// Opportunistic cancellation targets; only those expressible over the
// current variable set are tried.
const std::vector<LaurentPoly>& pivots_for(const VariableSet& vars) {
  thread_local std::vector<std::pair<VariableSet, std::vector<LaurentPoly>>> cache;
  for (const auto& [v, list] : cache)
    if (v == vars) return list;
  std::vector<LaurentPoly> list;
  auto has = [&](const char* name) { return vars.index_of(name).has_value(); };
  if (has("A") && has("B"))
    list.push_back(LaurentPoly::variable(vars, "A") - LaurentPoly::variable(vars, "B"));
  if (has("q")) {
    list.push_back(LaurentPoly::variable(vars, "q") -
                   LaurentPoly::variable(vars, "q", -1));
    if (has("a")) {
      LaurentPoly qa = LaurentPoly::variable(vars, "q") * LaurentPoly::variable(vars, "a", -1);
      LaurentPoly aq = LaurentPoly::variable(vars, "q", -1) * LaurentPoly::variable(vars, "a");
      list.push_back(qa + aq);
    }
  }
  if (has("z")) list.push_back(LaurentPoly::variable(vars, "z"));
  cache.emplace_back(vars, std::move(list));
  return cache.back().second;
}

}  // namespace

RationalFunction::RationalFunction(LaurentPoly num)
    : num_(std::move(num)), den_(LaurentPoly::constant(num_.vars(), 1)) {}

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.vars() != den_.vars()) throw AlgebraError("variable set mismatch");
  if (den_.is_zero()) throw AlgebraError("zero denominator");
  simplify();
}

RationalFunction RationalFunction::constant(const VariableSet& vars,
                                            const mpz_class& c) {
  return RationalFunction(LaurentPoly::constant(vars, c));
}

RationalFunction RationalFunction::variable(const VariableSet& vars,
                                            std::string_view name, int power) {
  return RationalFunction(LaurentPoly::variable(vars, name, power));
}

void RationalFunction::simplify() {
  const VariableSet& vars = num_.vars();
  if (num_.is_zero()) {
    den_ = LaurentPoly::constant(vars, 1);
    return;
  }
  if (den_.is_one()) return;
  if (auto q = try_exact_divide(num_, den_)) {
    num_ = std::move(*q);
    den_ = LaurentPoly::constant(vars, 1);
    return;
  }
  for (const auto& pivot : pivots_for(vars)) {
    while (den_.size() > 1) {
      auto dq = try_exact_divide(den_, pivot);
      if (!dq) break;
      auto nq = try_exact_divide(num_, pivot);
      if (!nq) break;
      den_ = std::move(*dq);
      num_ = std::move(*nq);
    }
  }
  // Normalize: lexicographically first denominator term becomes a positive
  // constant.
  const auto& [e0, c0] = *den_.terms().begin();
  Exponents shift(e0.size());
  for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = -e0[i];
  const bool negate = c0 < 0;
  num_ = num_.shifted(shift);
  den_ = den_.shifted(shift);
  if (negate) {
    num_ = -num_;
    den_ = -den_;
  }
  if (den_.is_monomial()) {
    // Constant denominator: divide through when it divides every coefficient.
    const mpz_class& d = den_.terms().begin()->second;
    bool divisible = true;
    for (const auto& [e, c] : num_.terms())
      if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) divisible = false;
    if (divisible) {
      LaurentPoly n(vars);
      for (const auto& [e, c] : num_.terms()) n.add_term(e, c / d);
      num_ = std::move(n);
      den_ = LaurentPoly::constant(vars, 1);
    }
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& r) const {
  if (vars() != r.vars()) throw AlgebraError("variable set mismatch");
  if (den_ == r.den_) return RationalFunction(num_ + r.num_, den_);
  return RationalFunction(num_ * r.den_ + r.num_ * den_, den_ * r.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& r) const {
  return *this + (-r);
}

RationalFunction RationalFunction::operator*(const RationalFunction& r) const {
  if (vars() != r.vars()) throw AlgebraError("variable set mismatch");
  return RationalFunction(num_ * r.num_, den_ * r.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& r) const {
  return *this * r.inverse();
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& r) {
  *this = *this + r;
  return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& r) {
  *this = *this * r;
  return *this;
}

RationalFunction RationalFunction::inverse() const {
  if (num_.is_zero()) throw AlgebraError("inverse of zero");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  return RationalFunction(num_.pow(static_cast<unsigned>(k)),
                          den_.pow(static_cast<unsigned>(k)));
}

bool RationalFunction::equals(const RationalFunction& r) const {
  if (vars() != r.vars()) throw AlgebraError("variable set mismatch");
  if (den_ == r.den_) return num_ == r.num_;
  return num_ * r.den_ == r.num_ * den_;
}

std::string RationalFunction::str() const {
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ------------------------------------------------------------------ substitute

RationalFunction substitute(const LaurentPoly& p, const Bindings& bindings,
                            const VariableSet& target) {
  const std::size_t n = p.vars().size();
  if (p.is_zero()) return RationalFunction::constant(target, 0);
  DegreeBox box = degree_box(p);
  for (std::size_t i = 0; i < n; ++i) {
    box.lo[i] = std::min(box.lo[i], 0);
    box.hi[i] = std::max(box.hi[i], 0);
  }

  // Common denominator prod_i den_i^{hi_i} * num_i^{-lo_i}; every term is then
  // a polynomial expression in the bindings' numerators and denominators.
  std::vector<const RationalFunction*> bound(n, nullptr);
  std::vector<std::vector<LaurentPoly>> num_pow(n), den_pow(n);
  LaurentPoly common = LaurentPoly::constant(target, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (box.lo[i] == 0 && box.hi[i] == 0) continue;
    auto it = bindings.find(p.vars().name(i));
    if (it == bindings.end())
      throw AlgebraError("no binding for variable '" + p.vars().name(i) + "'");
    if (it->second.vars() != target)
      throw AlgebraError("binding for '" + p.vars().name(i) + "' is not over the target set");
    bound[i] = &it->second;
    if (box.lo[i] < 0 && bound[i]->is_zero())
      throw AlgebraError("variable '" + p.vars().name(i) +
                         "' bound to zero but occurs with a negative exponent");
    const int span = box.hi[i] - box.lo[i];
    num_pow[i].push_back(LaurentPoly::constant(target, 1));
    den_pow[i].push_back(LaurentPoly::constant(target, 1));
    for (int k = 1; k <= span; ++k) {
      num_pow[i].push_back(num_pow[i].back() * bound[i]->num());
      den_pow[i].push_back(den_pow[i].back() * bound[i]->den());
    }
    common = common * den_pow[i][box.hi[i]] * num_pow[i][-box.lo[i]];
  }

  LaurentPoly total(target);
  for (const auto& [e, c] : p.terms()) {
    LaurentPoly term = LaurentPoly::constant(target, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (!bound[i]) continue;
      term = term * num_pow[i][e[i] - box.lo[i]] * den_pow[i][box.hi[i] - e[i]];
    }
    total += term;
  }
  return RationalFunction(std::move(total), std::move(common));
}

RationalFunction substitute(const RationalFunction& p, const Bindings& bindings,
                            const VariableSet& target) {
  RationalFunction n = substitute(p.num(), bindings, target);
  RationalFunction d = substitute(p.den(), bindings, target);
  if (d.is_zero()) throw AlgebraError("substitution sends the denominator to zero");
  return n / d;
}

LaurentPoly embed(const LaurentPoly& p, const VariableSet& target) {
  const std::size_t n = p.vars().size();
  std::vector<std::optional<std::size_t>> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = target.index_of(p.vars().name(i));
  LaurentPoly out(target);
  for (const auto& [e, c] : p.terms()) {
    Exponents f(target.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (!map[i])
        throw AlgebraError("variable '" + p.vars().name(i) + "' missing from target set");
      f[*map[i]] = e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

RationalFunction embed(const RationalFunction& p, const VariableSet& target) {
  return RationalFunction(embed(p.num(), target), embed(p.den(), target));
}

// --------------------------------------------------------------------- parser

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const VariableSet& vars,
             const std::map<std::string, RationalFunction>& constants)
      : text_(text), vars_(vars), constants_(constants) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("expression '" + std::string(text_) + "': " + what +
                       " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction r = term();
    for (;;) {
      if (accept('+')) r = r + term();
      else if (accept('-')) r = r - term();
      else return r;
    }
  }
  RationalFunction term() {
    RationalFunction r = unary();
    for (;;) {
      if (accept('*')) r = r * unary();
      else if (accept('/')) r = r / unary();
      else return r;
    }
  }
  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction base = primary();
    if (accept('^')) {
      skip();
      bool neg = accept('-');
      skip();
      long k = integer();
      base = base.pow(static_cast<int>(neg ? -k : k));
    }
    return base;
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }
  RationalFunction primary() {
    skip();
    if (accept('(')) {
      RationalFunction r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RationalFunction::constant(vars_, mpz_class(std::string(text_.substr(start, pos_ - start))));
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected operand");
    std::string name(text_.substr(start, pos_ - start));
    if (auto it = constants_.find(name); it != constants_.end()) return it->second;
    if (vars_.index_of(name)) return RationalFunction::variable(vars_, name);
    fail("unknown symbol '" + name + "'");
  }

  std::string_view text_;
  const VariableSet& vars_;
  const std::map<std::string, RationalFunction>& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_expression(
    std::string_view text, const VariableSet& vars,
    const std::map<std::string, RationalFunction>& constants) {
  return ExprParser(text, vars, constants).parse();
}

}  // namespace linkpoly
