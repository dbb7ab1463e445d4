#pragma once

// Exact arithmetic over Z[x1^±, ..., xk^±] and formal quotients of such
// Laurent polynomials. Coefficients are arbitrary precision (GMP).

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace linkpoly {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered list of distinct variable names. Cheap to copy (shared storage).
class VariableSet {
 public:
  VariableSet() = default;
  explicit VariableSet(std::vector<std::string> names);

  std::size_t size() const { return names_ ? names_->size() : 0; }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const VariableSet& other) const;
  bool operator!=(const VariableSet& other) const { return !(*this == other); }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

// Frequently used sets.
const VariableSet& vars_za();   // {z, a}
const VariableSet& vars_qa();   // {q, a}
const VariableSet& vars_ABa();  // {A, B, a}
const VariableSet& vars_q();    // {q}

using Exponents = std::vector<int>;

class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, mpz_class>;

  LaurentPoly() = default;
  explicit LaurentPoly(VariableSet vars) : vars_(std::move(vars)) {}

  static LaurentPoly constant(const VariableSet& vars, const mpz_class& c);
  static LaurentPoly monomial(const VariableSet& vars, const mpz_class& c,
                              Exponents exps);
  /// The single variable `name` raised to `power`.
  static LaurentPoly variable(const VariableSet& vars, std::string_view name,
                              int power = 1);

  const VariableSet& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * x^exps, dropping the term if it cancels.
  void add_term(const Exponents& exps, const mpz_class& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& r);
  LaurentPoly& operator-=(const LaurentPoly& r);
  LaurentPoly operator+(const LaurentPoly& r) const;
  LaurentPoly operator-(const LaurentPoly& r) const;
  LaurentPoly operator*(const LaurentPoly& r) const;
  LaurentPoly pow(unsigned k) const;
  /// Multiplies by x^shift (a unit of the Laurent ring).
  LaurentPoly shifted(const Exponents& shift) const;

  bool operator==(const LaurentPoly& r) const;
  bool operator!=(const LaurentPoly& r) const { return !(*this == r); }

  /// Canonical text: terms in lexicographic exponent order,
  /// e.g. "1*q^-2 + 1 + 1*q^2".
  std::string str() const;

 private:
  void check_same(const LaurentPoly& r) const;

  VariableSet vars_;
  TermMap terms_;
};

/// Quotient p/d if d divides p in the Laurent ring, otherwise empty.
std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& p,
                                            const LaurentPoly& d);

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(LaurentPoly num);
  RationalFunction(LaurentPoly num, LaurentPoly den);

  static RationalFunction constant(const VariableSet& vars, const mpz_class& c);
  static RationalFunction variable(const VariableSet& vars,
                                   std::string_view name, int power = 1);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  const VariableSet& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  /// True when the denominator simplified away entirely.
  bool is_laurent() const { return den_.is_one(); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& r) const;
  RationalFunction operator-(const RationalFunction& r) const;
  RationalFunction operator*(const RationalFunction& r) const;
  RationalFunction operator/(const RationalFunction& r) const;
  RationalFunction& operator+=(const RationalFunction& r);
  RationalFunction& operator*=(const RationalFunction& r);
  RationalFunction inverse() const;
  /// Integer powers, negative allowed for nonzero values.
  RationalFunction pow(int k) const;

  /// Cross-multiplied equality.
  bool equals(const RationalFunction& r) const;

  std::string str() const;

 private:
  void simplify();

  LaurentPoly num_;
  LaurentPoly den_;
};

inline bool operator==(const RationalFunction& p, const RationalFunction& r) {
  return p.equals(r);
}

using Bindings = std::map<std::string, RationalFunction>;

/// Ring homomorphism image: each variable of p is replaced by its binding.
/// All bindings must live over `target`.
RationalFunction substitute(const LaurentPoly& p, const Bindings& bindings,
                            const VariableSet& target);
RationalFunction substitute(const RationalFunction& p, const Bindings& bindings,
                            const VariableSet& target);

/// Maps a polynomial into a larger (or reordered) variable set by name.
LaurentPoly embed(const LaurentPoly& p, const VariableSet& target);
RationalFunction embed(const RationalFunction& p, const VariableSet& target);

/// Parses a polynomial expression: integers, variable names of `vars`,
/// + - * / ^ (integer exponents) and parentheses. Extra named constants
/// (e.g. "delta") may be supplied.
RationalFunction parse_expression(
    std::string_view text, const VariableSet& vars,
    const std::map<std::string, RationalFunction>& constants = {});

}  // namespace linkpoly
