#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "iforge/var_table.hpp"

namespace iforge {

using Rational = mpq_class;

/// Exponent vector. Unused trailing slots stay zero, so byte-wise comparison
/// is the lexicographic order in declared variable order.
struct Monomial {
  std::array<std::uint8_t, VarTable::kMaxVars> exp{};

  std::uint8_t operator[](std::size_t i) const { return exp[i]; }
  std::uint8_t& operator[](std::size_t i) { return exp[i]; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.exp.data(), b.exp.data(), a.exp.size()) == 0;
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    int c = std::memcmp(a.exp.data(), b.exp.data(), a.exp.size());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  unsigned total_degree() const;
  bool divides(const Monomial& other) const;
  bool is_one() const;
};

Monomial monomial_mul(const Monomial& a, const Monomial& b);
Monomial monomial_div(const Monomial& a, const Monomial& b);

class RationalPoint;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in strictly decreasing lexicographic order with no zero
/// coefficient, so two polynomials over the same table are equal iff their
/// term lists are equal.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Polynomial() = default;
  explicit Polynomial(TablePtr table) : table_(std::move(table)) {}
  Polynomial(TablePtr table, const Rational& constant);

  static Polynomial variable(TablePtr table, std::size_t index);
  static Polynomial variable(TablePtr table, std::string_view name);
  static Polynomial monomial(TablePtr table, const Monomial& m, const Rational& c);
  /// Builds from arbitrary (possibly unsorted, repeated, zero) terms.
  static Polynomial from_terms(TablePtr table, std::vector<Term> terms);

  const TablePtr& table() const noexcept { return table_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  /// Value of the constant term (zero when absent).
  Rational constant_term() const;
  /// Leading coefficient under the lexicographic order; zero for the zero polynomial.
  Rational leading_coeff() const;
  const Term& leading_term() const { return terms_.front(); }

  unsigned degree_in(std::size_t var) const;
  unsigned total_degree() const;
  bool depends_on(std::size_t var) const;
  /// Bit i set iff variable i occurs.
  std::uint64_t variable_mask() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  Polynomial pow(unsigned exponent) const;

  /// Exact quotient when `divisor` divides this polynomial, otherwise nullopt.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  /// Formal partial derivative; differentiating by the pencil parameter or a
  /// constant is rejected with Errc::forbidden_variable.
  Polynomial derivative(std::size_t var) const;
  /// Derivative without the role check (used internally by gcd machinery).
  Polynomial derivative_unchecked(std::size_t var) const;

  Rational evaluate(const RationalPoint& pt) const;
  /// Substitutes a rational for one variable; the table is unchanged.
  Polynomial substitute(std::size_t var, const Rational& value) const;
  /// Substitutes a polynomial (over the same table) for one variable.
  Polynomial substitute(std::size_t var, const Polynomial& value) const;

  /// Re-expresses the polynomial over another table, matching variables by
  /// name. Throws Errc::unknown_variable if a used variable is missing.
  Polynomial rebase(const TablePtr& target) const;

  /// Coefficients with respect to `var`, indexed by degree.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;
  static Polynomial from_coefficients(const TablePtr& table, std::size_t var,
                                      const std::vector<Polynomial>& coeffs);

  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_table(const Polynomial& other, const char* where) const;

  TablePtr table_;
  std::vector<Term> terms_;
};

/// Greatest common divisor, normalized to be monic. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Exact point in the space of all declared variables.
class RationalPoint {
 public:
  RationalPoint(TablePtr table, std::vector<Rational> values);

  const TablePtr& table() const noexcept { return table_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& operator[](std::size_t i) const { return values_[i]; }

 private:
  TablePtr table_;
  std::vector<Rational> values_;
};

}  // namespace iforge
