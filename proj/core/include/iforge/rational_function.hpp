#pragma once

#include "iforge/polynomial.hpp"

namespace iforge {

/// Reduced quotient of polynomials. The denominator is monic, so equal
/// rational functions have identical numerator and denominator.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(TablePtr table);
  RationalFunction(TablePtr table, const Rational& constant);
  RationalFunction(Polynomial num);  // NOLINT(google-explicit-constructor)
  /// Reduces num/den. Throws Errc::division_by_zero when den is zero.
  RationalFunction(Polynomial num, Polynomial den);

  const TablePtr& table() const noexcept { return num_.table(); }
  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator*(const Rational& c) const;

  RationalFunction pow(unsigned exponent) const;

  /// Quotient rule; same role restrictions as Polynomial::derivative.
  RationalFunction derivative(std::size_t var) const;

  /// Throws Errc::pole_at_point when the denominator vanishes.
  Rational evaluate(const RationalPoint& pt) const;
  RationalFunction substitute(std::size_t var, const Rational& value) const;
  RationalFunction substitute(std::size_t var, const RationalFunction& value) const;
  RationalFunction rebase(const TablePtr& target) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

using RF = RationalFunction;

}  // namespace iforge
