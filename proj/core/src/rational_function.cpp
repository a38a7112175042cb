#include "iforge/rational_function.hpp"

#include "iforge/errors.hpp"

namespace iforge {

RationalFunction::RationalFunction(TablePtr table) : num_(table), den_(table, Rational(1)) {}

RationalFunction::RationalFunction(TablePtr table, const Rational& constant)
    : num_(table, constant), den_(table, Rational(1)) {}

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(num_.table(), Rational(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  require_same_table(num_.table(), den_.table(), "rational function");
  if (den_.is_zero()) throw Error(Errc::division_by_zero, "rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(num_.table(), Rational(1));
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ *= Rational(1 / den_.leading_coeff());
      den_ = Polynomial(num_.table(), Rational(1));
    }
    return;
  }
  Polynomial g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *num_.divide_exact(g);
    den_ = *den_.divide_exact(g);
  }
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize();
    else if (num_.is_zero()) normalize();
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    normalize();
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    normalize();
    return *this;
  }
  Polynomial g = gcd(den_, o.den_);
  Polynomial od = *o.den_.divide_exact(g);
  Polynomial sd = *den_.divide_exact(g);
  num_ = num_ * od + o.num_ * sd;
  den_ = den_ * od;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalFunction(table());
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  // Cross-cancel so the product is already reduced.
  Polynomial g1 = o.den_.is_one() ? Polynomial(table(), Rational(1)) : gcd(num_, o.den_);
  Polynomial g2 = den_.is_one() ? Polynomial(table(), Rational(1)) : gcd(o.num_, den_);
  Polynomial a = g1.is_one() ? num_ : *num_.divide_exact(g1);
  Polynomial d2 = g1.is_one() ? o.den_ : *o.den_.divide_exact(g1);
  Polynomial c = g2.is_one() ? o.num_ : *o.num_.divide_exact(g2);
  Polynomial d1 = g2.is_one() ? den_ : *den_.divide_exact(g2);
  num_ = a * c;
  den_ = d1 * d2;
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw Error(Errc::division_by_zero, "rational function division by zero");
  RationalFunction inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  Rational lc = inv.den_.leading_coeff();
  if (lc != 1) {
    Rational s = 1 / lc;
    inv.num_ *= s;
    inv.den_ *= s;
  }
  return *this *= inv;
}

RationalFunction RationalFunction::operator*(const Rational& c) const {
  RationalFunction r = *this;
  r.num_ *= c;
  if (r.num_.is_zero()) r.den_ = Polynomial(table(), Rational(1));
  return r;
}

RationalFunction RationalFunction::pow(unsigned exponent) const {
  RationalFunction r = *this;
  r.num_ = num_.pow(exponent);
  r.den_ = den_.pow(exponent);
  return r;
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  Polynomial dn = num_.derivative(var);
  if (den_.is_one()) return RationalFunction(dn);
  Polynomial dd = den_.derivative(var);
  return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
}

Rational RationalFunction::evaluate(const RationalPoint& pt) const {
  Rational d = den_.evaluate(pt);
  if (sgn(d) == 0) throw Error(Errc::pole_at_point, "denominator vanishes at the sample point");
  return num_.evaluate(pt) / d;
}

RationalFunction RationalFunction::substitute(std::size_t var, const Rational& value) const {
  Polynomial d = den_.substitute(var, value);
  if (d.is_zero()) throw Error(Errc::pole_at_point, "denominator vanishes after substitution");
  return RationalFunction(num_.substitute(var, value), std::move(d));
}

RationalFunction RationalFunction::substitute(std::size_t var, const RationalFunction& value) const {
  // Horner in the substituted value over the field.
  auto eval = [&](const Polynomial& p) {
    auto coeffs = p.coefficients_in(var);
    RationalFunction acc(p.table());
    for (std::size_t d = coeffs.size(); d-- > 0;) acc = acc * value + RationalFunction(coeffs[d]);
    return acc;
  };
  RationalFunction d = eval(den_);
  if (d.is_zero()) throw Error(Errc::pole_at_point, "denominator vanishes after substitution");
  return eval(num_) / d;
}

RationalFunction RationalFunction::rebase(const TablePtr& target) const {
  RationalFunction r;
  r.num_ = num_.rebase(target);
  r.den_ = den_.rebase(target);
  // Renaming variables can reorder terms; recompute the monic normalization.
  Rational lc = r.den_.leading_coeff();
  if (lc != 1) {
    Rational s = 1 / lc;
    r.num_ *= s;
    r.den_ *= s;
  }
  return r;
}

}  // namespace iforge
