#include "generators.hpp"

#include <algorithm>

namespace iforge::testing {

TablePtr coords(const std::vector<std::string>& names) {
  std::vector<VarTable::Var> vars;
  for (const auto& n : names) vars.push_back({n, VarRole::manifold});
  return VarTable::create(vars);
}

TablePtr coords(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return coords(names);
}

RF var(const TablePtr& t, std::string_view name) { return RF(Polynomial::variable(t, name)); }

RF num(const TablePtr& t, long value) { return RF(t, Rational(value)); }

long Gen::integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

Rational Gen::small_rational() {
  Rational q(integer(-9, 9), integer(1, 4));
  q.canonicalize();
  return q;
}

Polynomial Gen::poly(const TablePtr& t, unsigned max_degree, unsigned max_terms) {
  std::vector<Polynomial::Term> terms;
  long count = integer(0, max_terms);
  for (long n = 0; n < count; ++n) {
    Monomial m;
    long budget = integer(0, max_degree);
    for (long b = 0; b < budget; ++b) m[t->geo_var(integer(0, static_cast<long>(t->dim()) - 1))] += 1;
    terms.push_back({m, small_rational()});
  }
  return Polynomial::from_terms(t, std::move(terms));
}

Polynomial Gen::nonzero_poly(const TablePtr& t, unsigned max_degree, unsigned max_terms) {
  for (;;) {
    Polynomial p = poly(t, max_degree, std::max(1u, max_terms));
    if (!p.is_zero()) return p;
  }
}

RF Gen::rf(const TablePtr& t, unsigned max_degree, unsigned max_terms) {
  Polynomial den = coin() ? Polynomial(t, Rational(1)) : nonzero_poly(t, max_degree, 2);
  return RF(poly(t, max_degree, max_terms), den);
}

std::vector<std::size_t> Gen::ordinals(std::size_t dim, std::size_t count) {
  std::vector<std::size_t> all(dim);
  for (std::size_t i = 0; i < dim; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng_);
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

Form Gen::form(const TablePtr& t, int degree, unsigned coeff_degree, unsigned max_components) {
  Form out(t, degree);
  if (static_cast<std::size_t>(degree) > t->dim()) return out;
  long count = integer(1, max_components);
  for (long n = 0; n < count; ++n) {
    out += Form::basis(t, ordinals(t->dim(), degree), RF(poly(t, coeff_degree, 3)));
  }
  return out;
}

MultiVector Gen::multivector(const TablePtr& t, int degree, unsigned coeff_degree, unsigned max_components) {
  MultiVector out(t, degree);
  if (static_cast<std::size_t>(degree) > t->dim()) return out;
  long count = integer(1, max_components);
  for (long n = 0; n < count; ++n) {
    out += MultiVector::basis(t, ordinals(t->dim(), degree), RF(poly(t, coeff_degree, 3)));
  }
  return out;
}

RationalPoint Gen::point(const TablePtr& t, long range) {
  std::vector<Rational> values;
  for (std::size_t i = 0; i < t->size(); ++i) values.emplace_back(integer(-range, range));
  return RationalPoint(t, values);
}

RF direct_bracket(const MultiVector& p, const RF& f, const RF& g) {
  const auto& t = p.table();
  RF out(t);
  for (std::size_t a = 0; a < t->dim(); ++a) {
    RF fa = f.derivative(t->geo_var(a));
    if (fa.is_zero()) continue;
    for (std::size_t b = 0; b < t->dim(); ++b) {
      if (a == b) continue;
      RF pab = p.at({a, b});
      if (pab.is_zero()) continue;
      out += pab * fa * g.derivative(t->geo_var(b));
    }
  }
  return out;
}

RF cyclic_sum(const MultiVector& p, std::size_t i, std::size_t j, std::size_t k) {
  const auto& t = p.table();
  RF xi(Polynomial::variable(t, t->geo_var(i)));
  RF xj(Polynomial::variable(t, t->geo_var(j)));
  RF xk(Polynomial::variable(t, t->geo_var(k)));
  return direct_bracket(p, xi, direct_bracket(p, xj, xk)) + direct_bracket(p, xj, direct_bracket(p, xk, xi)) +
         direct_bracket(p, xk, direct_bracket(p, xi, xj));
}

bool jacobi_by_cyclic_sums(const MultiVector& p) {
  std::size_t n = p.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!cyclic_sum(p, i, j, k).is_zero()) return false;
      }
    }
  }
  return true;
}

}  // namespace iforge::testing
