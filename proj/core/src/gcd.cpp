// Multivariate gcd over Q: monomial and variable-support reductions first,
// then a recursive fraction-free subresultant PRS in the most recently
// declared common variable.

#include <algorithm>
#include <bit>

#include "iforge/errors.hpp"
#include "iforge/polynomial.hpp"

namespace iforge {

namespace {

using UPoly = std::vector<Polynomial>;  // coefficients by degree, top entry nonzero

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly scale(const UPoly& p, const Polynomial& c) {
  UPoly out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(x * c);
  trim(out);
  return out;
}

UPoly divide_all(const UPoly& p, const Polynomial& c) {
  UPoly out;
  out.reserve(p.size());
  for (const auto& x : p) {
    auto q = x.divide_exact(c);
    if (!q) throw Error(Errc::non_exact_division, "gcd: inexact coefficient division");
    out.push_back(std::move(*q));
  }
  return out;
}

// lc(B)^(degA-degB+1) * A mod B
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const Polynomial& lb = b.back();
  int db = udeg(b);
  int e = udeg(a) - db + 1;
  while (!a.empty() && udeg(a) >= db) {
    Polynomial la = a.back();
    int shift = udeg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
    --e;
  }
  if (e > 0 && !a.empty()) a = scale(a, lb.pow(static_cast<unsigned>(e)));
  return a;
}

Polynomial monomial_content(const Polynomial& p) {
  Monomial m = p.terms().front().mono;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < m.exp.size(); ++i) m.exp[i] = std::min(m.exp[i], t.mono.exp[i]);
  }
  return Polynomial::monomial(p.table(), m, Rational(1));
}

Polynomial content_in(const Polynomial& p, std::size_t var);

Polynomial gcd_impl(Polynomial a, Polynomial b);

Polynomial gcd_of(const std::vector<Polynomial>& ps) {
  Polynomial g(ps.front().table());
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.monic() : gcd_impl(g, p);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial content_in(const Polynomial& p, std::size_t var) { return gcd_of(p.coefficients_in(var)); }

Polynomial primitive_subresultant(const Polynomial& a, const Polynomial& b, std::size_t var) {
  auto A = a.coefficients_in(var);
  auto B = b.coefficients_in(var);
  if (udeg(A) < udeg(B)) std::swap(A, B);
  const auto& table = a.table();
  Polynomial g(table, Rational(1));
  Polynomial h(table, Rational(1));
  while (true) {
    int delta = udeg(A) - udeg(B);
    UPoly R = pseudo_remainder(A, B);
    if (R.empty()) break;
    if (udeg(R) == 0) return Polynomial(table, Rational(1));
    A = std::move(B);
    B = divide_all(R, g * h.pow(static_cast<unsigned>(delta)));
    g = A.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      auto q = g.pow(static_cast<unsigned>(delta)).divide_exact(h.pow(static_cast<unsigned>(delta - 1)));
      if (!q) throw Error(Errc::non_exact_division, "gcd: subresultant h update not exact");
      h = std::move(*q);
    }
  }
  Polynomial result = Polynomial::from_coefficients(table, var, B);
  Polynomial cont = content_in(result, var);
  auto pp = result.divide_exact(cont);
  return pp->monic();
}

Polynomial gcd_impl(Polynomial a, Polynomial b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto& table = a.table();
  Polynomial one(table, Rational(1));
  if (a.is_constant() || b.is_constant()) return one;
  if (a == b) return a.monic();

  // Monomial factors split off exactly.
  Polynomial ma = monomial_content(a);
  Polynomial mb = monomial_content(b);
  Polynomial mono_gcd = one;
  if (!ma.is_one() || !mb.is_one()) {
    Monomial m;
    for (std::size_t i = 0; i < m.exp.size(); ++i) {
      m.exp[i] = std::min(ma.terms()[0].mono.exp[i], mb.terms()[0].mono.exp[i]);
    }
    mono_gcd = Polynomial::monomial(table, m, Rational(1));
    if (!ma.is_one()) a = *a.divide_exact(ma);
    if (!mb.is_one()) b = *b.divide_exact(mb);
  }
  if (a.is_constant() || b.is_constant()) return mono_gcd;

  // A variable present in only one operand cannot occur in the gcd.
  std::uint64_t va = a.variable_mask();
  std::uint64_t vb = b.variable_mask();
  if (va != vb) {
    for (std::uint64_t only_a = va & ~vb; only_a; only_a &= only_a - 1) {
      a = content_in(a, static_cast<std::size_t>(std::countr_zero(only_a)));
      if (a.is_constant()) return mono_gcd;
    }
    for (std::uint64_t only_b = vb & ~va; only_b; only_b &= only_b - 1) {
      b = content_in(b, static_cast<std::size_t>(std::countr_zero(only_b)));
      if (b.is_constant()) return mono_gcd;
    }
    return (mono_gcd * gcd_impl(std::move(a), std::move(b))).monic();
  }

  if (a.size() >= b.size()) {
    if (a.divide_exact(b)) return (mono_gcd * b).monic();
  } else if (b.divide_exact(a)) {
    return (mono_gcd * a).monic();
  }

  auto var = static_cast<std::size_t>(63 - std::countl_zero(va));
  Polynomial ca = content_in(a, var);
  Polynomial cb = content_in(b, var);
  Polynomial c = gcd_impl(ca, cb);
  Polynomial pa = ca.is_one() ? a : *a.divide_exact(ca);
  Polynomial pb = cb.is_one() ? b : *b.divide_exact(cb);
  Polynomial g = primitive_subresultant(pa, pb, var);
  return (mono_gcd * c * g).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  require_same_table(a.table(), b.table(), "gcd");
  return gcd_impl(a, b);
}

}  // namespace iforge
