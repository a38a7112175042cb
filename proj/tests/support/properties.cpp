#include "properties.hpp"

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "iforge/anchor.hpp"
#include "iforge/errors.hpp"
#include "iforge/pencil.hpp"
#include "iforge/symexpr.hpp"
#include "iforge/verify.hpp"

namespace iforge::testing {

namespace {

std::string show(const RF& f) { return render(f); }

int sign_of_permutation(const std::vector<std::size_t>& perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) s = -s;
    }
  }
  return s;
}

Form one_form_basis(const TablePtr& t, std::size_t ordinal) { return Form::basis(t, {ordinal}, num(t, 1)); }
MultiVector vector_basis(const TablePtr& t, std::size_t ordinal) { return MultiVector::basis(t, {ordinal}, num(t, 1)); }

SymplecticAnchor standard_r4() {
  TablePtr t = coords({"x1", "x2", "y1", "y2"});
  return build_symplectic(canonical_bivector(t, {{"x1", "y1"}, {"x2", "y2"}}));
}

}  // namespace

PropertyResult ring_axioms(std::uint64_t seed, int cases) {
  PropertyResult r{"ring axioms"};
  Gen g(seed);
  TablePtr t = coords(4);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    Polynomial a = g.poly(t, 4, 4), b = g.poly(t, 4, 4), c = g.poly(t, 4, 4);
    if (!((a + b) + c == a + (b + c))) r.fail("additive associativity: " + render(a) + ", " + render(b));
    if (!(a + b == b + a)) r.fail("additive commutativity: " + render(a));
    if (!((a * b) * c == a * (b * c))) r.fail("multiplicative associativity: " + render(a) + ", " + render(b));
    if (!(a * b == b * a)) r.fail("multiplicative commutativity: " + render(a) + ", " + render(b));
    if (!(a * (b + c) == a * b + a * c)) r.fail("distributivity: " + render(a) + ", " + render(b));
    if (!((a - a).is_zero())) r.fail("additive inverse: " + render(a));
  }
  return r;
}

PropertyResult field_axioms(std::uint64_t seed, int cases) {
  PropertyResult r{"field axioms"};
  Gen g(seed);
  TablePtr t = coords(3);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    RF a = g.rf(t, 2, 3), b = g.rf(t, 2, 3), c = g.rf(t, 2, 3);
    RF bn(g.nonzero_poly(t, 2, 3));
    if (!((a + b) + c == a + (b + c))) r.fail("additive associativity: " + show(a) + ", " + show(b));
    if (!((a * b) * c == a * (b * c))) r.fail("multiplicative associativity: " + show(a) + ", " + show(b));
    if (!(a * (b + c) == a * b + a * c)) r.fail("distributivity: " + show(a) + ", " + show(b));
    if (!((a / bn) * bn == a)) r.fail("division inverse: " + show(a) + " / " + show(bn));
    if (!(bn / bn == num(t, 1))) r.fail("self quotient: " + show(bn));
  }
  return r;
}

PropertyResult reduction_soundness(std::uint64_t seed, int cases) {
  PropertyResult r{"reduction soundness"};
  Gen g(seed);
  TablePtr t = coords(3);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    Polynomial p = g.poly(t, 3, 4);
    Polynomial q = g.nonzero_poly(t, 2, 3);
    RF reduced(p * q, q);
    if (!(reduced == RF(p))) r.fail("(p*q)/q != p for p = " + render(p) + ", q = " + render(q));
  }
  return r;
}

PropertyResult evaluation_homomorphism(std::uint64_t seed, int points) {
  PropertyResult r{"evaluation homomorphism"};
  Gen g(seed);
  TablePtr t = coords(4);
  Polynomial a = g.nonzero_poly(t, 4, 5), b = g.nonzero_poly(t, 4, 5);
  for (int n = 0; n < points; ++n, ++r.cases) {
    RationalPoint pt = g.point(t, 1000);
    if ((a * b).evaluate(pt) != a.evaluate(pt) * b.evaluate(pt)) r.fail("product at point " + std::to_string(n));
    if ((a + b).evaluate(pt) != a.evaluate(pt) + b.evaluate(pt)) r.fail("sum at point " + std::to_string(n));
  }
  return r;
}

PropertyResult render_round_trip(std::uint64_t seed, int cases) {
  PropertyResult r{"parse . render = id"};
  Gen g(seed);
  TablePtr t = coords(4);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    Polynomial p = g.poly(t, 5, 6);
    std::string text = render(p);
    if (!(parse_expr(text, t) == p)) r.fail("round trip of " + text);
    if (render(parse_expr(text, t)) != text) r.fail("canonical text changed: " + text);
  }
  return r;
}

PropertyResult schwartz_zippel(std::uint64_t seed, int cases) {
  PropertyResult r{"Schwartz-Zippel consistency"};
  Gen g(seed);
  TablePtr t = coords(3);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    Polynomial a = g.poly(t, 3, 3), b = g.poly(t, 3, 3);
    // Zero by identity, nonzero unless the random data collapses.
    Polynomial zero = (a + b).pow(2) - (a * a + Rational(2) * a * b + b * b);
    Polynomial maybe = a * b + g.nonzero_poly(t, 2, 2);
    if (!zero.is_zero()) r.fail("identity not reduced to zero: " + render(zero));
    for (int k = 0; k < 20; ++k) {
      if (zero.evaluate(g.point(t, 1'000'000)) != 0) r.fail("zero expression evaluated nonzero");
    }
    if (!maybe.is_zero()) {
      bool seen_nonzero = false;
      for (int k = 0; k < 20 && !seen_nonzero; ++k) seen_nonzero = maybe.evaluate(g.point(t, 1'000'000)) != 0;
      if (!seen_nonzero) r.fail("nonzero expression vanished at 20 points: " + render(maybe));
    }
  }
  return r;
}

PropertyResult wedge_laws(std::uint64_t seed, int cases) {
  PropertyResult r{"graded commutativity and associativity of wedge"};
  Gen g(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    TablePtr t = coords(static_cast<std::size_t>(g.integer(2, 6)));
    int p = static_cast<int>(g.integer(0, 3)), q = static_cast<int>(g.integer(0, 3)),
        s = static_cast<int>(g.integer(0, 3));
    Form a = g.form(t, p, 2, 3), b = g.form(t, q, 2, 3), c = g.form(t, s, 2, 3);
    Form ab = wedge(a, b);
    Form ba = wedge(b, a);
    if (!(ab == ((p * q) % 2 ? ba.scaled(num(t, -1)) : ba))) {
      r.fail("a^b vs b^a for degrees " + std::to_string(p) + "," + std::to_string(q) + ": " + describe(a));
    }
    if (!(wedge(ab, c) == wedge(a, wedge(b, c)))) r.fail("associativity: " + describe(a));
  }
  return r;
}

PropertyResult d_squared(std::uint64_t seed, int cases) {
  PropertyResult r{"d^2 = 0"};
  Gen g(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    TablePtr t = coords(static_cast<std::size_t>(g.integer(2, 6)));
    Form a = g.form(t, static_cast<int>(g.integer(0, 3)), 3, 3);
    Form dda = exterior_derivative(exterior_derivative(a));
    if (!dda.is_zero()) r.fail("d(d a) = " + describe(dda) + " for a = " + describe(a));
  }
  return r;
}

PropertyResult leibniz(std::uint64_t seed, int cases) {
  PropertyResult r{"Leibniz rule"};
  Gen g(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    TablePtr t = coords(static_cast<std::size_t>(g.integer(2, 5)));
    int p = static_cast<int>(g.integer(0, 2));
    Form a = g.form(t, p, 2, 3), b = g.form(t, static_cast<int>(g.integer(0, 2)), 2, 3);
    Form lhs = exterior_derivative(wedge(a, b));
    Form second = wedge(a, exterior_derivative(b));
    Form rhs = wedge(exterior_derivative(a), b) + (p % 2 ? second.scaled(num(t, -1)) : second);
    if (!(lhs == rhs)) r.fail("d(a^b) mismatch for a = " + describe(a) + ", b = " + describe(b));
  }
  return r;
}

PropertyResult pairing_determinant(std::uint64_t seed, int cases) {
  PropertyResult r{"pairing of decomposables = permutation expansion"};
  Gen g(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    std::size_t dim = static_cast<std::size_t>(g.integer(2, 5));
    TablePtr t = coords(dim);
    std::size_t p = static_cast<std::size_t>(g.integer(1, std::min<long>(3, static_cast<long>(dim))));
    std::vector<Form> alphas;
    std::vector<MultiVector> vs;
    for (std::size_t i = 0; i < p; ++i) {
      alphas.push_back(g.form(t, 1, 1, 3));
      vs.push_back(g.multivector(t, 1, 1, 3));
    }
    Form a = alphas[0];
    MultiVector v = vs[0];
    for (std::size_t i = 1; i < p; ++i) {
      a = wedge(a, alphas[i]);
      v = wedge(v, vs[i]);
    }
    // alpha_i(v_j) straight from the components.
    auto eval = [&](const Form& alpha, const MultiVector& x) {
      RF out(t);
      for (std::size_t k = 0; k < dim; ++k) out += alpha.at({k}) * x.at({k});
      return out;
    };
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    RF expansion(t);
    do {
      RF term = num(t, sign_of_permutation(perm));
      for (std::size_t i = 0; i < p; ++i) term *= eval(alphas[i], vs[perm[i]]);
      expansion += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    RF got = pairing(a, v);
    if (!(got == expansion)) r.fail("pairing " + show(got) + " vs expansion " + show(expansion));
  }
  return r;
}

PropertyResult schouten_jacobiator(std::uint64_t seed, int cases) {
  PropertyResult r{"Schouten bracket vs cyclic sums"};
  Gen g(seed);
  TablePtr t = coords(4);
  int poisson = 0;
  for (int n = 0; n < cases; ++n, ++r.cases) {
    MultiVector p(t, 2);
    switch (n % 3) {
      case 0:  // generic, almost never Poisson
        p = g.multivector(t, 2, 2, 4);
        break;
      case 1: {  // rank two: always Poisson
        p = MultiVector::basis(t, g.ordinals(4, 2), RF(g.poly(t, 2, 3)));
        break;
      }
      default: {  // constant plus a rank-two part in the remaining directions
        auto ij = g.ordinals(4, 2);
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < 4; ++k) {
          if (k != ij[0] && k != ij[1]) rest.push_back(k);
        }
        RF coeff(g.poly(t, 2, 3));
        // Coefficients of the second block must not depend on the first block's directions.
        for (std::size_t k : ij) coeff = coeff.substitute(t->geo_var(k), Rational(1));
        p = MultiVector::basis(t, ij, RF(t, g.small_rational())) + MultiVector::basis(t, rest, coeff);
        break;
      }
    }
    MultiVector pp = schouten(p, p);
    bool oracle = jacobi_by_cyclic_sums(p);
    poisson += oracle;
    if (pp.is_zero() != oracle) r.fail("[P,P] = 0 disagrees with cyclic sums for " + describe(p));
    if (jacobi_check(p).pass != oracle) r.fail("jacobi_check disagrees with cyclic sums for " + describe(p));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        for (std::size_t k = j + 1; k < 4; ++k) {
          if (!(pp.at({i, j, k}) == cyclic_sum(p, i, j, k) * Rational(2))) {
            r.fail("[P,P]^{ijk} != 2 * cyclic sum for " + describe(p));
          }
        }
      }
    }
  }
  if (poisson == 0 || poisson == cases) r.fail("generator produced only one class of bivectors");
  return r;
}

PropertyResult sigma_criterion(std::uint64_t seed, int cases) {
  PropertyResult r{"[sharp s, sharp s] = 0 iff delta(s^s) = 2 s^delta(s)"};
  Gen g(seed);
  SymplecticAnchor anchor = standard_r4();
  const auto& t = anchor.table;
  int poisson = 0;
  for (int n = 0; n < cases; ++n, ++r.cases) {
    Form sigma(t, 2);
    switch (n % 3) {
      case 0:
        sigma = g.form(t, 2, 2, 4);
        break;
      case 1:
        sigma = Form::basis(t, g.ordinals(4, 2), RF(g.poly(t, 2, 3)));
        break;
      default:
        sigma = g.form(t, 2, 0, 6);
        break;
    }
    MultiVector pi = sharp(anchor, sigma);
    bool jacobi = schouten(pi, pi).is_zero();
    Form lhs = codifferential(anchor, wedge(sigma, sigma));
    Form rhs = wedge(sigma, codifferential(anchor, sigma)).scaled(num(t, 2));
    bool criterion = lhs == rhs;
    poisson += jacobi;
    if (jacobi != criterion) r.fail("criterion disagrees with Jacobi for sigma = " + describe(sigma));
  }
  if (poisson == 0 || poisson == cases) r.fail("generator produced only one class of 2-forms");
  return r;
}

PropertyResult bracket_antisymmetry(std::uint64_t seed, int cases) {
  PropertyResult r{"{f,g} + {g,f} = 0"};
  Gen g(seed);
  SymplecticAnchor anchor = standard_r4();
  const auto& t = anchor.table;
  for (int n = 0; n < cases; ++n, ++r.cases) {
    RF f = g.rf(t, 3, 4), h = g.rf(t, 3, 4);
    RF sum = bracket(anchor.lambda_bi, f, h) + bracket(anchor.lambda_bi, h, f);
    if (!sum.is_zero()) r.fail("{f,g} + {g,f} = " + show(sum));
    if (!(bracket(anchor.lambda_bi, f, h) == direct_bracket(anchor.lambda_bi, f, h))) {
      r.fail("bracket differs from the component formula for f = " + show(f));
    }
  }
  return r;
}

PropertyResult flat_sharp_identity(std::uint64_t seed, int cases) {
  PropertyResult r{"flat . sharp = id and sharp . flat = id"};
  Gen g(seed);
  TablePtr t = coords({"x1", "x2", "y1", "y2"});
  for (int n = 0; n < cases; ++n, ++r.cases) {
    MultiVector lam = canonical_bivector(t, {{"x1", "y1"}, {"x2", "y2"}}) +
                      MultiVector::basis(t, g.ordinals(4, 2), RF(g.poly(t, 1, 2)));
    SymplecticAnchor anchor;
    try {
      anchor = build_symplectic(lam);
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate) throw;
      --r.cases;
      continue;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!(flat(anchor, sharp(anchor, one_form_basis(t, i))) == one_form_basis(t, i))) {
        r.fail("flat(sharp(dx_" + std::to_string(i + 1) + ")) for Lambda = " + describe(lam));
      }
      if (!(sharp(anchor, flat(anchor, vector_basis(t, i))) == vector_basis(t, i))) {
        r.fail("sharp(flat(d/dx_" + std::to_string(i + 1) + ")) for Lambda = " + describe(lam));
      }
    }
  }
  return r;
}

PropertyResult cosymplectic_identities(std::uint64_t seed, int cases) {
  PropertyResult r{"i_E vartheta = 1, i_E Theta = 0, Lambda#(vartheta) = 0"};
  Gen g(seed);
  TablePtr t = coords({"x", "y", "z"});
  for (int n = 0; n < cases; ++n, ++r.cases) {
    Form vartheta = Form::basis(t, {2}, num(t, 1) + RF(g.poly(t, 1, 2))) + Form::basis(t, {0}, RF(g.poly(t, 1, 2)));
    Form theta = Form::basis(t, {0, 1}, num(t, 1) + RF(g.poly(t, 1, 2))) + Form::basis(t, {1, 2}, RF(g.poly(t, 1, 2)));
    CosymplecticAnchor a;
    try {
      a = build_cosymplectic(vartheta, theta);
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_volume) throw;
      --r.cases;
      continue;
    }
    if (!(interior(a.reeb, a.vartheta).value() == num(t, 1))) r.fail("i_E vartheta != 1 for " + describe(vartheta));
    if (!interior(a.reeb, a.theta).is_zero()) r.fail("i_E Theta != 0 for " + describe(theta));
    if (!sharp(a.lambda_bi, a.vartheta).is_zero()) r.fail("Lambda#(vartheta) != 0 for " + describe(vartheta));
  }
  return r;
}

PropertyResult lift_reduce_round_trip(std::uint64_t seed, int cases) {
  PropertyResult r{"reduce(sharp'(sigma + tau^ds)) exists for s-free semi-basic sigma, tau"};
  Gen g(seed);
  TablePtr t = coords({"x", "y", "u", "v", "z"});
  Form vartheta = Form::basis(t, {4}, num(t, 1));
  Form theta = Form::basis(t, {0, 1}, num(t, 1)) + Form::basis(t, {2, 3}, num(t, 1));
  LiftedAnchor lifted = lift(build_cosymplectic(vartheta, theta));
  const auto& lt = lifted.lifted.table;
  Form ds = Form::basis(lt, {lifted.s_ordinal}, num(lt, 1));
  TablePtr semi = coords({"x", "y", "u", "v"});
  for (int n = 0; n < cases; ++n, ++r.cases) {
    // Semi-basic data: no dz component. Coefficients may still involve z.
    Form sigma = g.form(semi, 2, 1, 3).rebase(lt);
    Form tau = g.form(semi, 1, 1, 2).rebase(lt);
    auto zvar = lt->index_of("z");
    Form bumped(lt, 2);
    for (const auto& [s, c] : sigma.components()) bumped.add_component(s, c * RF(Polynomial::variable(lt, zvar)));
    Form total = (g.coin() ? sigma : bumped) + wedge(tau, ds);
    try {
      MultiVector base = reduce_bivector(sharp(lifted.lifted, total), t);
      (void)base;
    } catch (const Error& e) {
      r.fail(std::string("not reducible: ") + e.what());
    }
    // The s-dependent version must be rejected.
    Form dependent = total.scaled(RF(Polynomial::variable(lt, lt->index_of("s"))));
    if (!dependent.is_zero()) {
      try {
        reduce_bivector(sharp(lifted.lifted, dependent), t);
        r.fail("s-dependent bivector was reduced");
      } catch (const Error& e) {
        if (e.code() != Errc::not_reducible) r.fail(std::string("wrong error: ") + e.what());
      }
    }
  }
  return r;
}

PropertyResult jacobian_bracket_jacobi(std::uint64_t seed, int cases) {
  PropertyResult r{"Jacobi identity for Jacobian brackets"};
  Gen g(seed);
  for (int n = 0; n < cases; ++n, ++r.cases) {
    std::size_t dim = n % 2 ? 4 : 3;
    TablePtr t = coords(dim);
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), 0);
    Form volume = Form::basis(t, all, num(t, 1));
    std::vector<RF> cs;
    for (std::size_t c = 0; c + 2 < dim; ++c) cs.push_back(RF(g.nonzero_poly(t, 2, 3)));
    RF prefactor(g.nonzero_poly(t, 1, 2));
    auto br = [&](const RF& a, const RF& b) { return jacobian_bracket(cs, prefactor, volume, a, b); };
    std::vector<RF> x;
    for (std::size_t i = 0; i < dim; ++i) x.push_back(RF(Polynomial::variable(t, t->geo_var(i))));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) {
        for (std::size_t k = j + 1; k < dim; ++k) {
          RF jac = br(x[i], br(x[j], x[k])) + br(x[j], br(x[k], x[i])) + br(x[k], br(x[i], x[j]));
          if (!jac.is_zero()) {
            r.fail("cyclic sum " + show(jac) + " in dimension " + std::to_string(dim));
          }
        }
      }
    }
    for (const auto& c : cs) {
      for (const auto& xi : x) {
        if (!br(c, xi).is_zero()) r.fail("function is not a Casimir: " + show(c));
      }
    }
  }
  return r;
}

}  // namespace iforge::testing
