#include <gtest/gtest.h>

#include "generators.hpp"
#include "iforge/anchor.hpp"
#include "iforge/errors.hpp"
#include "iforge/fixtures.hpp"
#include "iforge/symexpr.hpp"
#include "properties.hpp"

using namespace iforge;
using iforge::testing::coords;
using iforge::testing::num;
using iforge::testing::var;

namespace {

Form d(const TablePtr& t, std::size_t i) { return Form::basis(t, {i}, num(t, 1)); }
MultiVector del(const TablePtr& t, std::size_t i) { return MultiVector::basis(t, {i}, num(t, 1)); }

SymplecticAnchor lagrange_anchor() {
  TablePtr t = coords({"x1", "x2", "x3", "y1", "y2", "y3"});
  return build_symplectic(canonical_bivector(t, {{"x1", "y1"}, {"x2", "y2"}, {"x3", "y3"}}));
}

SymplecticAnchor plane() {
  TablePtr t = coords({"x", "y"});
  return build_symplectic(canonical_bivector(t, {{"x", "y"}}));
}

CosymplecticAnchor toda_base() {
  TablePtr t = coords({"a1", "a2", "b1", "b2", "b3"});
  return build_cosymplectic(d(t, 4), wedge(d(t, 0), d(t, 2)) + wedge(d(t, 1), d(t, 3)));
}

}  // namespace

TEST(BuildSymplectic, LagrangeVolume) {
  auto a = lagrange_anchor();
  EXPECT_EQ(a.n, 3u);
  EXPECT_EQ(a.volume, Form::basis(a.table, {0, 1, 2, 3, 4, 5}, num(a.table, -1)));
}

TEST(BuildSymplectic, PlaneFormInvertsBracket) {
  auto a = plane();
  const auto& t = a.table;
  iforge::testing::Gen g(3);
  for (int n = 0; n < 10; ++n) {
    RF f = g.rf(t, 3, 3), h = g.rf(t, 3, 3);
    MultiVector xf = hamiltonian_vf(a.lambda_bi, f), xh = hamiltonian_vf(a.lambda_bi, h);
    EXPECT_EQ(pairing(a.omega, wedge(xf, xh)), bracket(a.lambda_bi, f, h));
  }
}

TEST(BuildSymplectic, PolynomialEntriesInvert) {
  TablePtr t = coords({"x1", "x2", "y1", "y2"});
  MultiVector lam = canonical_bivector(t, {{"x1", "y1"}, {"x2", "y2"}}).scaled(num(t, 1) + var(t, "x1").pow(2)) +
                    wedge(del(t, 0), del(t, 1)).scaled(var(t, "y2"));
  auto a = build_symplectic(lam);
  // Oracle: the component matrices of Lambda and -omega are mutually inverse.
  RfMatrix l = bivector_matrix(a.lambda_bi);
  RfMatrix w = two_form_matrix(a.omega);
  RfMatrix prod = l * w;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(prod(i, k), num(t, i == k ? -1 : 0));
  }
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(sharp(a, flat(a, del(t, i))), del(t, i));
}

TEST(BuildSymplectic, Errors) {
  TablePtr t3 = coords(3);
  try {
    build_symplectic(wedge(del(t3, 0), del(t3, 1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::odd_dimension);
  }
  TablePtr t4 = coords(4);
  try {
    build_symplectic(wedge(del(t4, 0), del(t4, 1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate);
  }
  try {
    build_symplectic(del(t4, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degree);
  }
}

TEST(BuildCosymplectic, Toda) {
  auto a = toda_base();
  const auto& t = a.table;
  EXPECT_EQ(a.lambda_bi, wedge(del(t, 0), del(t, 2)) + wedge(del(t, 1), del(t, 3)));
  EXPECT_EQ(a.reeb, del(t, 4));
  EXPECT_EQ(a.volume, Form::basis(t, {0, 1, 2, 3, 4}, num(t, -1)));
}

TEST(BuildCosymplectic, CanonicalR3) {
  TablePtr t = coords({"x", "y", "z"});
  auto a = build_cosymplectic(d(t, 2), wedge(d(t, 0), d(t, 1)));
  EXPECT_EQ(a.reeb, del(t, 2));
  EXPECT_EQ(a.lambda_bi, wedge(del(t, 0), del(t, 1)));
  try {
    build_cosymplectic(d(t, 0), wedge(d(t, 0), d(t, 1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::degenerate_volume);
  }
}

TEST(Sharp, LagrangeHamiltonianFields) {
  auto a = lagrange_anchor();
  const auto& t = a.table;
  EXPECT_EQ(sharp(a, differential(var(t, "y3"))), del(t, 2).scaled(num(t, -1)));
  EXPECT_TRUE(sharp(a, differential(num(t, 7))).is_zero());
  // X_{f1} = 2 x_i d/dy_i.
  RF f1(parse_expr("x1^2 + x2^2 + x3^2", t));
  MultiVector expected(t, 1);
  for (std::size_t i = 0; i < 3; ++i) expected += del(t, i + 3).scaled(var(t, t->name(i)) * Rational(2));
  EXPECT_EQ(sharp(a, differential(f1)), expected);
}

TEST(Sharp, NotSemiBasic) {
  auto a = toda_base();
  try {
    sharp(a, a.vartheta);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_semi_basic);
  }
  EXPECT_EQ(sharp(a, d(a.table, 0)), del(a.table, 2));
}

TEST(Star, UnitAndVolume) {
  auto a = lagrange_anchor();
  const auto& t = a.table;
  EXPECT_EQ(star(a, Form::scalar(num(t, 1))), a.volume);
  // sharp(Omega) = d/dx1^...^d/dy3, so the full contraction with Omega is 1.
  EXPECT_EQ(star(a, a.volume), Form::scalar(num(t, 1)));
}

TEST(Codifferential, Basics) {
  auto a = plane();
  const auto& t = a.table;
  EXPECT_TRUE(codifferential(a, Form::scalar(var(t, "x"))).is_zero());
  // *(x dy) = i_{-x d/dx}(dx^dy) = -x dy, d of that is -dx^dy, and *(dx^dy) = 1.
  EXPECT_EQ(codifferential(a, d(t, 1).scaled(var(t, "x"))), Form::scalar(num(t, -1)));
}

TEST(Codifferential, LagrangeSigmaCondition) {
  auto fx = load_fixture("lagrange_top");
  Instance in = build_instance(fx.spec);
  const auto& anchor = std::get<SymplecticAnchor>(in.anchor);
  Form s0 = *in.sigma0;
  Form residual = codifferential(anchor, wedge(s0, s0)) - wedge(s0, codifferential(anchor, s0)).scaled(num(in.table, 2));
  EXPECT_TRUE(residual.is_zero()) << describe(residual);
}

TEST(HamiltonianVf, TodaAndLagrange) {
  auto toda = load_fixture("toda_first");
  Instance ti = build_instance(toda.spec);
  const auto& bt = ti.base_table;
  MultiVector pi0 = bivector_from_matrix(ti.matrix(toda.spec.expected["Pi0"], bt));
  RF f1 = ti.entry("f1").rebase(bt);
  // Flaschka equations, with the flow of h given by x' = {x,h} = -Pi#(dh).
  MultiVector flow(bt, 1);
  const char* comps[] = {"a1*(b2 - b1)", "a2*(b3 - b2)", "2*a1^2", "2*(a2^2 - a1^2)", "-2*a2^2"};
  for (std::size_t i = 0; i < 5; ++i) flow += del(bt, i).scaled(RF(parse_expr(comps[i], bt)));
  EXPECT_EQ(hamiltonian_vf(pi0, f1), flow.scaled(num(bt, -1)));
  EXPECT_TRUE(hamiltonian_vf(pi0, num(bt, 3)).is_zero());

  auto lag = load_fixture("lagrange_top");
  Instance li = build_instance(lag.spec);
  MultiVector p0 = bivector_from_matrix(li.matrix(lag.spec.expected["Pi0"], li.table));
  MultiVector eom = hamiltonian_vf(p0, li.entry("f3")).scaled(num(li.table, -1));
  EXPECT_EQ(eom.at({0}), RF(parse_expr("y3*x2 - y2*x3", li.table)));
  EXPECT_EQ(eom.at({3}), RF(parse_expr("2*x2", li.table)));
}

TEST(Lift, Toda) {
  auto lifted = lift(toda_base());
  const auto& t = lifted.lifted.table;
  ASSERT_EQ(t->dim(), 6u);
  std::size_t s = lifted.s_ordinal;
  EXPECT_EQ(t->name(t->geo_var(s)), "s");
  MultiVector expected = wedge(del(t, 0), del(t, 2)) + wedge(del(t, 1), del(t, 3)) + wedge(del(t, s), del(t, 4));
  EXPECT_EQ(lifted.lifted.lambda_bi, expected);
}

TEST(Lift, CanonicalR3) {
  TablePtr t = coords({"x", "y", "z"});
  auto lifted = lift(build_cosymplectic(d(t, 2), wedge(d(t, 0), d(t, 1))));
  const auto& lt = lifted.lifted.table;
  std::size_t s = lifted.s_ordinal;
  EXPECT_EQ(lifted.lifted.omega, wedge(d(lt, 0), d(lt, 1)) + wedge(d(lt, s), d(lt, 2)));
}

TEST(DecomposePrime, Cases) {
  auto lifted = lift(toda_base());
  const auto& t = lifted.lifted.table;
  std::size_t s = lifted.s_ordinal;
  Form ds = d(t, s);
  Form tau = d(t, 0).scaled(var(t, "b1"));
  auto pure = decompose_prime(wedge(tau, ds));
  EXPECT_TRUE(pure.sigma.is_zero());
  EXPECT_EQ(pure.tau, tau);
  Form sigma = wedge(d(t, 0), d(t, 2));
  auto plain = decompose_prime(sigma);
  EXPECT_EQ(plain.sigma, sigma);
  EXPECT_TRUE(plain.tau.is_zero());
}

TEST(DecomposePrime, TodaFirstSelection) {
  auto fx = load_fixture("toda_first");
  Instance in = build_instance(fx.spec);
  const auto& t = in.table;
  Form s0 = *in.sigma0;
  auto parts = decompose_prime(s0);
  // Hand separation: sigma'_0 = -a1 (da1 - da2)^db1 - a2 (da2 - ds)^db2.
  Form sigma = wedge(d(t, 0) - d(t, 1), d(t, 2)).scaled(-var(t, "a1")) - wedge(d(t, 1), d(t, 3)).scaled(var(t, "a2"));
  EXPECT_EQ(parts.sigma, sigma);
  EXPECT_EQ(parts.tau, d(t, 3).scaled(-var(t, "a2")));
  EXPECT_EQ(parts.sigma + wedge(parts.tau, d(t, t->geo_ordinal("s").value())), s0);
}

TEST(ReduceBivector, Cases) {
  auto lifted = lift(toda_base());
  const auto& t = lifted.lifted.table;
  const auto& base = lifted.base.table;
  EXPECT_TRUE(reduce_bivector(MultiVector(t, 2), base).is_zero());
  try {
    reduce_bivector(lifted.lifted.lambda_bi, base);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_reducible);
    EXPECT_NE(std::string(e.what()).find("s"), std::string::npos);
  }
  try {
    reduce_bivector(wedge(del(t, 0), del(t, 2)).scaled(var(t, "s")), base);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_reducible);
  }
}

TEST(AnchorProperties, SigmaCriterionOnR4) {
  auto r = iforge::testing::sigma_criterion(31);
  EXPECT_TRUE(r.pass()) << r.witness;
  EXPECT_EQ(r.cases, 30);
}

TEST(AnchorProperties, BracketAntisymmetry) {
  auto r = iforge::testing::bracket_antisymmetry(32);
  EXPECT_TRUE(r.pass()) << r.witness;
}

TEST(AnchorProperties, FlatSharpIdentity) {
  auto r = iforge::testing::flat_sharp_identity(33);
  EXPECT_TRUE(r.pass()) << r.witness;
}

TEST(AnchorProperties, CosymplecticIdentities) {
  auto r = iforge::testing::cosymplectic_identities(34);
  EXPECT_TRUE(r.pass()) << r.witness;
}

TEST(AnchorProperties, LiftReduceRoundTrip) {
  auto r = iforge::testing::lift_reduce_round_trip(35);
  EXPECT_TRUE(r.pass()) << r.witness;
}
