#include <gtest/gtest.h>

#include "generators.hpp"
#include "iforge/errors.hpp"
#include "iforge/fixtures.hpp"
#include "iforge/symexpr.hpp"

using namespace iforge;
using iforge::testing::num;

namespace {

RF entry_of(const std::string& fixture, const char* key, std::size_t i, std::size_t j) {
  auto fx = load_fixture(fixture);
  Instance in = build_instance(fx.spec);
  return in.matrix(fx.spec.expected[key], in.base_table)(i, j);
}

}  // namespace

TEST(Fixtures, Names) {
  auto names = fixture_names();
  EXPECT_EQ(names, (std::vector<std::string>{"lagrange_top", "toda_first", "toda_second"}));
  for (const auto& n : names) EXPECT_EQ(load_fixture(n).name, n);
}

TEST(Fixtures, UnknownName) {
  try {
    load_fixture("kowalevski_top");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_fixture);
  }
}

TEST(Fixtures, SpotEntries) {
  auto fx = load_fixture("lagrange_top");
  Instance in = build_instance(fx.spec);
  const auto& t = in.base_table;
  EXPECT_EQ(entry_of("lagrange_top", "Pi1", 0, 1), RF(parse_expr("1/2*y3", t)));
  EXPECT_EQ(entry_of("lagrange_top", "Pi1", 0, 4), num(t, 1));

  auto td = load_fixture("toda_second");
  Instance ts = build_instance(td.spec);
  EXPECT_EQ(entry_of("toda_second", "Pi1", 0, 2), RF(parse_expr("2*a1*b1^2", ts.base_table)));

  auto tf = load_fixture("toda_first");
  Instance ti = build_instance(tf.spec);
  EXPECT_EQ(ti.expr(tf.spec.expected["g_lambda"].get<std::string>()),
            RF(parse_expr("a1*b1 + a2*b2 - (a1 + a2)*lambda", ti.table)));
}

TEST(Fixtures, SerializationRoundTrip) {
  for (const auto& n : fixture_names()) {
    auto fx = load_fixture(n);
    Json once = to_json(fx.spec);
    SpecFile again = parse_spec(once);
    EXPECT_EQ(to_json(again).dump(), once.dump()) << n;
    EXPECT_EQ(parse_spec_text(fx.text).name, n);
  }
}

TEST(Fixtures, LagrangeGeneralAndSpecialCase) {
  auto fx = load_fixture("lagrange_top");
  Instance general = build_instance(fx.spec, false);
  Instance special = build_instance(fx.spec, true);
  EXPECT_FALSE(general.special_case_applied);
  EXPECT_TRUE(special.special_case_applied);
  RF f3g = general.entry("f3");
  RF f3s = special.entry("f3");
  EXPECT_EQ(f3g, RF(parse_expr("1/2*(y1^2 + y2^2 + l3*y3^2) + m3*x3", general.table)));
  EXPECT_EQ(f3s, RF(parse_expr("1/2*(y1^2 + y2^2 + y3^2) + 2*x3", special.table)));
}

TEST(Fixtures, SigmaOneFromBasisEqualsExpandedForm) {
  auto fx = load_fixture("lagrange_top");
  Instance in = build_instance(fx.spec);
  const auto& eta = in.one_forms;
  Form expanded = wedge(eta.at("eta1"), eta.at("eta4")).scaled(RF(in.table, Rational(-1, 2))) +
                  wedge(eta.at("eta2"), eta.at("eta3")).scaled(RF(in.table, Rational(1, 2))) +
                  wedge(eta.at("eta3"), eta.at("eta4")).scaled(RF(parse_expr("1/2*y3", in.table)));
  EXPECT_EQ(*in.sigma1, expanded);
}

// The stored F(lambda) is kept as recorded. The pairing of the
// differentials of lambda f1 + f3 and lambda f2 + f4 differs from it by 4 lambda x3.
TEST(Fixtures, LagrangeDisplayedFDiffersFromPairing) {
  auto fx = load_fixture("lagrange_top");
  Instance in = build_instance(fx.spec);
  RF shown = in.expr(fx.spec.expected["F_lambda"].get<std::string>());
  RF lambda = in.expr("lambda");
  RF f1 = lambda * in.entry("f1") + in.entry("f3"), f2 = lambda * in.entry("f2") + in.entry("f4");
  const auto& anchor = std::get<SymplecticAnchor>(in.anchor);
  RF paired = pairing(wedge(differential(f1), differential(f2)), anchor.lambda_bi);
  EXPECT_EQ(paired - shown, RF(parse_expr("4*lambda*x3", in.table)));
}

TEST(Fixtures, TodaSecondReferencesMatchFirst) {
  auto second = load_fixture("toda_second");
  auto first = load_fixture("toda_first");
  const Json& refs = second.spec.expected["references"];
  EXPECT_EQ(refs["Pi0_first"], first.spec.expected["Pi0"]);
  EXPECT_EQ(refs["Pi1_first"], first.spec.expected["Pi1"]);
}
