#include "matmean/scalar_lemmas.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace matmean;

namespace {

double eval(ScalarMap f, double x, double v = 0.5) { return f(x, v); }

}  // namespace

TEST(ScalarTableTest, NineVariantsParse) {
  const auto all = scalar_lemmas();
  ASSERT_EQ(all.size(), 9u);
  for (const auto& l : all) {
    ASSERT_TRUE(parse_scalar_lemma(l.name).has_value()) << l.name;
    EXPECT_EQ(*parse_scalar_lemma(l.name), l.id);
    EXPECT_FALSE(l.regions.empty());
  }
  EXPECT_FALSE(parse_scalar_lemma("S_NOPE").has_value());
  EXPECT_EQ(scalar_lemma(ScalarLemmaId::Remark).kind, ScalarKind::ExpectedToFail);
}

TEST(ScalarValuesTest, HandComputedPoints) {
  const auto& amgm = scalar_lemma(ScalarLemmaId::AmGm);
  // (a, b) = (4, 1).
  EXPECT_DOUBLE_EQ(eval(amgm.lower, 4), 0.28125);
  EXPECT_DOUBLE_EQ(eval(amgm.middle, 4), 0.5);
  EXPECT_DOUBLE_EQ(eval(amgm.upper, 4), 1.125);

  const auto& lv = scalar_lemma(ScalarLemmaId::LemmaV);
  EXPECT_DOUBLE_EQ(eval(lv.lower, 4), 0.28125);
  EXPECT_DOUBLE_EQ(eval(lv.middle, 4), 0.5);
  EXPECT_DOUBLE_EQ(eval(lv.upper, 4), 1.8);

  const auto& gh = scalar_lemma(ScalarLemmaId::GeometricHarmonic);
  EXPECT_DOUBLE_EQ(eval(gh.middle, 4), 0.4);
  EXPECT_DOUBLE_EQ(eval(gh.upper, 4), 0.5625);
}

TEST(ScalarValuesTest, IdentitiesVanishAtOne) {
  for (auto id : {ScalarLemmaId::SqrtIdentity, ScalarLemmaId::ArithmeticHarmonicIdentity}) {
    const auto& l = scalar_lemma(id);
    EXPECT_EQ(eval(l.middle, 1.0), 0.0);
    EXPECT_EQ(eval(l.upper, 1.0), 0.0);
  }
}

TEST(ScalarGridTest, DefaultGridShape) {
  const auto& r = scalar_lemma(ScalarLemmaId::LemmaV).regions.front();
  const auto g = default_grid(r);
  EXPECT_EQ(g.x_nodes().size(), 2000u);
  EXPECT_EQ(g.v_nodes().size(), 99u);
  EXPECT_GE(g.x_nodes().front(), 1.0);
  EXPECT_GT(g.v_nodes().front(), 0.0);
  EXPECT_LT(g.v_nodes().back(), 1.0);
}

TEST(ScalarGridTest, StatementsThatHoldPass) {
  for (auto id : {ScalarLemmaId::AmGm, ScalarLemmaId::SqrtIdentity, ScalarLemmaId::LemmaV,
                  ScalarLemmaId::LemmaVi, ScalarLemmaId::LemmaV2, ScalarLemmaId::GeometricHarmonic,
                  ScalarLemmaId::ArithmeticHarmonicIdentity}) {
    for (const auto& r : check_scalar_lemma_default(id)) {
      EXPECT_TRUE(r.passed) << scalar_lemma(id).name << " " << r.region << " worst " << r.worst
                            << " at x=" << r.worst_x << " v=" << r.worst_v;
      EXPECT_EQ(r.violations, 0);
      EXPECT_GT(r.points, 0);
    }
  }
}

TEST(ScalarGridTest, WeightedGeometricHarmonicFailsAboveOneHalf) {
  const auto& region = scalar_lemma(ScalarLemmaId::GeometricHarmonicWeighted).regions.front();
  GridSpec upper = default_grid(region);
  upper.v = Interval{0.5, 1.0};
  const auto bad = check_scalar_lemma(ScalarLemmaId::GeometricHarmonicWeighted, upper);
  EXPECT_FALSE(bad.passed);
  EXPECT_GT(bad.violations, 0);
  EXPECT_GT(bad.worst_v, 0.5);

  GridSpec lower = default_grid(region);
  lower.v = Interval{0.0, 0.5};
  EXPECT_TRUE(check_scalar_lemma(ScalarLemmaId::GeometricHarmonicWeighted, lower).passed);

  // x = 100, v = 0.9: 53.92 > 6.99.
  const auto& l = scalar_lemma(ScalarLemmaId::GeometricHarmonicWeighted);
  EXPECT_NEAR(l.middle(100, 0.9), 53.92, 0.01);
  EXPECT_NEAR(l.upper(100, 0.9), 6.99, 0.01);
}

TEST(ScalarGridTest, GridOutsideDomainRejected) {
  GridSpec g;
  g.x = Interval{0.5, 2.0};
  g.v = Interval{0.0, 1.0};
  EXPECT_THROW(check_scalar_lemma(ScalarLemmaId::LemmaV, g), std::invalid_argument);
}

TEST(DerivativeTest, ClosedFormsMatchFiniteDifferences) {
  for (auto id : {ScalarLemmaId::LemmaV, ScalarLemmaId::LemmaVi, ScalarLemmaId::LemmaV2,
                  ScalarLemmaId::GeometricHarmonic}) {
    const auto results = check_derivative_formulas(id);
    EXPECT_FALSE(results.empty()) << scalar_lemma(id).name;
    for (const auto& r : results) {
      EXPECT_TRUE(r.passed) << r.function << " " << r.region << " mismatches " << r.mismatches
                            << " signs " << r.sign_violations << " anchors " << r.anchor_violations
                            << " worst " << r.worst_relative_error;
      EXPECT_LE(r.worst_relative_error, kFiniteDifferenceTolerance);
    }
  }
}

TEST(DerivativeTest, LemmaVProofFunctionVanishesAtOne) {
  const auto sets = closed_form_derivatives(ScalarLemmaId::LemmaV);
  ASSERT_FALSE(sets.empty());
  for (const auto& f : sets.front().functions) {
    if (f.name != "S_LEMMA_V.g") continue;
    for (double v : {0.1, 0.5, 0.9}) {
      EXPECT_NEAR(static_cast<double>(f.value(1.0L, v)), 0.0, 1e-15);
      if (f.first) EXPECT_NEAR(f.first(1.0, v), 0.0, 1e-15);
    }
  }
}

TEST(DerivativeTest, SecondDerivativeAtTwoPointSeven) {
  for (const auto& set : closed_form_derivatives(ScalarLemmaId::LemmaV)) {
    for (const auto& f : set.functions) {
      if (!f.second || f.in_v) continue;
      const long double h = 1e-4L, x = 2.0L, v = 0.7L;
      const long double fd = (f.value(x + h, v) - 2 * f.value(x, v) + f.value(x - h, v)) / (h * h);
      const double closed = f.second(2.0, 0.7);
      EXPECT_NEAR(static_cast<double>(fd), closed, 1e-5 * std::max(1.0, std::abs(closed))) << f.name;
    }
  }
}

TEST(DerivativeTest, LemmaV2ProofFunctionSlopeAtZeroIsUnbounded) {
  // f(x) = (1-v) + v x - x^v - v(1-v)(1-x)^2/(1+x): the slope as x -> 0+ is
  // dominated by -v x^(v-1), so no finite value at 0 exists for v < 1.
  auto f = [](double x, double v) {
    return (1 - v) + v * x - std::pow(x, v) - v * (1 - v) * (1 - x) * (1 - x) / (1 + x);
  };
  const double v = 0.7;
  const double slope_small = (f(2e-12, v) - f(1e-12, v)) / 1e-12;
  const double slope_smaller = (f(2e-14, v) - f(1e-14, v)) / 1e-14;
  EXPECT_LT(slope_small, -1e2);
  EXPECT_LT(slope_smaller, slope_small);
}

TEST(PolynomialIdentityTest, GeometricHarmonicFactorization) {
  for (double x : {0.01, 0.5, 1.0, 2.0, 7.5, 100.0}) EXPECT_LE(gh_polynomial_identity_residual(x), 1e-14);
}

TEST(RemarkTest, WitnessNearOnePointOne) {
  const auto p = remark_parts(1.1, 0.9);
  EXPECT_NEAR(p.lhs, 4.34e-4, 1e-6);
  EXPECT_NEAR(p.rhs, 4.29e-4, 1e-6);
  EXPECT_GT(p.gap(), 1e-7);
  const auto one = remark_parts(1.0, 0.7);
  EXPECT_EQ(one.lhs, 0.0);
  EXPECT_EQ(one.rhs, 0.0);
}

TEST(RemarkTest, SearchFindsPersistentViolationInBothRegimes) {
  const auto i = search_remark_counterexample({1.0, 2.0}, {0.5, 1.0}, 200);
  ASSERT_TRUE(i.has_value());
  EXPECT_EQ(i->regime, "i");
  EXPECT_GE(i->gap, 1e-7);
  EXPECT_GE(i->gap, i->grid_gap);
  EXPECT_TRUE(i->persists);
  EXPECT_NEAR(remark_parts(i->x, i->v).gap(), i->gap, 1e-15);

  const auto ii = search_remark_counterexample({1e-3, 1.0}, {0.0, 0.5}, 200);
  ASSERT_TRUE(ii.has_value());
  EXPECT_EQ(ii->regime, "ii");
  EXPECT_TRUE(ii->persists);
}

TEST(RemarkTest, BoxAroundWitnessContainsViolation) {
  const auto p = search_remark_counterexample({1.05, 1.15}, {0.85, 0.95}, 200);
  ASSERT_TRUE(p.has_value());
  EXPECT_NEAR(p->x, 1.1, 0.051);
  EXPECT_NEAR(p->v, 0.9, 0.051);
  EXPECT_TRUE(remark_violation_persists(1.1, 0.9, {1.05, 1.15}, {0.85, 0.95}, 200));
}

TEST(RemarkTest, NoViolationOnTheLineVOneHalf) {
  EXPECT_FALSE(search_remark_counterexample({1.0, 10.0}, {0.5, 0.5}, 400).has_value());
}

TEST(RemarkTest, RangesOutsideRegimesRejected) {
  EXPECT_THROW(search_remark_counterexample({0.5, 2.0}, {0.5, 1.0}, 50), std::invalid_argument);
  EXPECT_THROW(search_remark_counterexample({1.0, 2.0}, {0.2, 0.8}, 50), std::invalid_argument);
}
