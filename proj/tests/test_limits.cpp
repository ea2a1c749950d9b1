#include "qstokes/limits.hpp"

#include <numbers>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace qstokes;

TEST(Limits, DyadicScheduleAndTrend) {
  const auto qs = dyadic_schedule(4, 6);
  ASSERT_EQ(qs.size(), 3u);
  EXPECT_EQ(qs[0], 0.9375);
  EXPECT_EQ(qs[2], 1.0 - 1.0 / 64.0);
  EXPECT_NEAR(tail_trend_ratio({4.0, 2.0, 1.0}), 0.5, 0.0);
  EXPECT_GT(tail_trend_ratio({1.0, 2.0, 1.0}), 1.0);
  EXPECT_TRUE(trend_report("t", {3.0, 2.0, 1.0}).passed);
  EXPECT_FALSE(trend_report("t", {3.0, 1.0, 1.0}).passed);
  EXPECT_TRUE(trend_report("t", {0.0, 0.0, 0.0}).passed);
}

TEST(Limits, ClassicalRhsMatchesMpmath) {
  const ExponentParams ep{{0.3, 0.7, 1.1}, 1.9};
  EXPECT_REL(f31_limit_rhs_eval(ep, std::polar(4.0, std::numbers::pi / 6)).value,
             cplx(0.82196675139815474, -0.049105206434509959), 1e-12);
  try {
    f31_limit_rhs_eval(ep, -4.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::branch_violation);
  }
}

TEST(Limits, ThetaRatiosConverge) {
  const cplx alpha(0.4, 0.1), beta(1.2, -0.2), x = std::polar(1.7, -0.8);
  double prev1 = 1e300, prev2 = 1e300;
  for (const double q : dyadic_schedule(4, 10)) {
    const auto r = theta_ratio_limit_check(alpha, beta, x, QBase(q));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_LT(r[0].rel_err, prev1);
    EXPECT_LT(r[1].rel_err, prev2);
    prev1 = r[0].rel_err;
    prev2 = r[1].rel_err;
  }
  EXPECT_LT(prev1, 1e-3);
  EXPECT_LT(prev2, 1e-3);
  // Equal exponents: both ratios are exactly 1 at every q.
  const auto exact = theta_ratio_limit_check(0.6, 0.6, x, QBase(0.7));
  EXPECT_EQ(exact[0].rel_err, 0.0);
  EXPECT_LT(exact[1].rel_err, 1e-15);
}

TEST(Limits, QGammaConverges) {
  const auto r = qgamma_limit_check(cplx(0.7, 0.3), dyadic_schedule(4, 10));
  ASSERT_EQ(r.size(), 8u);
  EXPECT_TRUE(r.back().passed);
  EXPECT_LT(r[6].rel_err, 2e-4);
}

TEST(Limits, F31LimitScanOnDefaultSample) {
  const auto rows = f31_limit_scan(LimitScanConfig{});
  ASSERT_EQ(rows.size(), 8u);
  // Prototype (mpmath) value at q = 1 - 2^-4.
  EXPECT_NEAR(rows[0].rel_err / 0.0052885, 1.0, 1e-3);
  EXPECT_LE(rows[6].rel_err, 5e-2);
  EXPECT_LT(rows[6].rel_err, 1e-4);
  EXPECT_TRUE(rows.back().passed);
  EXPECT_EQ(rows.back().check, "limit/f31/trend");
}

TEST(Limits, LambdaRobustness) {
  const CheckReport r = f31_limit_lambda_robustness(LimitScanConfig{}, std::polar(1.3, 0.4));
  EXPECT_TRUE(r.passed) << r.rel_err;
}

TEST(Limits, ConfigValidation) {
  LimitScanConfig cfg;
  cfg.q_schedule = {0.9, 0.8};
  EXPECT_THROW(cfg.validate(), Error);
  cfg.q_schedule = {0.9, 1.0};
  EXPECT_THROW(cfg.validate(), Error);
}
