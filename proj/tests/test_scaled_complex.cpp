#include "qstokes/scaled_complex.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace qstokes;
using test::rel;

TEST(ScaledComplex, ZeroAndDefault) {
  ScaledComplex z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.to_complex(), cplx(0.0));
  EXPECT_EQ(z.log2_abs(), -std::numeric_limits<double>::infinity());
  EXPECT_TRUE(ScaledComplex(0.0) == z);
}

TEST(ScaledComplex, MantissaIsNormalized) {
  for (double v : {1e-300, 3.0, -7.5e200, 0.5, 0.999}) {
    const ScaledComplex s(cplx(v, v / 3.0));
    const double m = std::abs(s.mantissa());
    EXPECT_GE(m, 0.5);
    EXPECT_LT(m, 1.0);
    EXPECT_LT(rel(s.to_complex(), cplx(v, v / 3.0)), 1e-15);
  }
}

TEST(ScaledComplex, ArithmeticMatchesComplexProperty) {
  auto g = test::rng(11);
  for (int i = 0; i < 500; ++i) {
    const cplx a(test::uniform(g, -50, 50), test::uniform(g, -50, 50));
    const cplx b(test::uniform(g, -50, 50), test::uniform(g, -50, 50));
    const ScaledComplex sa(a), sb(b);
    EXPECT_LT(rel((sa * sb).to_complex(), a * b), 4e-16);
    EXPECT_LT(rel((sa / sb).to_complex(), a / b), 4e-16);
    const double scale = std::abs(a) + std::abs(b);
    EXPECT_LT(std::abs((sa + sb).to_complex() - (a + b)), 4e-16 * scale);
    EXPECT_LT(std::abs((sa - sb).to_complex() - (a - b)), 4e-16 * scale);
  }
}

TEST(ScaledComplex, ExtremeMagnitudesStayFinite) {
  const ScaledComplex huge = ScaledComplex::from_log({20000.0, 0.3});
  const ScaledComplex tiny = ScaledComplex::from_log({-20000.0, -0.3});
  EXPECT_TRUE(huge.is_finite());
  EXPECT_NEAR(huge.log_abs(), 20000.0, 1e-9);
  // log-domain construction carries |log| * eps relative error
  EXPECT_LT(rel((huge * tiny).to_complex(), cplx(1.0)), 20000.0 * 4e-16);
  EXPECT_EQ(huge.abs(), std::numeric_limits<double>::infinity());
  EXPECT_EQ(tiny.to_complex(), cplx(0.0));
  // A summand 2^-100 below the other is absorbed.
  EXPECT_TRUE(huge + ScaledComplex::from_parts(1.0, huge.exp2() - 100) == huge);
}

TEST(ScaledComplex, LogConjInverse) {
  const cplx z(-2.0, 0.5);
  const ScaledComplex s(z);
  EXPECT_LT(rel(s.log(), std::log(z)), 1e-15);
  EXPECT_EQ(s.conj().to_complex(), std::conj(z));
  EXPECT_LT(rel(s.inverse().to_complex(), 1.0 / z), 1e-15);
  EXPECT_LT(rel((-s).to_complex(), -z), 1e-16);
}

TEST(ScaledComplex, RelativeDifference) {
  EXPECT_EQ(relative_difference(ScaledComplex(1.0), ScaledComplex(1.0)), 0.0);
  EXPECT_NEAR(relative_difference(ScaledComplex(1.0), ScaledComplex(1.1)), 0.1 / 1.1, 1e-15);
  EXPECT_EQ(relative_difference(ScaledComplex(), ScaledComplex()), 0.0);
  EXPECT_EQ(relative_difference(ScaledComplex(1e-310), ScaledComplex(-1e-310)), 0.0);
  const ScaledComplex big = ScaledComplex::from_log({5000.0, 0.0});
  EXPECT_NEAR(relative_difference(big, big * ScaledComplex(1.0 + 1e-10)), 1e-10, 1e-15);
}
