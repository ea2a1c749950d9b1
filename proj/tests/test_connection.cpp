#include "qstokes/connection.hpp"

#include <numbers>

#include <gtest/gtest.h>

#include "qstokes/resummation.hpp"
#include "test_util.hpp"

using namespace qstokes;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected qstokes::Error";
  return ErrorKind::invalid_argument;
}

const QBase kQ(0.5);
ParamSet3 defaults() { return {kQ.pow(0.3), kQ.pow(0.7), kQ.pow(1.1), kQ.pow(0.4), kQ}; }

}  // namespace

TEST(Connection, PrefactorsMatchMpmath) {
  const ParamSet3 p = defaults();
  EXPECT_REL(connection_prefactor(p, 0).value, cplx(0.58815801156279357), 1e-13);
  EXPECT_REL(connection_prefactor(p, 1).value, cplx(1.9904956769480259), 1e-13);
  EXPECT_REL(connection_prefactor(p, 2).value, cplx(-3.5777411375964551), 1e-13);
}

TEST(Connection, Watson) {
  const cplx a = kQ.pow(0.3), b = kQ.pow(0.8), c = kQ.pow(1.6);
  const cplx x = std::polar(0.6, 0.5);
  const cplx want(1.1352415685167809, 0.16373592614048826);
  EXPECT_REL(phi_eval(PhiParams({a, b}, {c}, kQ), x).value, want, 1e-14);
  EXPECT_REL(watson_rhs_eval(a, b, c, kQ, x).value, want, 1e-12);
  EXPECT_EQ(kind_of([&] { watson_rhs_eval(a, b, c, kQ, 0.25); }), ErrorKind::prefactor_pole);
}

TEST(Connection, Slater) {
  const ParamSet3 p = defaults();
  const cplx b2 = kQ.pow(2.5);
  const cplx x = std::polar(0.6, 0.9);
  const cplx want(1.053173940355152, 0.27100381854479319);
  EXPECT_REL(slater_rhs_eval(p.a[0], p.a[1], p.a[2], p.b1, b2, kQ, x).value, want, 1e-12);
  EXPECT_THROW(slater_rhs_eval(p.a[0], p.a[1], p.a[2], p.b1, 0.0, kQ, x), Error);
}

TEST(Connection, DegenerateSlaterInsideAndOutsideTheDisc) {
  const ParamSet3 p = defaults();
  const DegenerateSlater lemma(p);
  EXPECT_REL(lemma(std::polar(0.7, 1.0)).value, cplx(1.0156972734310858, 0.24567246054424492), 1e-12);
  EXPECT_REL(lemma_ni_rhs_eval(p, std::polar(0.7, 1.0)).value, cplx(1.0156972734310858, 0.24567246054424492), 1e-12);
  EXPECT_EQ(kind_of([&] { lemma(2.0); }), ErrorKind::prefactor_pole);
  // Slater with b2 -> 0 approaches the degenerate formula.
  const cplx x = std::polar(0.6, 0.9);
  const double d = relative_difference(slater_rhs_eval(p.a[0], p.a[1], p.a[2], p.b1, 1e-7, kQ, x).value, lemma(x).value);
  EXPECT_LT(d, 1e-6);
}

TEST(Connection, MainRhsMatchesMpmathAndResummation) {
  const ParamSet3 p = defaults();
  const cplx lambda = std::polar(1.1, 0.7);
  const cplx x = std::polar(3.0, std::numbers::pi / 4);
  const cplx want(0.69178494973544054, -0.11653179200438688);
  EXPECT_REL(main_rhs_eval(p, lambda, x).value, want, 1e-13);
  ScaledComplex sum;
  for (int j = 0; j < 3; ++j) sum += main_rhs_term(p, j, lambda, x).value;
  EXPECT_REL(sum, want, 1e-13);
  // C_j v_j = main term.
  for (int j = 1; j <= 3; ++j) {
    const ScaledComplex cv = stokes_coeff_eval(p, j, lambda, x).value * v_sol_eval(p, j, x).value;
    EXPECT_REL(cv, main_rhs_term(p, j - 1, lambda, x).value.to_complex(), 1e-12);
  }
}

TEST(Connection, MainRhsDomain) {
  const ParamSet3 p = defaults();
  const cplx lambda = std::polar(1.1, 0.7);
  EXPECT_EQ(kind_of([&] { main_rhs_eval(p, lambda, -lambda * 4.0); }), ErrorKind::spiral_pole);
  EXPECT_EQ(kind_of([&] { main_rhs_eval(p, lambda, 0.5); }), ErrorKind::divergent_request);
}

TEST(Connection, StokesCoefficientsAreQElliptic) {
  const ParamSet3 p = defaults();
  const cplx lambda = std::polar(1.1, 0.7);
  auto g = test::rng(23);
  for (int i = 0; i < 30; ++i) {
    const cplx x = std::polar(test::uniform(g, 0.5, 4.0), test::uniform(g, -3.0, 3.0));
    if (spiral_contains(Spiral(-lambda, kQ), x, 0.05) || spiral_contains(Spiral(-1.0, kQ), x, 0.05)) continue;
    for (int j = 1; j <= 3; ++j) {
      const cplx c = stokes_coeff_eval(p, j, lambda, x).to_complex();
      EXPECT_REL(stokes_coeff_eval(p, j, lambda, 0.5 * x).value, c, 1e-11);
      EXPECT_REL(stokes_coeff_eval(p, j, 0.5 * lambda, x).value, c, 1e-11);
    }
  }
}

TEST(Equations, ConstantFunctionResidual) {
  const ParamSet3 p = defaults();
  const EquationParams e{p.a[0], p.a[1], p.a[2], p.b1, 0.0, kQ};
  for (const cplx x : {cplx(0.3), cplx(2, -1), cplx(-5, 0.5)}) {
    const Residual r = residual_eval(EquationId::third, [](cplx) { return ScaledComplex(1.0); }, e, x);
    EXPECT_REL(r.raw, -x * (1.0 - p.a[0]) * (1.0 - p.a[1]) * (1.0 - p.a[2]), 1e-13);
  }
}

TEST(Equations, SolutionsAtInfinityAndResummation) {
  const ParamSet3 p = defaults();
  const EquationParams e{p.a[0], p.a[1], p.a[2], p.b1, 0.0, kQ};
  for (int j = 1; j <= 3; ++j) {
    const ScalarFunction v = [&](cplx z) { return v_sol_eval(p, j, z).value; };
    EXPECT_LT(residual_eval(EquationId::third, v, e, std::polar(20.0, 0.4)).relative, 1e-12);
  }
  ResummationConfig cfg;
  const ScalarFunction f = [&](cplx z) { return f31_eval(p, z, cfg).value; };
  EXPECT_LT(residual_eval(EquationId::third, f, e, std::polar(1.5, 0.2)).relative, 1e-10);
  // A function that does not solve the equation.
  EXPECT_GT(residual_eval(EquationId::third, [](cplx z) { return ScaledComplex(z); }, e, 1.5).relative, 1e-3);
}

TEST(Equations, HeineAndThirdOrder) {
  const cplx b2 = kQ.pow(2.5);
  const ParamSet3 p = defaults();
  const EquationParams heine{kQ.pow(0.3), kQ.pow(0.8), 0.0, kQ.pow(1.6), 0.0, kQ};
  const EquationParams degenerate{p.a[0], p.a[1], p.a[2], p.b1, b2, kQ};
  const PhiParams s21({heine.a1, heine.a2}, {heine.b1}, kQ);
  const PhiParams s32({p.a[0], p.a[1], p.a[2]}, {p.b1, b2}, kQ);
  const cplx x = std::polar(0.4, -1.2);
  EXPECT_LT(residual_eval(EquationId::heine, [&](cplx z) { return phi_eval(s21, z).value; }, heine, x).relative, 1e-13);
  EXPECT_LT(residual_eval(EquationId::degenerate, [&](cplx z) { return phi_eval(s32, z).value; }, degenerate, x).relative, 1e-13);
}

TEST(Equations, FormalRecurrences) {
  const ParamSet3 p = defaults();
  const cplx b2 = kQ.pow(2.5);
  const EquationParams third{p.a[0], p.a[1], p.a[2], p.b1, 0.0, kQ};
  const EquationParams degenerate{p.a[0], p.a[1], p.a[2], p.b1, b2, kQ};
  EXPECT_TRUE(formal_recurrence_check(EquationId::third, phi31_coefficients(p), third, 40).passed);
  const CoeffSeq c32 = phi_coefficients(PhiParams({p.a[0], p.a[1], p.a[2]}, {p.b1, b2}, kQ));
  EXPECT_TRUE(formal_recurrence_check(EquationId::degenerate, c32, degenerate, 40).passed);
  // Wrong pairings are detected.
  EXPECT_FALSE(formal_recurrence_check(EquationId::third, c32, third, 40).passed);
  EXPECT_FALSE(formal_recurrence_check(EquationId::degenerate, phi31_coefficients(p), degenerate, 40).passed);
}

TEST(Equations, Nd3SignOracle) {
  // The "+" reading of the third-order equation is the one the 3phi2
  // coefficients satisfy; flipping the sign of the sigma_q coefficient breaks it.
  const ParamSet3 p = defaults();
  const cplx b2 = kQ.pow(2.5);
  const EquationParams degenerate{p.a[0], p.a[1], p.a[2], p.b1, b2, kQ};
  const auto eq = QDifferenceEquation::make(EquationId::degenerate, degenerate);
  ASSERT_EQ(eq.order(), 3);
  const PhiParams s32({p.a[0], p.a[1], p.a[2]}, {p.b1, b2}, kQ);
  auto ratio_mismatch = [&](double sign) {
    double worst = 0.0;
    for (long n = 1; n <= 20; ++n) {
      cplx a_sum(0.0), b_sum(0.0);
      for (std::size_t k = 0; k < eq.coeff.size(); ++k) {
        const double s = k == 1 ? sign : 1.0;
        a_sum += s * eq.coeff[k][0] * kQ.pow(static_cast<double>(k * n));
        b_sum += s * eq.coeff[k][1] * kQ.pow(static_cast<double>(k * (n - 1)));
      }
      const cplx actual = (phi_coefficient(s32, n) / phi_coefficient(s32, n - 1)).to_complex();
      worst = std::max(worst, test::rel(actual, -b_sum / a_sum));
    }
    return worst;
  };
  EXPECT_LT(ratio_mismatch(1.0), 1e-13);
  EXPECT_GT(ratio_mismatch(-1.0), 1e-3);
}
