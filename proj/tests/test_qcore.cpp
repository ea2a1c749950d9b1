#include "qstokes/qcore.hpp"

#include <numbers>

#include <gtest/gtest.h>

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

}  // namespace

TEST(QBase, RejectsOutsideUnitInterval) {
  for (double q : {0.0, 1.0, -0.5, 1.5, std::nan("")}) {
    EXPECT_EQ(kind_of([&] { QBase b(q); }), ErrorKind::invalid_argument) << q;
  }
  EXPECT_NO_THROW(QBase(0.999));
}

TEST(Truncation, Validation) {
  Truncation t;
  t.max_terms = 0;
  EXPECT_EQ(kind_of([&] { t.validate(); }), ErrorKind::invalid_argument);
  Truncation u;
  u.tail_tol = 0.0;
  EXPECT_EQ(kind_of([&] { u.validate(); }), ErrorKind::invalid_argument);
}

TEST(QPochhammer, FiniteProducts) {
  const QBase q(0.5);
  EXPECT_REL(qpoch_n(0.3, q, 2), cplx(0.595), 1e-15);
  EXPECT_TRUE(qpoch_n(0.3, q, 0) == ScaledComplex(1.0));
  EXPECT_REL(qpoch_n(cplx(0.4, 0.3), QBase(0.7), 5), cplx(0.139269641735754, -0.292556620707147), 1e-14);
  // (q^-2; q)_n vanishes from n = 3 on.
  EXPECT_TRUE(qpoch_n(4.0, q, 3).is_zero());
}

TEST(QPochhammer, InfiniteProducts) {
  EXPECT_REL(qpoch_inf(0.5, QBase(0.5)).value, cplx(0.2887880950866024), 1e-14);
  EXPECT_REL(qpoch_inf(cplx(0.4, 0.3), QBase(0.7)).value, cplx(0.068772483402754857, -0.24917893024234066), 1e-14);
  const SeriesValue v = qpoch_inf(0.5, QBase(0.5));
  EXPECT_LT(v.err_est, 1e-14);
  EXPECT_GT(v.terms_used, 10);
  EXPECT_REL(qpoch_multi({cplx(0.5), cplx(0.3)}, QBase(0.5)).value,
             (qpoch_inf(0.5, QBase(0.5)).value * qpoch_inf(0.3, QBase(0.5)).value).to_complex(), 1e-15);
}

TEST(QPochhammer, MaxTermsExceeded) {
  Truncation t;
  t.max_terms = 5;
  EXPECT_EQ(kind_of([&] { qpoch_inf(0.5, QBase(0.99), t); }), ErrorKind::max_terms_exceeded);
}

TEST(Theta, KnownValues) {
  const QBase q(0.5);
  for (auto route : {ThetaRoute::bilateral, ThetaRoute::triple_product, ThetaRoute::modular, ThetaRoute::automatic}) {
    EXPECT_REL(theta_eval(1.0, q, {}, route).value, cplx(3.2832651213103072), 1e-14);
    EXPECT_REL(theta_eval(cplx(2, -1), QBase(0.3), {}, route).value, cplx(4.0719225297592561, -2.4503543530113418), 1e-13);
  }
}

TEST(Theta, NearOneRoutes) {
  // q = 0.95: the value is tiny (arg x = 2) and the bilateral sum cancels by ~1e15.
  const cplx x = std::polar(0.5, 2.0);
  const cplx want(6.2125408274817371e-15, -7.7342021191714147e-15);
  EXPECT_REL(theta_eval(x, QBase(0.95), {}, ThetaRoute::modular).value, want, 1e-11);
  EXPECT_REL(theta_eval(x, QBase(0.95), {}, ThetaRoute::triple_product).value, want, 1e-10);
  EXPECT_REL(theta_eval(x, QBase(0.95), {}, ThetaRoute::bilateral).value, want, 1e-11);
  EXPECT_REL(theta_eval(cplx(3, 1), QBase(0.99)).value, cplx(8.7180894955057821e+27, -7.0623885413636132e+27), 1e-11);
}

TEST(Theta, FunctionalEquationsProperty) {
  auto g = test::rng(3);
  for (int i = 0; i < 300; ++i) {
    const QBase q(test::uniform(g, 0.1, 0.9));
    const cplx x = std::polar(std::exp(test::uniform(g, -3, 3)), test::uniform(g, -3.1, 3.1));
    if (!spiral_contains(Spiral(-1.0, q), x, 0.05)) {
      const ScaledComplex t = theta_eval(x, q).value;
      // theta(q x) = theta(x) / x
      EXPECT_REL(theta_eval(q.value() * x, q).value, (t / ScaledComplex(x)).to_complex(), 1e-12);
      // theta(1/x) = theta(x) / x
      EXPECT_REL(theta_eval(1.0 / x, q).value, (t / ScaledComplex(x)).to_complex(), 1e-12);
      // theta(q^k x) = q^{-k(k-1)/2} x^{-k} theta(x), k = -4
      const int k = -4;
      const ScaledComplex factor =
          ScaledComplex::from_log(-0.5 * k * (k - 1) * q.log() - static_cast<double>(k) * std::log(x));
      EXPECT_REL(theta_eval(q.pow(static_cast<double>(k)) * x, q).value, (t * factor).to_complex(), 1e-11);
    }
  }
}

TEST(Theta, ZeroSetAndPrefactorGuard) {
  const QBase q(0.5);
  EXPECT_EQ(kind_of([&] { theta_eval(0.0, q); }), ErrorKind::zero_argument);
  EXPECT_EQ(kind_of([&] { theta_nonzero(-8.0, q); }), ErrorKind::prefactor_pole);
  EXPECT_EQ(kind_of([&] { theta_nonzero(-0.25, q); }), ErrorKind::prefactor_pole);
  EXPECT_LT(theta_eval(-0.25 * (1 + 1e-12), q).value.abs(), 1e-10);
  EXPECT_NO_THROW(theta_nonzero(0.25, q));
}

TEST(Spiral, MembershipAndPowers) {
  const QBase q(0.5);
  const Spiral s(cplx(0.3, 0.4), q);
  EXPECT_TRUE(spiral_contains(s, cplx(0.3, 0.4) * 8.0));
  EXPECT_TRUE(spiral_contains(s, cplx(0.3, 0.4) * 0.125));
  EXPECT_FALSE(spiral_contains(s, cplx(0.3, 0.4) * 3.0));
  EXPECT_FALSE(spiral_contains(s, cplx(0.3, -0.4)));
  EXPECT_EQ(inverse_power_index(4.0, q), 2);
  EXPECT_EQ(inverse_power_index(1.0, q), 0);
  EXPECT_EQ(inverse_power_index(0.25, q), -1);
  EXPECT_EQ(inverse_power_index(3.0, q), -1);
  EXPECT_EQ(kind_of([&] { Spiral(0.0, q); }), ErrorKind::zero_argument);
}

TEST(QGamma, KnownValues) {
  EXPECT_REL(qgamma_eval(3.0, QBase(0.5)).value, cplx(1.5), 1e-14);
  EXPECT_REL(qgamma_eval(1.0, QBase(0.3)).value, cplx(1.0), 1e-14);
  EXPECT_REL(qgamma_eval(2.5, QBase(0.9)).value, cplx(1.3039396133920591), 1e-13);
  EXPECT_REL(qgamma_eval(cplx(1.3, 0.4), QBase(0.6)).value, cplx(0.85774831264446714, -0.031893160653925448), 1e-13);
}

TEST(QGamma, FunctionalEquationProperty) {
  // Gamma_q(x+1) = [x]_q Gamma_q(x), [x]_q = (1-q^x)/(1-q).
  auto g = test::rng(5);
  for (int i = 0; i < 100; ++i) {
    const QBase q(test::uniform(g, 0.2, 0.95));
    const cplx x(test::uniform(g, 0.2, 4.0), test::uniform(g, -1.0, 1.0));
    const cplx bracket = (1.0 - q.pow(x)) / (1.0 - q.value());
    EXPECT_REL(qgamma_eval(x + 1.0, q).value, (qgamma_eval(x, q).value * ScaledComplex(bracket)).to_complex(), 1e-12);
  }
}

TEST(QGamma, Poles) {
  EXPECT_EQ(kind_of([&] { qgamma_eval(0.0, QBase(0.5)); }), ErrorKind::pole);
  EXPECT_EQ(kind_of([&] { qgamma_eval(-2.0, QBase(0.5)); }), ErrorKind::pole);
}

TEST(SeriesValue, SumAndProductPropagateErrors) {
  const SeriesValue a{ScaledComplex(2.0), 1e-15, 3}, b{ScaledComplex(-1.0), 2e-15, 4};
  const SeriesValue p = a * b;
  EXPECT_REL(p.value, cplx(-2.0), 0.0);
  EXPECT_GE(p.err_est, 3e-15);
  const SeriesValue parts[] = {a, b};
  const SeriesValue s = sum_values(parts);
  EXPECT_REL(s.value, cplx(1.0), 0.0);
  EXPECT_GE(s.err_est, 2e-15);
  EXPECT_EQ(s.terms_used, 7);
}
