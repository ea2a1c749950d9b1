#pragma once

/**
 * @file connection.hpp
 * @brief Connection formulas between solutions at the origin and at infinity:
 * Watson (2phi1), Slater (3phi2), the b2 -> 0 degeneration of Slater
 * (3phi2 with a zero lower slot, continued by three entire 2phi2 series), the
 * 3phi1 formula with its lambda-dependent Stokes coefficients, and residual
 * checks for the underlying q-difference equations.
 *
 * Theta quotients that appear both in a coefficient and in the solution it
 * multiplies (theta(x)/theta(a_j x) against theta(a_j x)/theta(x)) are
 * cancelled before evaluation, so the right-hand sides have no artificial
 * poles on a_j x in -q^Z.
 */

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qstokes/qseries.hpp"
#include "qstokes/report.hpp"

namespace qstokes {

// ---------------------------------------------------------------------------
// Shared prefactors

/// (a_k, a_l, b1/a_j; q)_inf / (b1, a_k/a_j, a_l/a_j; q)_inf for the j-th term.
inline SeriesValue connection_prefactor(const ParamSet3& p, int j, const Truncation& tr = {}) {
  const auto [k, l] = ParamSet3::others(j);
  const SeriesValue num = qpoch_multi({p.a[k], p.a[l], p.b1 / p.a[j]}, p.q, tr);
  const SeriesValue den = qpoch_multi({p.b1, p.a[k] / p.a[j], p.a[l] / p.a[j]}, p.q, tr);
  if (den.value.is_zero()) throw Error(ErrorKind::genericity_violation, "connection prefactor denominator vanishes");
  return num / den;
}

/// theta(num)/theta(den), raising PrefactorPole when den is on -q^Z.
inline SeriesValue theta_quotient(cplx num, cplx den, QBase q, const Truncation& tr, std::string_view what) {
  const SeriesValue d = theta_nonzero(den, q, tr, what);
  return theta_eval(num, q, tr) / d;
}

// ---------------------------------------------------------------------------
// Degenerate Slater formula (b2 = 0)

/**
 * Evaluator for the continuation of 3phi2(a1,a2,a3; b1,0; q, x) to all
 * x not in q^Z:
 *
 *   sum_j K_j theta(-a_j x)/theta(-x)
 *         2phi2(a_j, a_j q/b1; a_j q/a_k, a_j q/a_l; q, q^2 b1/(a_k a_l x)).
 *
 * The infinite-product factors K_j depend only on the parameters and are
 * computed once; this matters near q -> 1 where each costs ~1e4 factors.
 */
class DegenerateSlater {
 public:
  DegenerateSlater(const ParamSet3& p, const Truncation& tr = {}) : p_(p), tr_(tr) {
    p_.validate();
    for (int j = 0; j < 3; ++j) prefactor_[j] = connection_prefactor(p_, j, tr_);
  }

  const ParamSet3& params() const { return p_; }

  /// The j-th term (0-based) at x.
  SeriesValue term(int j, cplx x) const {
    const auto [k, l] = ParamSet3::others(j);
    const cplx aj = p_.a[j];
    const QBase q = p_.q;
    const double qv = q.value();
    const PhiParams series({aj, aj * qv / p_.b1}, {aj * qv / p_.a[k], aj * qv / p_.a[l]}, q);
    const SeriesValue f = phi_eval(series, qv * qv * p_.b1 / (p_.a[k] * p_.a[l] * x), tr_);
    return prefactor_[j] * theta_quotient(-aj * x, -x, q, tr_, "degenerate Slater prefactor theta(-x)") * f;
  }

  SeriesValue operator()(cplx x) const {
    if (x == cplx(0.0) || spiral_contains(Spiral(1.0, p_.q), x)) {
      throw Error(ErrorKind::prefactor_pole, "degenerate Slater formula: x lies in q^Z");
    }
    const std::array<SeriesValue, 3> parts{term(0, x), term(1, x), term(2, x)};
    return sum_values(parts);
  }

 private:
  ParamSet3 p_;
  Truncation tr_;
  std::array<SeriesValue, 3> prefactor_;
};

/// Right-hand side of the b2 -> 0 Slater formula at x (x not in q^Z).
inline SeriesValue lemma_ni_rhs_eval(const ParamSet3& p, cplx x, const Truncation& tr = {}) {
  return DegenerateSlater(p, tr)(x);
}

// ---------------------------------------------------------------------------
// Slater's formula for 3phi2

/// Right-hand side of Slater's three-term connection formula for
/// 3phi2(a1,a2,a3; b1,b2; q, x); valid where the solutions at infinity
/// converge, |q b1 b2 / (a1 a2 a3 x)| < 1.
inline SeriesValue slater_rhs_eval(cplx a1, cplx a2, cplx a3, cplx b1, cplx b2, QBase q, cplx x,
                                   const Truncation& tr = {}) {
  const ParamSet3 p(a1, a2, a3, b1, q);
  p.validate();
  if (b2 == cplx(0.0) || inverse_power_index(b2, q) >= 0) {
    throw Error(ErrorKind::genericity_violation, "b2 is zero or lies in q^{-N}");
  }
  if (x == cplx(0.0) || spiral_contains(Spiral(1.0, q), x)) {
    throw Error(ErrorKind::prefactor_pole, "Slater formula: x lies in q^Z");
  }
  const double qv = q.value();
  const cplx arg = qv * b1 * b2 / (p.product() * x);
  if (std::abs(arg) >= 1.0) {
    throw Error(ErrorKind::divergent_request, "Slater formula: |q b1 b2/(a1 a2 a3 x)| >= 1");
  }
  std::array<SeriesValue, 3> parts;
  for (int j = 0; j < 3; ++j) {
    const auto [k, l] = ParamSet3::others(j);
    const cplx aj = p.a[j];
    const SeriesValue num = qpoch_multi({p.a[k], p.a[l], b1 / aj, b2 / aj}, q, tr);
    const SeriesValue den = qpoch_multi({b1, b2, p.a[k] / aj, p.a[l] / aj}, q, tr);
    const PhiParams series({aj, aj * qv / b1, aj * qv / b2}, {aj * qv / p.a[k], aj * qv / p.a[l]}, q);
    parts[j] = num / den * theta_quotient(-aj * x, -x, q, tr, "Slater prefactor theta(-x)") * phi_eval(series, arg, tr);
  }
  return sum_values(parts);
}

// ---------------------------------------------------------------------------
// Watson's formula for 2phi1

/// Right-hand side of Watson's two-term connection formula for
/// 2phi1(a, b; c; q, x); requires |c q / (a b x)| < 1.
inline SeriesValue watson_rhs_eval(cplx a, cplx b, cplx c, QBase q, cplx x, const Truncation& tr = {}) {
  if (a == cplx(0.0) || b == cplx(0.0) || spiral_contains(Spiral(1.0, q), a / b)) {
    throw Error(ErrorKind::genericity_violation, "Watson formula requires a/b not in q^Z");
  }
  if (c == cplx(0.0) || inverse_power_index(c, q) >= 0) {
    throw Error(ErrorKind::genericity_violation, "Watson formula requires c not in q^{-N}");
  }
  if (x == cplx(0.0) || spiral_contains(Spiral(1.0, q), x)) {
    throw Error(ErrorKind::prefactor_pole, "Watson formula: x lies in q^Z");
  }
  const double qv = q.value();
  const cplx arg = c * qv / (a * b * x);
  if (std::abs(arg) >= 1.0) throw Error(ErrorKind::divergent_request, "Watson formula: |c q/(a b x)| >= 1");
  auto part = [&](cplx u, cplx v) {
    const SeriesValue coef = qpoch_multi({v, c / u}, q, tr) / qpoch_multi({c, v / u}, q, tr);
    const PhiParams series({u, u * qv / c}, {u * qv / v}, q);
    return coef * theta_quotient(-u * x, -x, q, tr, "Watson prefactor theta(-x)") * phi_eval(series, arg, tr);
  };
  const std::array<SeriesValue, 2> parts{part(a, b), part(b, a)};
  return sum_values(parts);
}

// ---------------------------------------------------------------------------
// 3phi1 connection formula

namespace detail {
inline cplx infinity_argument(const ParamSet3& p, cplx x) { return p.q.value() * p.b1 / (p.product() * x); }

inline SeriesValue infinity_series(const ParamSet3& p, int j, cplx x, const Truncation& tr) {
  const cplx z = infinity_argument(p, x);
  if (std::abs(z) >= 1.0) {
    throw Error(ErrorKind::divergent_request, "solution at infinity: |q b1/(a1 a2 a3 x)| >= 1");
  }
  const auto [k, l] = ParamSet3::others(j);
  const cplx aj = p.a[j];
  const double qv = p.q.value();
  const PhiParams series({aj, aj * qv / p.b1, 0.0}, {aj * qv / p.a[k], aj * qv / p.a[l]}, p.q);
  return phi_eval(series, z, tr);
}
}  // namespace detail

/// v_j(x) = theta(a_j x)/theta(x) 3phi2(a_j, a_j q/b1, 0; a_j q/a_k, a_j q/a_l; q, q b1/(a1 a2 a3 x)),
/// j in {1,2,3}: solutions of the 3phi1 equation around infinity.
inline SeriesValue v_sol_eval(const ParamSet3& p, int j, cplx x, const Truncation& tr = {}) {
  if (j < 1 || j > 3) throw Error(ErrorKind::invalid_argument, "solution index must be 1, 2 or 3");
  p.validate();
  const int i = j - 1;
  const SeriesValue s = detail::infinity_series(p, i, x, tr);
  return theta_quotient(p.a[i] * x, x, p.q, tr, "v_j prefactor theta(x)") * s;
}

/// Stokes coefficient C_j(x) (j in {1,2,3}) with spiral direction lambda:
///   K_j theta(a_j lambda)/theta(lambda) theta(a_j q x/lambda)/theta(q x/lambda) theta(x)/theta(a_j x).
inline SeriesValue stokes_coeff_eval(const ParamSet3& p, int j, cplx lambda, cplx x, const Truncation& tr = {}) {
  if (j < 1 || j > 3) throw Error(ErrorKind::invalid_argument, "coefficient index must be 1, 2 or 3");
  p.validate();
  const int i = j - 1;
  const cplx aj = p.a[i];
  const double qv = p.q.value();
  return connection_prefactor(p, i, tr) * theta_quotient(aj * lambda, lambda, p.q, tr, "theta(lambda)") *
         theta_quotient(aj * qv * x / lambda, qv * x / lambda, p.q, tr, "theta(q x/lambda)") *
         theta_quotient(x, aj * x, p.q, tr, "theta(a_j x)");
}

/// The j-th (0-based) product C_j v_j with theta(x)/theta(a_j x) cancelled.
inline SeriesValue main_rhs_term(const ParamSet3& p, int j, cplx lambda, cplx x, const Truncation& tr = {}) {
  const cplx aj = p.a[j];
  const double qv = p.q.value();
  return connection_prefactor(p, j, tr) * theta_quotient(aj * lambda, lambda, p.q, tr, "theta(lambda)") *
         theta_quotient(aj * qv * x / lambda, qv * x / lambda, p.q, tr, "theta(q x/lambda)") *
         detail::infinity_series(p, j, x, tr);
}

/// sum_j C_j(x) v_j(x): the right-hand side of the 3phi1 connection formula.
inline SeriesValue main_rhs_eval(const ParamSet3& p, cplx lambda, cplx x, const Truncation& tr = {}) {
  p.validate();
  if (x == cplx(0.0) || spiral_contains(Spiral(-lambda, p.q), x)) {
    throw Error(ErrorKind::spiral_pole, "x lies on the excluded spiral [-lambda; q]");
  }
  const std::array<SeriesValue, 3> parts{main_rhs_term(p, 0, lambda, x, tr), main_rhs_term(p, 1, lambda, x, tr),
                                         main_rhs_term(p, 2, lambda, x, tr)};
  return sum_values(parts);
}

// ---------------------------------------------------------------------------
// q-difference equations

enum class EquationId { heine, third, degenerate };

inline std::string_view to_string(EquationId id) {
  switch (id) {
    case EquationId::heine: return "heine";
    case EquationId::third: return "third";
    case EquationId::degenerate: return "degenerate";
  }
  return "?";
}

/// Parameters of the three equations. heine reads (a, b, c) = (a1, a2, b1);
/// third reads (a1, a2, a3, b1); degenerate reads all five.
struct EquationParams {
  cplx a1{0.0}, a2{0.0}, a3{0.0}, b1{0.0}, b2{0.0};
  QBase q;
};

/// Coefficient table sum_k (A_k + B_k x) u(q^k x) = 0, indexed by the shift k.
struct QDifferenceEquation {
  std::vector<std::array<cplx, 2>> coeff;

  static QDifferenceEquation make(EquationId id, const EquationParams& e) {
    const double q = e.q.value();
    switch (id) {
      case EquationId::heine: {
        // [(c - abq x) s^2 - {(c+q) - (a+b) q x} s + q(1 - x)] u = 0
        const cplx a = e.a1, b = e.a2, c = e.b1;
        return {{{{q, -q}}, {{-(c + q), (a + b) * q}}, {{c, -a * b * q}}}};
      }
      case EquationId::third: {
        const cplx e1 = e.a1 + e.a2 + e.a3;
        const cplx e2 = e.a1 * e.a2 + e.a2 * e.a3 + e.a3 * e.a1;
        const cplx e3 = e.a1 * e.a2 * e.a3;
        return {{{{0.0, -1.0}},
                 {{-1.0 / q, e1}},
                 {{e.b1 / (q * q) + 1.0 / q, -e2}},
                 {{-e.b1 / (q * q), e3}}}};
      }
      case EquationId::degenerate: {
        // The operator before the sigma_q term is read as "+".
        const cplx e1 = e.a1 + e.a2 + e.a3;
        const cplx e2 = e.a1 * e.a2 + e.a2 * e.a3 + e.a3 * e.a1;
        const cplx e3 = e.a1 * e.a2 * e.a3;
        const cplx bb = e.b1 * e.b2;
        return {{{{1.0, -1.0}},
                 {{-(e.b1 / q + e.b2 / q + 1.0), e1}},
                 {{bb / (q * q) + e.b2 / q + e.b1 / q, -e2}},
                 {{-bb / (q * q), e3}}}};
      }
    }
    throw Error(ErrorKind::invalid_argument, "unknown equation");
  }

  int order() const { return static_cast<int>(coeff.size()) - 1; }
};

struct Residual {
  /// Left-hand side of the equation applied to u at x.
  ScaledComplex raw;
  /// raw / (max_k |A_k + B_k x| * max_k |u(q^k x)|).
  double relative = 0.0;
};

using ScalarFunction = std::function<ScaledComplex(cplx)>;

inline Residual residual_eval(EquationId id, const ScalarFunction& u, const EquationParams& params, cplx x) {
  const QDifferenceEquation eq = QDifferenceEquation::make(id, params);
  ScaledComplex raw;
  double max_coef = 0.0;
  double max_u_log2 = -std::numeric_limits<double>::infinity();
  double shift = 1.0;
  for (const auto& [A, B] : eq.coeff) {
    const cplx c = A + B * x;
    const ScaledComplex value = u(shift * x);
    raw += ScaledComplex(c) * value;
    max_coef = std::max(max_coef, std::abs(c));
    max_u_log2 = std::max(max_u_log2, value.log2_abs());
    shift *= params.q.value();
  }
  Residual r{raw, 0.0};
  if (!raw.is_zero()) r.relative = std::exp2(raw.log2_abs() - max_u_log2) / max_coef;
  return r;
}

/// Checks, for n = 1..N, that the two-term coefficient recurrence implied by
/// the equation's coefficient table,
///   c_n / c_{n-1} = - sum_k B_k q^{k(n-1)} / sum_k A_k q^{kn},
/// agrees with the ratios of the supplied closed-form coefficient stream.
/// The report carries the worst ratio mismatch.
inline CheckReport formal_recurrence_check(EquationId id, const CoeffSeq& coeffs, const EquationParams& params, long N,
                                           double tol = 1e-13) {
  if (N < 1) throw Error(ErrorKind::invalid_argument, "formal_recurrence_check requires N >= 1");
  const QDifferenceEquation eq = QDifferenceEquation::make(id, params);
  double worst = 0.0;
  ScaledComplex worst_lhs, worst_rhs;
  long worst_n = 0;
  for (long n = 1; n <= N; ++n) {
    cplx a_sum(0.0), b_sum(0.0);
    for (std::size_t k = 0; k < eq.coeff.size(); ++k) {
      const double kk = static_cast<double>(k);
      a_sum += eq.coeff[k][0] * params.q.pow(kk * static_cast<double>(n));
      b_sum += eq.coeff[k][1] * params.q.pow(kk * static_cast<double>(n - 1));
    }
    const ScaledComplex implied = ScaledComplex(-b_sum / a_sum);
    const ScaledComplex actual = coeffs(n) / coeffs(n - 1);
    const double err = relative_difference(actual, implied);
    if (err >= worst) {
      worst = err;
      worst_lhs = actual;
      worst_rhs = implied;
      worst_n = n;
    }
  }
  CheckReport r = make_report(std::string("recurrence/") + std::string(to_string(id)), worst_lhs, worst_rhs, tol);
  r.rel_err = worst;
  r.passed = worst <= tol;
  r.inputs = {{"N", ScaledComplex(static_cast<double>(N))}, {"q", ScaledComplex(params.q.value())}};
  r.diagnostics = {{"worst_n", ScaledComplex(static_cast<double>(worst_n))}};
  return r;
}

}  // namespace qstokes
