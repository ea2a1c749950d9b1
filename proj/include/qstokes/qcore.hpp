#pragma once

/**
 * @file qcore.hpp
 * @brief Foundational q-objects: the base q, q-Pochhammer symbols, the Jacobi
 * theta function, the q-gamma function and q-spiral geometry.
 *
 * Conventions used throughout the library:
 *  - theta(x) = sum_{n in Z} q^{n(n-1)/2} x^n = (q, -x, -q/x; q)_inf,
 *    which vanishes exactly on the spiral -q^Z;
 *  - theta(q^k x) = q^{-k(k-1)/2} x^{-k} theta(x) and theta(1/x) = theta(x)/x;
 *  - complex powers q^x use the principal branch.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qstokes/detail/quad.hpp"
#include "qstokes/error.hpp"
#include "qstokes/scaled_complex.hpp"

namespace qstokes {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kSpiralTol = 1e-9;

/// The base q, restricted to 0 < q < 1.
class QBase {
 public:
  explicit QBase(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) {
      throw Error(ErrorKind::invalid_argument, "base q must satisfy 0 < q < 1, got " + std::to_string(q));
    }
    log_q_ = std::log(q);
  }
  double value() const { return q_; }
  double log() const { return log_q_; }
  /// q^k for integer k.
  double pow(double k) const { return std::exp(k * log_q_); }
  /// q^z, principal branch.
  cplx pow(cplx z) const { return std::exp(z * log_q_); }

 private:
  double q_;
  double log_q_;
};

/// Stopping controls shared by every series and product evaluator.
struct Truncation {
  long max_terms = 200000;
  double tail_tol = 1e-16;
  long min_terms = 0;

  void validate() const {
    if (max_terms <= 0 || min_terms < 0 || max_terms < min_terms) {
      throw Error(ErrorKind::invalid_argument, "truncation requires 0 <= min_terms <= max_terms, max_terms > 0");
    }
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
      throw Error(ErrorKind::invalid_argument, "truncation tail_tol must lie in (0, 1)");
    }
  }
};

/// Result of a truncated evaluation. `err_est` is a relative error estimate
/// under the tail rule of the producing operation, plus accumulated rounding.
struct SeriesValue {
  ScaledComplex value;
  double err_est = 0.0;
  long terms_used = 0;

  cplx to_complex() const { return value.to_complex(); }
};

inline SeriesValue operator*(const SeriesValue& a, const SeriesValue& b) {
  return {a.value * b.value, a.err_est + b.err_est, a.terms_used + b.terms_used};
}
inline SeriesValue operator/(const SeriesValue& a, const SeriesValue& b) {
  return {a.value / b.value, a.err_est + b.err_est, a.terms_used + b.terms_used};
}

/// Sum of values whose relative errors are known; the result's relative error
/// is weighted by the magnitudes of the addends.
inline SeriesValue sum_values(std::span<const SeriesValue> parts) {
  SeriesValue out;
  double abs_err_log2 = -std::numeric_limits<double>::infinity();
  double max_log2 = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts) {
    out.value += p.value;
    out.terms_used += p.terms_used;
    const double l = p.value.log2_abs();
    max_log2 = std::max(max_log2, l);
    const double e = std::max(p.err_est, kEps);
    const double le = l + std::log2(e);
    // log2(2^abs_err_log2 + 2^le)
    const double hi = std::max(abs_err_log2, le);
    const double lo = std::min(abs_err_log2, le);
    abs_err_log2 = std::isfinite(lo) ? hi + std::log2(1.0 + std::exp2(lo - hi)) : hi;
  }
  if (out.value.is_zero()) {
    out.err_est = std::isfinite(max_log2) ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    // Rounding of the cancellation itself, relative to the largest addend.
    const double cancel = std::exp2(max_log2 - out.value.log2_abs()) * kEps;
    out.err_est = std::exp2(abs_err_log2 - out.value.log2_abs()) + cancel;
  }
  return out;
}

/// The q-spiral [lambda; q] = lambda * q^Z.
struct Spiral {
  cplx lambda;
  QBase base;

  Spiral(cplx lam, QBase q) : lambda(lam), base(q) {
    if (lam == cplx(0.0, 0.0)) throw Error(ErrorKind::zero_argument, "spiral direction lambda must be nonzero");
  }
};

/// Nearest spiral index k and the log-domain offsets of x from lambda*q^k:
/// `index_offset` = |log|x/lambda| / log q - k|, `phase_offset` = |arg(x/lambda)|.
struct SpiralPosition {
  long index = 0;
  double index_offset = 0.0;
  double phase_offset = 0.0;
};

inline SpiralPosition spiral_position(const Spiral& s, cplx x) {
  if (x == cplx(0.0, 0.0)) throw Error(ErrorKind::zero_argument, "spiral membership of 0 is undefined");
  const cplx ratio = x / s.lambda;
  const double t = std::log(std::abs(ratio)) / s.base.log();
  const double k = std::round(t);
  return {static_cast<long>(k), std::abs(t - k), std::abs(std::arg(ratio))};
}

/// Log-domain membership test x in lambda*q^Z.
inline bool spiral_contains(const Spiral& s, cplx x, double tol = kSpiralTol) {
  const SpiralPosition p = spiral_position(s, x);
  return p.index_offset < tol && p.phase_offset < tol;
}

/// x in q^{-N} = {q^{-k} : k >= 0}; returns k or -1.
inline long inverse_power_index(cplx x, QBase q, double tol = kSpiralTol) {
  if (x == cplx(0.0, 0.0)) return -1;
  const SpiralPosition p = spiral_position(Spiral(1.0, q), x);
  if (p.index_offset < tol && p.phase_offset < tol && p.index <= 0) return -p.index;
  return -1;
}

// ---------------------------------------------------------------------------
// q-Pochhammer symbols

/// (a; q)_n = prod_{k<n} (1 - a q^k), exact empty product for n = 0.
inline ScaledComplex qpoch_n(cplx a, QBase q, long n) {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "qpoch_n requires n >= 0");
  ScaledComplex prod(1.0);
  for (long k = 0; k < n; ++k) prod *= ScaledComplex(1.0 - a * q.pow(static_cast<double>(k)));
  return prod;
}

/// (a; q)_inf. Multiplies factors until the tail bound
/// sum_{j>=k} |a q^j| / (1 - |a q^j|) drops below tail_tol; that bound is the
/// truncation part of err_est.
inline SeriesValue qpoch_inf(cplx a, QBase q, const Truncation& tr = {}) {
  if (a == cplx(0.0, 0.0)) return {ScaledComplex(1.0), 0.0, 0};
  const double abs_a = std::abs(a);
  const double one_minus_q = 1.0 - q.value();
  ScaledComplex prod(1.0);
  long k = 0;
  double tail = 0.0;
  for (;; ++k) {
    const double qk = q.pow(static_cast<double>(k));
    const double mag = abs_a * qk;
    if (mag < 0.5) {
      tail = mag / (one_minus_q * (1.0 - mag));
      if (tail <= tr.tail_tol) break;
    }
    if (k >= tr.max_terms) {
      throw Error(ErrorKind::max_terms_exceeded, "qpoch_inf: tail bound not reached within max_terms");
    }
    const cplx factor = 1.0 - a * qk;
    if (factor == cplx(0.0, 0.0)) return {ScaledComplex{}, 0.0, k + 1};
    prod *= ScaledComplex(factor);
  }
  return {prod, tail + 2.0 * kEps * std::sqrt(static_cast<double>(k) + 1.0), k};
}

/// (a_1, ..., a_m; q)_inf as a product of single symbols.
inline SeriesValue qpoch_multi(std::span<const cplx> as, QBase q, const Truncation& tr = {}) {
  SeriesValue out{ScaledComplex(1.0), 0.0, 0};
  for (const cplx a : as) out = out * qpoch_inf(a, q, tr);
  return out;
}
inline SeriesValue qpoch_multi(std::initializer_list<cplx> as, QBase q, const Truncation& tr = {}) {
  return qpoch_multi(std::span<const cplx>(as.begin(), as.size()), q, tr);
}

// ---------------------------------------------------------------------------
// Jacobi theta function

enum class ThetaRoute {
  /// Defining sum over Z, started at the dominant index and accumulated in
  /// binary128 so that phase cancellation near q -> 1 is resolved.
  bilateral,
  /// (q, -x, -q/x; q)_inf.
  triple_product,
  /// Poisson-dual series in the modular variable; O(1) terms for q near 1.
  modular,
  /// triple_product for q <= 0.9, modular above.
  automatic,
};

namespace detail {

inline SeriesValue theta_bilateral(cplx x, QBase q, const Truncation& tr) {
  const double lnq = q.log();
  const double lnx = std::log(std::abs(x));
  const double phase = std::arg(x);
  // Index maximizing n(n-1)/2 log q + n log|x|.
  const long nstar = std::lround(0.5 - lnx / lnq);
  const double ns = static_cast<double>(nstar);
  const double dominant_log = 0.5 * ns * (ns - 1.0) * lnq + ns * lnx;
  const double dominant_phase = std::remainder(ns * phase, 2.0 * std::numbers::pi);
  const ScaledComplex dominant = ScaledComplex::from_log({dominant_log, dominant_phase});

  // Terms relative to the dominant one are <= 1 in modulus; summing them to
  // 1e-36 of the peak lets binary128 absorb cancellations up to ~1e20.
  constexpr quad kStop = 1e-72;  // squared modulus threshold
  const quad qq = q.value();
  const quad qinv = quad(1) / qq;
  const QuadComplex xq(x);

  QuadComplex sum(1, 0);
  quad abs_sum = 1;
  long terms = 1;

  // Upward: T_{n+1} = T_n * q^n x.
  {
    QuadComplex t(1, 0);
    QuadComplex r = xq * ipow(qq, nstar);
    while (true) {
      t = t * r;
      r = r * qq;
      sum += t;
      const quad n2 = t.norm();
      abs_sum += static_cast<quad>(std::sqrt(static_cast<double>(n2)));
      if (++terms > tr.max_terms) throw Error(ErrorKind::max_terms_exceeded, "theta bilateral sum");
      if (n2 < kStop) break;
    }
  }
  // Downward: T_{n-1} = T_n / (q^{n-1} x).
  {
    QuadComplex t(1, 0);
    QuadComplex r = xq * ipow(qq, nstar - 1);
    while (true) {
      t = t / r;
      r = r * qinv;
      sum += t;
      const quad n2 = t.norm();
      abs_sum += static_cast<quad>(std::sqrt(static_cast<double>(n2)));
      if (++terms > tr.max_terms) throw Error(ErrorKind::max_terms_exceeded, "theta bilateral sum");
      if (n2 < kStop) break;
    }
  }
  const double sum_abs = std::sqrt(static_cast<double>(sum.norm()));
  const double rounding = static_cast<double>(abs_sum) * 1e-33;
  const double rel = sum_abs > 0.0 ? rounding / sum_abs : std::numeric_limits<double>::infinity();
  const double log_err = 4.0 * kEps * (1.0 + std::abs(dominant_log));
  return {dominant * ScaledComplex(sum.to_complex()), rel + log_err, terms};
}

inline SeriesValue theta_modular(cplx x, QBase q, const Truncation& tr) {
  // Poisson summation of exp(-tau n^2/2 + n v), v = Log x + tau/2:
  //   theta(x) = sqrt(2 pi / tau) sum_k exp((v - 2 pi i k)^2 / (2 tau)).
  const double tau = -q.log();
  const cplx v = std::log(x) + 0.5 * tau;
  const double log_pref = 0.5 * std::log(2.0 * std::numbers::pi / tau);
  const double two_pi = 2.0 * std::numbers::pi;
  auto exponent = [&](long k) {
    const cplx w = v - cplx(0.0, two_pi * static_cast<double>(k));
    return w * w / (2.0 * tau) + log_pref;
  };
  const double lead = exponent(0).real();
  const double cutoff = lead + std::log(tr.tail_tol * 1e-3);
  ScaledComplex sum = ScaledComplex::from_log(exponent(0));
  long terms = 1;
  for (int dir : {1, -1}) {
    for (long k = dir;; k += dir) {
      const cplx e = exponent(k);
      // Re exponent is concave in k; stop once below cutoff and moving away.
      if (e.real() < cutoff && std::abs(v.imag() - two_pi * static_cast<double>(k)) > std::numbers::pi) break;
      sum += ScaledComplex::from_log(e);
      if (++terms > tr.max_terms) throw Error(ErrorKind::max_terms_exceeded, "theta modular sum");
    }
  }
  const double scale = std::abs(exponent(0));
  double rel = 4.0 * kEps * (1.0 + scale);
  if (!sum.is_zero()) rel *= std::exp2(std::max(0.0, lead / std::numbers::ln2 - sum.log2_abs()));
  return {sum, rel, terms};
}

}  // namespace detail

/// theta_q(x) by the requested route.
inline SeriesValue theta_eval(cplx x, QBase q, const Truncation& tr = {}, ThetaRoute route = ThetaRoute::automatic) {
  if (x == cplx(0.0, 0.0)) throw Error(ErrorKind::zero_argument, "theta is undefined at x = 0");
  if (route == ThetaRoute::automatic) route = q.value() <= 0.9 ? ThetaRoute::triple_product : ThetaRoute::modular;
  switch (route) {
    case ThetaRoute::bilateral: return detail::theta_bilateral(x, q, tr);
    case ThetaRoute::triple_product: return qpoch_multi({cplx(q.value()), -x, -q.value() / x}, q, tr);
    case ThetaRoute::modular: return detail::theta_modular(x, q, tr);
    case ThetaRoute::automatic: break;
  }
  throw Error(ErrorKind::invalid_argument, "unknown theta route");
}

/// theta_q(x) for use as a prefactor: raises PrefactorPole when x lies on the
/// zero set -q^Z within spiral tolerance.
inline SeriesValue theta_nonzero(cplx x, QBase q, const Truncation& tr = {}, std::string_view what = "theta") {
  if (x == cplx(0.0, 0.0) || spiral_contains(Spiral(-1.0, q), x)) {
    throw Error(ErrorKind::prefactor_pole, std::string(what) + ": argument lies on the theta zero set -q^Z");
  }
  return theta_eval(x, q, tr);
}

/// Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^{1-x}.
inline SeriesValue qgamma_eval(cplx x, QBase q, const Truncation& tr = {}) {
  const cplx qx = q.pow(x);
  if (inverse_power_index(qx, q) >= 0) {
    throw Error(ErrorKind::pole, "q-gamma pole: q^x lies in q^{-N}");
  }
  const SeriesValue num = qpoch_inf(q.value(), q, tr);
  const SeriesValue den = qpoch_inf(qx, q, tr);
  if (den.value.is_zero() || den.value.log2_abs() < num.value.log2_abs() - 1000.0) {
    throw Error(ErrorKind::pole, "q-gamma pole: (q^x;q)_inf vanishes");
  }
  const ScaledComplex power = ScaledComplex::from_log((1.0 - x) * std::log(1.0 - q.value()));
  SeriesValue out = num / den;
  out.value *= power;
  out.err_est += 2.0 * kEps * (1.0 + std::abs((1.0 - x) * std::log(1.0 - q.value())));
  return out;
}

}  // namespace qstokes
