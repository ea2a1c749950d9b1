#pragma once

/**
 * @file qseries.hpp
 * @brief r-phi-s basic hypergeometric series with convergence classification,
 * the parameter tuples of 3phi1, coefficient streams, and the classical
 * Gamma and 2F2 functions that appear in the q -> 1 limit.
 *
 *   r-phi-s(a; b; q, x) = sum_n (a_1..a_r;q)_n / ((b_1..b_s;q)_n (q;q)_n)
 *                          * [(-1)^n q^{n(n-1)/2}]^{1+s-r} x^n
 *
 * Radius of convergence: infinite for r-s < 1, one for r-s = 1, zero beyond.
 */

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qstokes/qcore.hpp"

namespace qstokes {

struct PhiParams {
  std::vector<cplx> upper;
  std::vector<cplx> lower;
  QBase q;

  PhiParams(std::vector<cplx> up, std::vector<cplx> lo, QBase base)
      : upper(std::move(up)), lower(std::move(lo)), q(base) {}

  int r() const { return static_cast<int>(upper.size()); }
  int s() const { return static_cast<int>(lower.size()); }
  /// Exponent 1 + s - r of the [(-1)^n q^{n(n-1)/2}] factor.
  int sign_exponent() const { return 1 + s() - r(); }

  /// Smallest N with an upper parameter in q^{-N} (series terminates after
  /// index N), if any.
  std::optional<long> terminating_index() const {
    std::optional<long> best;
    for (const cplx a : upper) {
      const long k = inverse_power_index(a, q);
      if (k >= 0 && (!best || k < *best)) best = k;
    }
    return best;
  }
};

/// c_{n+1} / c_n per unit x.
inline cplx phi_term_ratio(const PhiParams& p, long n) {
  const double qn = p.q.pow(static_cast<double>(n));
  cplx num(1.0);
  for (const cplx a : p.upper) num *= 1.0 - a * qn;
  cplx den = 1.0 - qn * p.q.value();
  for (const cplx b : p.lower) {
    const cplx f = 1.0 - b * qn;
    if (std::abs(f) < 1e-14) {
      throw Error(ErrorKind::denominator_zero, "lower parameter hits q^{-" + std::to_string(n) + "}");
    }
    den *= f;
  }
  cplx ratio = num / den;
  const int e = p.sign_exponent();
  if (e != 0) ratio *= std::pow(-qn, e);
  return ratio;
}

/// Closed-form n-th coefficient: products of q-Pochhammer symbols and the
/// sign/power factor, independent of the term-ratio recurrence.
inline ScaledComplex phi_coefficient(const PhiParams& p, long n) {
  ScaledComplex c(1.0);
  for (const cplx a : p.upper) c *= qpoch_n(a, p.q, n);
  for (const cplx b : p.lower) c /= qpoch_n(b, p.q, n);
  c /= qpoch_n(p.q.value(), p.q, n);
  const int e = p.sign_exponent();
  const double nn = static_cast<double>(n);
  const double log_mag = e * 0.5 * nn * (nn - 1.0) * p.q.log();
  const double phase = (e * n) % 2 == 0 ? 0.0 : std::numbers::pi;
  c *= ScaledComplex::from_log({log_mag, phase});
  return c;
}

namespace detail {

/// Power-series summation with the shared stopping rule: stop once three
/// consecutive terms satisfy |term| <= tail_tol |sum|. The error estimate is
/// the geometric tail |t| |rho| / (1 - |rho|) when the last ratio rho has
/// modulus below one, else the sum of the last three terms, plus rounding
/// proportional to sum |term|.
template <class NextRatio>
SeriesValue sum_by_ratio(NextRatio&& ratio_at, cplx x, const Truncation& tr, std::optional<long> last_index,
                         const char* what) {
  cplx term(1.0);
  cplx sum(1.0);
  double abs_sum = 1.0;
  std::int64_t scale = 0;  // true value = stored * 2^scale
  int small_run = 0;
  double last_three = 0.0;
  cplx last_ratio(0.0);
  long n = 0;
  for (;; ++n) {
    if (last_index && n >= *last_index) break;
    if (n >= tr.max_terms) throw Error(ErrorKind::max_terms_exceeded, what);
    last_ratio = ratio_at(n) * x;
    term *= last_ratio;
    if (term == cplx(0.0)) {
      // An exactly vanishing factor terminates the series.
      ++n;
      break;
    }
    sum += term;
    const double at = std::abs(term);
    abs_sum += at;
    if (at > 0x1p600) {
      term = {std::ldexp(term.real(), -600), std::ldexp(term.imag(), -600)};
      sum = {std::ldexp(sum.real(), -600), std::ldexp(sum.imag(), -600)};
      abs_sum = std::ldexp(abs_sum, -600);
      scale += 600;
    }
    if (!std::isfinite(at)) throw Error(ErrorKind::max_terms_exceeded, std::string(what) + ": term overflow");
    if (at <= tr.tail_tol * std::abs(sum) && n + 1 >= tr.min_terms) {
      last_three += at;
      if (++small_run >= 3) {
        ++n;
        break;
      }
    } else {
      small_run = 0;
      last_three = 0.0;
    }
  }
  const double s = std::abs(sum);
  double tail = 0.0;
  if (!last_index || n < *last_index) {
    const double r = std::abs(last_ratio);
    tail = r < 1.0 ? std::abs(term) * r / (1.0 - r) : last_three;
  }
  const double err = s > 0.0 ? (tail + 2.0 * kEps * abs_sum) / s : std::numeric_limits<double>::infinity();
  return {ScaledComplex::from_parts(sum, scale), err, n + 1};
}

}  // namespace detail

/// Convergent r-phi-s at x. Raises DivergentRequest outside the disc of
/// convergence of a non-terminating series (the cue that resummation or an
/// analytic continuation is required).
inline SeriesValue phi_eval(const PhiParams& p, cplx x, const Truncation& tr = {}) {
  tr.validate();
  if (x == cplx(0.0)) return {ScaledComplex(1.0), 0.0, 1};
  const std::optional<long> stop = p.terminating_index();
  if (!stop) {
    const int d = p.r() - p.s();
    if (d > 1) throw Error(ErrorKind::divergent_request, "r-s > 1: the series has radius of convergence 0");
    if (d == 1 && std::abs(x) >= 1.0) {
      throw Error(ErrorKind::divergent_request, "r-s = 1 and |x| >= 1: outside the disc of convergence");
    }
  }
  return detail::sum_by_ratio([&](long n) { return phi_term_ratio(p, n); }, x, tr, stop, "phi_eval");
}

// ---------------------------------------------------------------------------
// Parameter tuples of 3phi1

struct ExponentParams;

/// (a1, a2, a3; b1) of 3phi1 together with the base.
struct ParamSet3 {
  std::array<cplx, 3> a;
  cplx b1;
  QBase q;

  ParamSet3(cplx a1, cplx a2, cplx a3, cplx b, QBase base) : a{a1, a2, a3}, b1(b), q(base) {}

  /// a_i/a_j not in q^Z, b1 and a_j not in q^{-N}, nothing zero.
  void validate() const {
    for (int i = 0; i < 3; ++i) {
      if (a[i] == cplx(0.0)) throw Error(ErrorKind::genericity_violation, "upper parameter is zero");
      if (inverse_power_index(a[i], q) >= 0) {
        throw Error(ErrorKind::genericity_violation, "a" + std::to_string(i + 1) + " lies in q^{-N}");
      }
      for (int j = i + 1; j < 3; ++j) {
        if (spiral_contains(Spiral(1.0, q), a[i] / a[j])) {
          throw Error(ErrorKind::genericity_violation,
                      "a" + std::to_string(i + 1) + "/a" + std::to_string(j + 1) + " lies in q^Z (resonant)");
        }
      }
    }
    if (b1 == cplx(0.0) || inverse_power_index(b1, q) >= 0) {
      throw Error(ErrorKind::genericity_violation, "b1 is zero or lies in q^{-N}");
    }
  }

  cplx product() const { return a[0] * a[1] * a[2]; }

  /// Parameters with (a1, a2, a3) reordered as (a[perm0], a[perm1], a[perm2]).
  ParamSet3 permuted(std::array<int, 3> perm) const { return {a[perm[0]], a[perm[1]], a[perm[2]], b1, q}; }

  /// Indices of the two parameters other than j.
  static std::pair<int, int> others(int j) { return {j == 0 ? 1 : 0, j == 2 ? 1 : 2}; }

  static ParamSet3 from_exponents(const ExponentParams& ep, QBase q);
};

/// a_j = q^{alpha_j}, b1 = q^{beta1}.
struct ExponentParams {
  std::array<cplx, 3> alpha;
  cplx beta1;

  void validate() const {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const cplx d = alpha[i] - alpha[j];
        if (std::abs(d.imag()) < 1e-12 && std::abs(d.real() - std::round(d.real())) < 1e-12) {
          throw Error(ErrorKind::genericity_violation, "alpha_i - alpha_j is an integer");
        }
      }
    }
  }
};

inline ParamSet3 ParamSet3::from_exponents(const ExponentParams& ep, QBase q) {
  return {q.pow(ep.alpha[0]), q.pow(ep.alpha[1]), q.pow(ep.alpha[2]), q.pow(ep.beta1), q};
}

/// The divergent 3phi1(a1, a2, a3; b1; q, x) as r-phi-s parameters.
inline PhiParams phi31_params(const ParamSet3& p) { return {{p.a[0], p.a[1], p.a[2]}, {p.b1}, p.q}; }

// ---------------------------------------------------------------------------
// Coefficient streams

/// On-demand power-series coefficients n -> a_n for n >= 0. Negative indices
/// read as zero; `last_index` marks polynomials.
struct CoeffSeq {
  std::function<ScaledComplex(long)> generator;
  std::optional<long> last_index;

  ScaledComplex operator()(long n) const {
    if (n < 0 || (last_index && n > *last_index)) return {};
    return generator(n);
  }

  static CoeffSeq polynomial(std::vector<cplx> coeffs) {
    const long last = static_cast<long>(coeffs.size()) - 1;
    return {[c = std::move(coeffs)](long n) { return ScaledComplex(c[static_cast<std::size_t>(n)]); }, last};
  }
};

/// Coefficient stream of r-phi-s (closed form per index).
inline CoeffSeq phi_coefficients(PhiParams p) {
  return {[p = std::move(p)](long n) { return phi_coefficient(p, n); }, std::nullopt};
}

/// Sum of c_n x^n for an entire (or polynomial) stream. Uses the shared
/// three-small-terms rule; polynomials are summed exactly.
inline SeriesValue sum_power_series(const CoeffSeq& c, cplx x, const Truncation& tr = {}) {
  ScaledComplex sum;
  double abs_sum_log2 = -std::numeric_limits<double>::infinity();
  ScaledComplex xn(1.0);
  const ScaledComplex xs(x);
  int small_run = 0;
  long n = 0;
  for (;; ++n) {
    if (c.last_index && n > *c.last_index) break;
    if (n >= tr.max_terms) throw Error(ErrorKind::max_terms_exceeded, "sum_power_series");
    const ScaledComplex term = c(n) * xn;
    xn *= xs;
    sum += term;
    const double lt = term.log2_abs();
    abs_sum_log2 = std::max(abs_sum_log2, lt);
    if (c.last_index) continue;
    if (n >= tr.min_terms && n > 0 && lt <= std::log2(tr.tail_tol) + sum.log2_abs()) {
      if (++small_run >= 3) {
        ++n;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  double err = 2.0 * kEps * static_cast<double>(n + 1);
  if (!sum.is_zero()) err *= std::exp2(std::max(0.0, abs_sum_log2 - sum.log2_abs()));
  if (!c.last_index) err += 3.0 * tr.tail_tol;
  return {sum, err, n};
}

// ---------------------------------------------------------------------------
// Classical functions

namespace detail {
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline bool near_nonpositive_integer(cplx x, double tol = 1e-12) {
  return std::abs(x.imag()) < tol && x.real() < 0.5 && std::abs(x.real() - std::round(x.real())) < tol;
}

inline cplx log_gamma_lanczos(cplx x) {
  // Valid for Re x >= 0.5.
  const cplx z = x - 1.0;
  cplx acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}
}  // namespace detail

/// Classical Gamma(x): Lanczos (g = 7) for Re x >= 1/2, reflection below.
inline cplx gamma_eval(cplx x) {
  if (detail::near_nonpositive_integer(x)) throw Error(ErrorKind::pole, "Gamma pole at a non-positive integer");
  if (x.real() < 0.5) {
    const cplx s = std::sin(std::numbers::pi * x);
    return std::numbers::pi / (s * std::exp(detail::log_gamma_lanczos(1.0 - x)));
  }
  return std::exp(detail::log_gamma_lanczos(x));
}

/// 2F2(alpha, beta; gamma, delta; z): entire series with factorial decay.
inline SeriesValue hyper_2F2_eval(cplx alpha, cplx beta, cplx gamma, cplx delta, cplx z, const Truncation& tr = {}) {
  if (detail::near_nonpositive_integer(gamma) || detail::near_nonpositive_integer(delta)) {
    throw Error(ErrorKind::pole, "2F2 lower parameter is a non-positive integer");
  }
  if (z == cplx(0.0)) return {ScaledComplex(1.0), 0.0, 1};
  std::optional<long> stop;
  for (const cplx a : {alpha, beta}) {
    if (detail::near_nonpositive_integer(a)) {
      const long k = std::lround(-a.real());
      if (!stop || k < *stop) stop = k;
    }
  }
  auto ratio = [&](long n) {
    const double m = static_cast<double>(n);
    return (alpha + m) * (beta + m) / ((gamma + m) * (delta + m) * (m + 1.0));
  };
  return detail::sum_by_ratio(ratio, z, tr, stop, "hyper_2F2_eval");
}

/// Coefficient of the classical 3F1(alpha1, alpha2, alpha3; beta1; x), the
/// formal q -> 1 limit of 3phi1 (kept for limit diagnostics; never summed).
inline cplx f31_formal_coeff(const ExponentParams& ep, long n) {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "f31_formal_coeff requires n >= 0");
  cplx c(1.0);
  for (long k = 0; k < n; ++k) {
    const double m = static_cast<double>(k);
    const cplx den = (ep.beta1 + m) * (m + 1.0);
    if (den == cplx(0.0)) throw Error(ErrorKind::pole, "3F1 lower parameter is a non-positive integer");
    c *= (ep.alpha[0] + m) * (ep.alpha[1] + m) * (ep.alpha[2] + m) / den;
  }
  return c;
}

}  // namespace qstokes
