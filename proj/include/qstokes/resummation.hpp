#pragma once

/**
 * @file resummation.hpp
 * @brief q-Borel / q-Laplace resummation of the divergent 3phi1.
 *
 *   Borel:   sum a_n x^n  ->  sum a_n q^{n(n-1)/2} xi^n
 *   Laplace: psi          ->  sum_{n in Z} psi(lambda q^n) / theta(lambda q^n / x)
 *
 * The Borel image of 3phi1(a1,a2,a3; b1; q, x) is 3phi2(a1,a2,a3; b1,0; q,-xi),
 * a radius-one series. Inside |xi| <= rho it is summed directly; outside it is
 * continued through the degenerate Slater formula (three entire 2phi2 series
 * with theta-quotient prefactors). The Laplace sum then yields 3f1, which
 * depends on the spiral [lambda; q] but not on the representative lambda.
 */

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qstokes/connection.hpp"
#include "qstokes/qseries.hpp"
#include "qstokes/report.hpp"

namespace qstokes {

/// n -> a_n q^{n(n-1)/2}.
inline CoeffSeq qborel_map(const CoeffSeq& c, QBase q) {
  return {[c, q](long n) {
            const double nn = static_cast<double>(n);
            return c(n) * ScaledComplex::from_log({0.5 * nn * (nn - 1.0) * q.log(), 0.0});
          },
          c.last_index};
}

/// Formal coefficient stream of the divergent 3phi1(a1,a2,a3; b1; q, x).
inline CoeffSeq phi31_coefficients(const ParamSet3& p) { return phi_coefficients(phi31_params(p)); }

struct ResummationConfig {
  cplx lambda = std::polar(1.1, 0.7);
  /// Radius up to which the Borel image is summed as a power series.
  double rho = 0.5;
  Truncation tr;
  /// Bounds on the bilateral index, counted from the anchor index.
  long n_plus = 200;
  long n_minus = 200;

  void validate(QBase q) const {
    tr.validate();
    if (lambda == cplx(0.0)) throw Error(ErrorKind::invalid_argument, "lambda must be nonzero");
    if (spiral_contains(Spiral(-1.0, q), lambda)) {
      throw Error(ErrorKind::invalid_argument, "lambda lies on -q^Z (continuation prefactor poles on the spiral)");
    }
    if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::invalid_argument, "rho must lie in (0, 1)");
    if (n_plus <= 0 || n_minus <= 0) throw Error(ErrorKind::invalid_argument, "bilateral bounds must be positive");
  }

  /// Bounds wide enough for the Gaussian decay of 1/theta at base q: the
  /// summand falls by e^{-40} about sqrt(80/|log q|) indices from its peak.
  static long recommended_bound(QBase q) {
    const double width = std::sqrt(80.0 / -q.log());
    return std::max(200L, static_cast<long>(std::ceil(3.0 * width)));
  }
};

using Continuation = std::function<SeriesValue(cplx)>;

/// Cancellation factor of the Laplace sum at x: sum |t_n| / |sum t_n| grows
/// like exp(arg(lambda/x)^2 / (2 |log q|)), the size of 1/theta off the
/// positive axis. Rounding in each term is amplified by about this much.
inline double laplace_condition_estimate(cplx lambda, cplx x, QBase q) {
  const double phase = std::arg(lambda / x);
  return std::exp(phase * phase / (-2.0 * q.log()));
}

/**
 * Laplace sum  sum_{n in Z} phi(lambda q^n) / theta(lambda q^n / x).
 *
 * Summation starts at the anchor index n0 where |lambda q^n0| is closest to
 * |x| (the neighbourhood of the summand's peak) and proceeds upward, then
 * downward. Each direction stops after two consecutive decreasing terms below
 * tail_tol times the running maximum; reaching n_plus/n_minus without that
 * raises MaxTermsExceeded.
 */
inline SeriesValue qlaplace_eval(const Continuation& phi, cplx x, const ResummationConfig& cfg, QBase q) {
  cfg.validate(q);
  if (x == cplx(0.0)) throw Error(ErrorKind::zero_argument, "q-Laplace transform at x = 0");
  if (spiral_contains(Spiral(-cfg.lambda, q), x)) {
    throw Error(ErrorKind::spiral_pole, "x lies on the spiral [-lambda; q] where theta(lambda q^n/x) vanishes");
  }
  const long n0 = std::lround(std::log(std::abs(x) / std::abs(cfg.lambda)) / q.log());

  ScaledComplex sum;
  ScaledComplex abs_err;  // sum of |t_n| * rel_err_n, real and positive
  double max_log2 = -std::numeric_limits<double>::infinity();
  long terms = 0;

  auto add_term = [&](long n) {
    const cplx xi = cfg.lambda * q.pow(static_cast<double>(n));
    const SeriesValue num = phi(xi);
    const SeriesValue den = theta_eval(xi / x, q, cfg.tr);
    const ScaledComplex t = num.value / den.value;
    sum += t;
    const double lt = t.log2_abs();
    if (std::isfinite(lt)) {
      abs_err += ScaledComplex::from_log({lt * std::numbers::ln2 + std::log(std::max(num.err_est + den.err_est, kEps)), 0.0});
    }
    max_log2 = std::max(max_log2, lt);
    ++terms;
    return lt;
  };

  add_term(n0);
  const double log2_tol = std::log2(cfg.tr.tail_tol);
  for (int dir : {1, -1}) {
    const long bound = dir > 0 ? cfg.n_plus : cfg.n_minus;
    double prev = std::numeric_limits<double>::infinity();
    int run = 0;
    long step = 1;
    for (; step <= bound; ++step) {
      const double lt = add_term(n0 + dir * step);
      const bool small = lt < max_log2 + log2_tol && lt < prev;
      run = small ? run + 1 : 0;
      prev = lt;
      if (run >= 2) break;
    }
    if (step > bound) {
      throw Error(ErrorKind::max_terms_exceeded, "q-Laplace summand does not decay within the bilateral bound (" +
                                                     std::string(dir > 0 ? "n_plus" : "n_minus") + ")");
    }
  }

  double err = std::numeric_limits<double>::infinity();
  if (!sum.is_zero()) {
    const double tail = 2.0 * cfg.tr.tail_tol * std::exp2(max_log2 - sum.log2_abs());
    err = std::exp2(abs_err.log2_abs() - sum.log2_abs()) + tail;
  }
  return {sum, err, terms};
}

/// Analytic continuation of the Borel image phi(xi) = 3phi2(a1,a2,a3; b1,0; q, -xi).
class BorelImage {
 public:
  BorelImage(const ParamSet3& p, double rho = 0.5, const Truncation& tr = {})
      : continuation_(p, tr), series_({p.a[0], p.a[1], p.a[2]}, {p.b1, 0.0}, p.q), rho_(rho), tr_(tr) {}

  /// Power series; DivergentRequest for |xi| >= 1.
  SeriesValue direct(cplx xi) const { return phi_eval(series_, -xi, tr_); }

  /// Degenerate Slater continuation at x = -xi; PrefactorPole for -xi in q^Z.
  SeriesValue continued(cplx xi) const { return continuation_(-xi); }

  SeriesValue operator()(cplx xi) const { return std::abs(xi) <= rho_ ? direct(xi) : continued(xi); }

  const ParamSet3& params() const { return continuation_.params(); }

 private:
  DegenerateSlater continuation_;
  PhiParams series_;
  double rho_;
  Truncation tr_;
};

inline SeriesValue borel_image_eval(const ParamSet3& p, cplx xi, const ResummationConfig& cfg) {
  cfg.validate(p.q);
  return BorelImage(p, cfg.rho, cfg.tr)(xi);
}

/// 3f1(a1,a2,a3; b1; q; lambda, x): the q-Borel-Laplace sum of 3phi1.
inline SeriesValue f31_eval(const ParamSet3& p, cplx x, const ResummationConfig& cfg) {
  cfg.validate(p.q);
  const BorelImage image(p, cfg.rho, cfg.tr);
  return qlaplace_eval([&image](cplx xi) { return image(xi); }, x, cfg, p.q);
}

/// Compares direct summation of an entire series with its Borel-Laplace
/// round trip at each sample point; the report carries the worst point and
/// per-point errors as diagnostics.
inline CheckReport roundtrip_check(const CoeffSeq& c, const std::vector<cplx>& sample_points,
                                   const ResummationConfig& cfg, QBase q, double tol, std::string name = "roundtrip") {
  const CoeffSeq borel = qborel_map(c, q);
  const Continuation psi = [&](cplx xi) { return sum_power_series(borel, xi, cfg.tr); };
  CheckReport worst;
  worst.passed = true;
  std::vector<LabeledValue> diag;
  double worst_err = -1.0;
  for (std::size_t i = 0; i < sample_points.size(); ++i) {
    const cplx x = sample_points[i];
    const SeriesValue direct = sum_power_series(c, x, cfg.tr);
    const SeriesValue trip = qlaplace_eval(psi, x, cfg, q);
    const double err = relative_difference(direct.value, trip.value);
    diag.push_back({"rel_err[" + std::to_string(i) + "]", ScaledComplex(err)});
    if (err > worst_err) {
      worst_err = err;
      worst = make_report(name, direct.value, trip.value, tol,
                          {{"x", ScaledComplex(x)}, {"lambda", ScaledComplex(cfg.lambda)}, {"q", ScaledComplex(q.value())}});
    }
  }
  worst.diagnostics = std::move(diag);
  worst.diagnostics.push_back({"points", ScaledComplex(static_cast<double>(sample_points.size()))});
  return worst;
}

}  // namespace qstokes
