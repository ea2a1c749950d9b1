#pragma once

/**
 * @file limits.hpp
 * @brief The q -> 1-0 limit of the 3phi1 connection formula and of the
 * ingredients it rests on: theta ratios, Gamma_q -> Gamma.
 *
 * The left-hand side of the limit is 3f1 with a_j = q^{alpha_j}, b1 = q^{beta1}
 * evaluated at x/(1-q); the right-hand side is the classical three-term sum of
 * Gamma factors, x^{-alpha_j} and 2F2(...; 1/x).
 */

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "qstokes/report.hpp"
#include "qstokes/resummation.hpp"

namespace qstokes {

inline constexpr double kBranchTol = 1e-12;

inline void require_principal_sector(cplx x, const char* what) {
  if (x == cplx(0.0)) throw Error(ErrorKind::zero_argument, what);
  if (std::abs(std::arg(x)) > std::numbers::pi - kBranchTol) {
    throw Error(ErrorKind::branch_violation, std::string(what) + ": requires -pi < arg x < pi");
  }
}

/// q_k = 1 - 2^{-k} for k = k_first..k_last.
inline std::vector<double> dyadic_schedule(int k_first, int k_last) {
  std::vector<double> qs;
  for (int k = k_first; k <= k_last; ++k) qs.push_back(1.0 - std::ldexp(1.0, -k));
  return qs;
}

/// Trend statistic over the last three entries: the largest ratio
/// err_{i+1}/err_i (0/0 counts as 0). Values < 1 mean strictly decreasing.
inline double tail_trend_ratio(const std::vector<double>& errs) {
  if (errs.size() < 3) return 0.0;
  double worst = 0.0;
  for (std::size_t i = errs.size() - 3; i + 1 < errs.size(); ++i) {
    const double a = errs[i], b = errs[i + 1];
    const double r = (a == 0.0 && b == 0.0) ? 0.0 : (a == 0.0 ? std::numeric_limits<double>::infinity() : b / a);
    worst = std::max(worst, r);
  }
  return worst;
}

inline CheckReport trend_report(std::string check, const std::vector<double>& errs) {
  std::vector<LabeledValue> diag;
  for (std::size_t i = 0; i < errs.size(); ++i) diag.push_back({"err[" + std::to_string(i) + "]", ScaledComplex(errs[i])});
  const double ratio = tail_trend_ratio(errs);
  CheckReport r = make_scalar_report(std::move(check), ratio, 1.0, {}, std::move(diag));
  // Strict decrease: an unchanged error is not progress unless it is exactly zero.
  r.passed = ratio < 1.0 || (ratio == 0.0);
  return r;
}

/// Both theta-ratio limits at one q:
///   ratio:   theta(q^beta x)/theta(q^alpha x)             -> x^{alpha-beta}
///   scaled:  theta(q^alpha X)/theta(q^beta X) (1-q)^{beta-alpha} -> x^{beta-alpha},  X = x/(1-q).
inline std::vector<CheckReport> theta_ratio_limit_check(cplx alpha, cplx beta, cplx x, QBase q, double tol = 5e-2,
                                                        const Truncation& tr = {}) {
  require_principal_sector(x, "theta_ratio_limit_check");
  const std::vector<LabeledValue> inputs{{"alpha", ScaledComplex(alpha)},
                                         {"beta", ScaledComplex(beta)},
                                         {"x", ScaledComplex(x)},
                                         {"q", ScaledComplex(q.value())}};
  const cplx log_x = std::log(x);
  const cplx qa = q.pow(alpha), qb = q.pow(beta);

  const SeriesValue r1 = theta_quotient(qb * x, qa * x, q, tr, "ratio theta(q^alpha x)");
  const ScaledComplex t1 = ScaledComplex::from_log((alpha - beta) * log_x);

  const double one_minus_q = 1.0 - q.value();
  const cplx big = x / one_minus_q;
  SeriesValue r2 = theta_quotient(qa * big, qb * big, q, tr, "scaled ratio theta(q^beta x/(1-q))");
  r2.value *= ScaledComplex::from_log((beta - alpha) * std::log(one_minus_q));
  const ScaledComplex t2 = ScaledComplex::from_log((beta - alpha) * log_x);

  return {make_report("limit/theta-ratio-1", r1.value, t1, tol, inputs),
          make_report("limit/theta-ratio-2", r2.value, t2, tol, inputs)};
}

/// |Gamma_q(x) - Gamma(x)| / |Gamma(x)| along the schedule, followed by a
/// trend report over the last three entries.
inline std::vector<CheckReport> qgamma_limit_check(cplx x, const std::vector<double>& q_schedule, double tol = 1.0,
                                                   const Truncation& tr = {}) {
  const cplx classical = gamma_eval(x);
  std::vector<CheckReport> out;
  std::vector<double> errs;
  for (const double qv : q_schedule) {
    const QBase q(qv);
    const SeriesValue g = qgamma_eval(x, q, tr);
    out.push_back(make_report("limit/qgamma", g.value, ScaledComplex(classical), tol,
                              {{"x", ScaledComplex(x)}, {"q", ScaledComplex(qv)}}));
    errs.push_back(out.back().rel_err);
  }
  if (q_schedule.size() >= 3) out.push_back(trend_report("limit/qgamma/trend", errs));
  return out;
}

/// Classical right-hand side of the limit formula:
///   sum_j Gamma(beta1) Gamma(alpha_k - alpha_j) Gamma(alpha_l - alpha_j)
///         / (Gamma(alpha_k) Gamma(alpha_l) Gamma(beta1 - alpha_j))
///         x^{-alpha_j} 2F2(alpha_j, alpha_j+1-beta1; alpha_j+1-alpha_k, alpha_j+1-alpha_l; 1/x)
inline SeriesValue f31_limit_rhs_eval(const ExponentParams& ep, cplx x, const Truncation& tr = {}) {
  require_principal_sector(x, "f31_limit_rhs_eval");
  ep.validate();
  const cplx log_x = std::log(x);
  std::array<SeriesValue, 3> parts;
  for (int j = 0; j < 3; ++j) {
    const auto [k, l] = ParamSet3::others(j);
    const cplx aj = ep.alpha[j], ak = ep.alpha[k], al = ep.alpha[l], b = ep.beta1;
    const cplx coef = gamma_eval(b) * gamma_eval(ak - aj) * gamma_eval(al - aj) /
                      (gamma_eval(ak) * gamma_eval(al) * gamma_eval(b - aj));
    const SeriesValue f = hyper_2F2_eval(aj, aj + 1.0 - b, aj + 1.0 - ak, aj + 1.0 - al, 1.0 / x, tr);
    parts[j] = f;
    parts[j].value *= ScaledComplex(coef) * ScaledComplex::from_log(-aj * log_x);
    parts[j].err_est += 1e-13;  // Lanczos Gamma accuracy
  }
  return sum_values(parts);
}

struct LimitScanConfig {
  std::vector<double> q_schedule = dyadic_schedule(4, 10);
  cplx x = std::polar(4.0, std::numbers::pi / 6.0);
  ExponentParams ep{{0.3, 0.7, 1.1}, 1.9};
  cplx lambda = std::polar(1.1, 0.7);
  Truncation tr;
  double tol = 5e-2;

  void validate() const {
    require_principal_sector(x, "LimitScanConfig");
    ep.validate();
    if (lambda == cplx(0.0)) throw Error(ErrorKind::invalid_argument, "lambda must be nonzero");
    for (std::size_t i = 0; i < q_schedule.size(); ++i) {
      if (!(q_schedule[i] > 0.0 && q_schedule[i] < 1.0)) throw Error(ErrorKind::invalid_argument, "q outside (0,1)");
      if (i > 0 && q_schedule[i] <= q_schedule[i - 1]) {
        throw Error(ErrorKind::invalid_argument, "q schedule must be strictly increasing");
      }
    }
  }
};

/// Left-hand side of the limit formula at one q: 3f1(q^alpha; q^beta1; q; lambda, x/(1-q)).
inline SeriesValue f31_limit_lhs_eval(const ExponentParams& ep, cplx lambda, cplx x, QBase q, const Truncation& tr = {}) {
  const ParamSet3 p = ParamSet3::from_exponents(ep, q);
  ResummationConfig rc;
  rc.lambda = lambda;
  rc.tr = tr;
  rc.n_plus = rc.n_minus = ResummationConfig::recommended_bound(q);
  return f31_eval(p, x / (1.0 - q.value()), rc);
}

/// One report per scheduled q (LHS at x/(1-q) against the classical RHS at x),
/// then a trend report when the schedule has at least three entries. Failures
/// at individual q are recorded, not thrown.
inline std::vector<CheckReport> f31_limit_scan(const LimitScanConfig& cfg) {
  cfg.validate();
  const SeriesValue rhs = f31_limit_rhs_eval(cfg.ep, cfg.x, cfg.tr);
  std::vector<CheckReport> out;
  std::vector<double> errs;
  for (const double qv : cfg.q_schedule) {
    const std::vector<LabeledValue> inputs{{"q", ScaledComplex(qv)}, {"x", ScaledComplex(cfg.x)},
                                           {"lambda", ScaledComplex(cfg.lambda)}};
    try {
      const SeriesValue lhs = f31_limit_lhs_eval(cfg.ep, cfg.lambda, cfg.x, QBase(qv), cfg.tr);
      out.push_back(make_report("limit/f31", lhs.value, rhs.value, cfg.tol, inputs,
                                {{"lhs_err_est", ScaledComplex(lhs.err_est)},
                                 {"lhs_terms", ScaledComplex(static_cast<double>(lhs.terms_used))},
                                 {"lhs_argument_scale", ScaledComplex(1.0 / (1.0 - qv))}}));
    } catch (const Error& e) {
      CheckReport r = make_scalar_report("limit/f31", std::numeric_limits<double>::infinity(), cfg.tol, inputs);
      r.rhs = rhs.value;
      r.passed = false;
      r.diagnostics.push_back({std::string("error:") + e.what(), ScaledComplex(0.0)});
      out.push_back(std::move(r));
    }
    errs.push_back(out.back().rel_err);
  }
  if (cfg.q_schedule.size() >= 3) out.push_back(trend_report("limit/f31/trend", errs));
  return out;
}

/// Lambda robustness at the final scheduled q: with errors e1, e2 of the two
/// spirals against the classical limit and discrepancy d = |LHS1 - LHS2|/|RHS|,
/// passes when d <= max(e1, e2) and the errors are within a factor 2.
inline CheckReport f31_limit_lambda_robustness(const LimitScanConfig& cfg, cplx lambda2) {
  cfg.validate();
  const QBase q(cfg.q_schedule.back());
  const SeriesValue rhs = f31_limit_rhs_eval(cfg.ep, cfg.x, cfg.tr);
  const SeriesValue l1 = f31_limit_lhs_eval(cfg.ep, cfg.lambda, cfg.x, q, cfg.tr);
  const SeriesValue l2 = f31_limit_lhs_eval(cfg.ep, lambda2, cfg.x, q, cfg.tr);
  const double e1 = relative_difference(l1.value, rhs.value);
  const double e2 = relative_difference(l2.value, rhs.value);
  const double d = std::exp2((l1.value - l2.value).log2_abs() - rhs.value.log2_abs());
  const double common = std::max(e1, e2);
  const double spread = std::max(e1, e2) / std::max(std::min(e1, e2), 1e-300);
  CheckReport r = make_scalar_report("limit/f31/lambda", common > 0.0 ? d / common : d, 1.0,
                                     {{"q", ScaledComplex(q.value())},
                                      {"lambda1", ScaledComplex(cfg.lambda)},
                                      {"lambda2", ScaledComplex(lambda2)}},
                                     {{"err_lambda1", ScaledComplex(e1)},
                                      {"err_lambda2", ScaledComplex(e2)},
                                      {"discrepancy", ScaledComplex(d)},
                                      {"error_spread", ScaledComplex(spread)}});
  r.lhs = l1.value;
  r.rhs = l2.value;
  r.passed = r.rel_err <= 1.0 && spread <= 2.0;
  return r;
}

}  // namespace qstokes
