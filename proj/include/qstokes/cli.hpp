#pragma once

/**
 * @file cli.hpp
 * @brief Command dispatch behind the qstokes executable, kept in the library
 * so the tests can drive it without spawning processes.
 *
 * Exit codes: 0 every check passed, 1 some check failed, 2 configuration or
 * precondition error (bad flags, parameters outside their domain, x on an
 * excluded spiral).
 */

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qstokes/report_io.hpp"
#include "qstokes/suites.hpp"

namespace qstokes {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitConfig = 2 };

struct RunConfig {
  std::string command;  // eval | verify | scan
  std::string target;
  SuiteOptions opts;
  std::optional<std::array<cplx, 3>> alpha;
  std::optional<cplx> beta1;
  std::optional<long> n;  // eval poch: finite length
  int k_first = 4, k_last = 10;
  int lambda_grid = 8;
  Format format = Format::json;
};

/// Parses "K1..K2" (or a single "K") into the dyadic schedule bounds.
inline std::pair<int, int> parse_k_range(const std::string& s) {
  auto to_int = [&](const std::string& t) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(t, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != t.size()) throw Error(ErrorKind::invalid_argument, "malformed --k range '" + s + "'");
    return v;
  };
  const std::size_t dots = s.find("..");
  const int a = to_int(dots == std::string::npos ? s : s.substr(0, dots));
  const int b = dots == std::string::npos ? a : to_int(s.substr(dots + 2));
  if (a < 1 || b < a || b > 40) throw Error(ErrorKind::invalid_argument, "--k range must satisfy 1 <= K1 <= K2 <= 40");
  return {a, b};
}

namespace detail {

inline CheckReport eval_report(std::string name, const SeriesValue& v, double tol, std::vector<LabeledValue> inputs) {
  CheckReport r = make_report(std::move(name), v.value, v.value, tol, std::move(inputs),
                              {{"err_est", ScaledComplex(v.err_est)},
                               {"terms_used", ScaledComplex(static_cast<double>(v.terms_used))}});
  r.rel_err = v.err_est;
  r.passed = v.err_est <= tol;
  return r;
}

/// Applies exponent flags: a_j = q^{alpha_j}, b1 = q^{beta1} where no explicit value is given.
inline SuiteOptions resolved_options(const RunConfig& c) {
  SuiteOptions o = c.opts;
  const QBase q(o.base());
  if (c.alpha) {
    if (!o.a1) o.a1 = q.pow((*c.alpha)[0]);
    if (!o.a2) o.a2 = q.pow((*c.alpha)[1]);
    if (!o.a3) o.a3 = q.pow((*c.alpha)[2]);
  }
  if (c.beta1 && !o.b1) o.b1 = q.pow(*c.beta1);
  return o;
}

inline std::vector<CheckReport> run_eval(const RunConfig& c) {
  const SuiteOptions o = resolved_options(c);
  const QBase q(o.base());
  const double tol = o.tol_or(1e-10);
  const cplx x = o.x.value_or(std::polar(3.0, std::numbers::pi / 4.0));
  if (c.target == "poch") {
    const cplx a = o.a1.value_or(q.pow(0.3));
    std::vector<LabeledValue> in{{"q", ScaledComplex(q.value())}, {"a", ScaledComplex(a)}};
    if (c.n) {
      if (*c.n < 0) throw Error(ErrorKind::invalid_argument, "--n must be non-negative");
      in.push_back({"n", ScaledComplex(static_cast<double>(*c.n))});
      return {eval_report("eval/poch", SeriesValue{qpoch_n(a, q, *c.n), 2.0 * kEps * static_cast<double>(*c.n), *c.n},
                          tol, std::move(in))};
    }
    return {eval_report("eval/poch", qpoch_inf(a, q, o.tr), tol, std::move(in))};
  }
  if (c.target == "theta") {
    return {eval_report("eval/theta", theta_eval(x, q, o.tr), tol, {{"q", ScaledComplex(q.value())}, {"x", ScaledComplex(x)}})};
  }
  if (c.target == "qgamma") {
    return {eval_report("eval/qgamma", qgamma_eval(x, q, o.tr), tol, {{"q", ScaledComplex(q.value())}, {"x", ScaledComplex(x)}})};
  }
  if (c.target == "phi") {
    std::vector<cplx> upper, lower;
    std::vector<LabeledValue> in{{"q", ScaledComplex(q.value())}};
    for (const auto& [name, v] : {std::pair{"a1", o.a1}, {"a2", o.a2}, {"a3", o.a3}}) {
      if (v) {
        upper.push_back(*v);
        in.push_back({name, ScaledComplex(*v)});
      }
    }
    for (const auto& [name, v] : {std::pair{"b1", o.b1}, {"b2", o.b2}}) {
      if (v) {
        lower.push_back(*v);
        in.push_back({name, ScaledComplex(*v)});
      }
    }
    in.push_back({"x", ScaledComplex(x)});
    return {eval_report("eval/phi", phi_eval(PhiParams(upper, lower, q), x, o.tr), tol, std::move(in))};
  }
  if (c.target == "f31") {
    const ParamSet3 p = o.params3();
    p.validate();
    ResummationConfig cfg;
    cfg.lambda = o.lambda;
    cfg.tr = o.tr;
    return {eval_report("eval/f31", f31_eval(p, x, cfg), std::max(tol, 1e-8),
                        detail::with(param_inputs(p), {{"lambda", ScaledComplex(cfg.lambda)}, {"x", ScaledComplex(x)}}))};
  }
  throw Error(ErrorKind::invalid_argument, "unknown eval target '" + c.target + "'");
}

inline std::vector<CheckReport> run_verify(const RunConfig& c) {
  const SuiteOptions o = resolved_options(c);
  if (c.target == "triple-product") return verify_triple_product(o);
  if (c.target == "roundtrip") return verify_roundtrip(o);
  if (c.target == "watson") return verify_watson(o);
  if (c.target == "slater") return verify_slater(o);
  if (c.target == "lemma-ni") return verify_lemma_ni(o);
  if (c.target == "main") return verify_main(o);
  if (c.target == "elliptic") return verify_elliptic(o);
  if (c.target == "residual") return verify_residual(o);
  if (c.target == "recurrence") return verify_recurrence(o);
  throw Error(ErrorKind::invalid_argument, "unknown verify target '" + c.target + "'");
}

/// Returns the rows plus, for the limit scan, the trend verdict (printed separately).
inline std::vector<CheckReport> run_scan(const RunConfig& c, std::optional<CheckReport>& trend) {
  if (c.target == "limit") {
    LimitScanConfig cfg;
    cfg.q_schedule = dyadic_schedule(c.k_first, c.k_last);
    if (c.opts.x) cfg.x = *c.opts.x;
    if (c.alpha) cfg.ep.alpha = *c.alpha;
    if (c.beta1) cfg.ep.beta1 = *c.beta1;
    cfg.lambda = c.opts.lambda;
    cfg.tr = c.opts.tr;
    cfg.tol = c.opts.tol_or(cfg.tol);
    std::vector<CheckReport> rows = f31_limit_scan(cfg);
    if (!rows.empty() && rows.back().check == "limit/f31/trend") {
      trend = rows.back();
      rows.pop_back();
    }
    return rows;
  }
  if (c.target == "stokes") return scan_stokes(resolved_options(c), c.lambda_grid);
  throw Error(ErrorKind::invalid_argument, "unknown scan target '" + c.target + "'");
}

}  // namespace detail

/// Runs one command, writing reports to `out` and diagnostics to `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.opts.tr.validate();
    std::vector<CheckReport> reports;
    std::optional<CheckReport> trend;
    if (c.command == "eval") {
      reports = detail::run_eval(c);
    } else if (c.command == "verify") {
      reports = detail::run_verify(c);
    } else if (c.command == "scan") {
      reports = detail::run_scan(c, trend);
    } else {
      throw Error(ErrorKind::invalid_argument, "unknown command '" + c.command + "'");
    }
    write_reports(out, reports, c.format);
    bool ok = all_passed(reports);
    if (trend) {
      err << to_text_line(*trend) << '\n';
      ok = ok && trend->passed;
    }
    return ok ? kExitPass : kExitFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace qstokes
