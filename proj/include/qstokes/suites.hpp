#pragma once

/**
 * @file suites.hpp
 * @brief Verification suites: each draws a reproducible sample grid from a
 * seed, evaluates both sides of one identity family, and returns one report
 * per sample point. The CLI and the acceptance tests drive these.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qstokes/limits.hpp"

namespace qstokes {

/// Parameter bindings and sampling controls shared by all suites. Unset
/// optionals fall back to the "paper-default" profile.
struct SuiteOptions {
  std::optional<double> q;
  std::optional<cplx> a1, a2, a3, b1, b2;
  cplx lambda = std::polar(1.1, 0.7);
  std::optional<cplx> x;
  std::optional<double> tol;
  long samples = 0;  // 0: suite default
  std::uint64_t seed = 7;
  Truncation tr;

  double base() const { return q.value_or(0.5); }
  double tol_or(double fallback) const { return tol.value_or(fallback); }
  long samples_or(long fallback) const { return samples > 0 ? samples : fallback; }

  /// (a1, a2, a3; b1) = (q^0.3, q^0.7, q^1.1; q^0.4) unless overridden.
  ParamSet3 params3() const {
    const QBase qb(base());
    return {a1.value_or(qb.pow(0.3)), a2.value_or(qb.pow(0.7)), a3.value_or(qb.pow(1.1)), b1.value_or(qb.pow(0.4)), qb};
  }
};

namespace detail {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double phase() { return uniform(-std::numbers::pi, std::numbers::pi); }
  /// |x| log-uniform in [r_lo, r_hi], phase uniform.
  cplx log_annulus(double r_lo, double r_hi) {
    return std::polar(std::exp(uniform(std::log(r_lo), std::log(r_hi))), phase());
  }
  /// |x| uniform in [r_lo, r_hi], phase uniform.
  cplx annulus(double r_lo, double r_hi) { return std::polar(uniform(r_lo, r_hi), phase()); }

 private:
  std::mt19937_64 rng_;
};

/// Distance from x to the spiral lambda q^Z in log coordinates.
inline double spiral_log_distance(cplx lambda, QBase q, cplx x) {
  const SpiralPosition p = spiral_position(Spiral(lambda, q), x);
  return std::hypot(p.index_offset * q.log(), p.phase_offset);
}

inline bool clear_of(std::initializer_list<cplx> lambdas, QBase q, cplx x, double margin = 0.05) {
  for (const cplx l : lambdas) {
    if (spiral_log_distance(l, q, x) < margin) return false;
  }
  return true;
}

template <class Draw, class Accept>
cplx draw_until(Draw&& draw, Accept&& accept) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const cplx x = draw();
    if (accept(x)) return x;
  }
  throw Error(ErrorKind::invalid_argument, "could not draw a sample point clear of the excluded spirals");
}

inline std::vector<LabeledValue> param_inputs(const ParamSet3& p) {
  return {{"q", ScaledComplex(p.q.value())}, {"a1", ScaledComplex(p.a[0])}, {"a2", ScaledComplex(p.a[1])},
          {"a3", ScaledComplex(p.a[2])}, {"b1", ScaledComplex(p.b1)}};
}

inline std::vector<LabeledValue> with(std::vector<LabeledValue> v, std::initializer_list<LabeledValue> extra) {
  v.insert(v.end(), extra.begin(), extra.end());
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Bilateral sum against the triple product. q is drawn from [0.1, 0.9]
/// unless fixed; |x| is log-uniform on [0.01, 100] with arbitrary phase,
/// kept 0.05 (log distance) away from the zero set -q^Z.
inline std::vector<CheckReport> verify_triple_product(const SuiteOptions& o) {
  detail::Sampler s(o.seed);
  const double tol = o.tol_or(1e-10);
  std::vector<CheckReport> out;
  const long n = o.x ? 1 : o.samples_or(1000);
  for (long i = 0; i < n; ++i) {
    const QBase q(o.q ? *o.q : s.uniform(0.1, 0.9));
    const cplx x = o.x ? *o.x : detail::draw_until([&] { return s.log_annulus(0.01, 100.0); },
                                                  [&](cplx z) { return detail::clear_of({-1.0}, q, z); });
    const SeriesValue bil = theta_eval(x, q, o.tr, ThetaRoute::bilateral);
    const SeriesValue prod = theta_eval(x, q, o.tr, ThetaRoute::triple_product);
    out.push_back(make_report("theta/triple-product", bil.value, prod.value, tol,
                              {{"q", ScaledComplex(q.value())}, {"x", ScaledComplex(x)}},
                              {{"bilateral_terms", ScaledComplex(static_cast<double>(bil.terms_used))},
                               {"product_factors", ScaledComplex(static_cast<double>(prod.terms_used))}}));
  }
  return out;
}

/// Borel-Laplace round trip of entire functions: the constant 1 (the identity
/// sum_n 1/theta(lambda q^n/x) = 1), polynomials of degree 1..10 with random
/// coefficients, 1 + x + x^2, and a 2phi2 series checked against phi_eval.
inline std::vector<CheckReport> verify_roundtrip(const SuiteOptions& o) {
  detail::Sampler s(o.seed);
  const QBase q(o.base());
  const double tol = o.tol_or(1e-9);
  ResummationConfig cfg;
  cfg.lambda = o.lambda;
  cfg.tr = o.tr;
  cfg.validate(q);
  const long points = o.samples_or(20);

  struct Case {
    std::string name;
    CoeffSeq coeffs;
    std::optional<PhiParams> oracle;
  };
  std::vector<Case> cases;
  cases.push_back({"roundtrip/one", CoeffSeq::polynomial({1.0}), std::nullopt});
  cases.push_back({"roundtrip/1+x+x^2", CoeffSeq::polynomial({1.0, 1.0, 1.0}), std::nullopt});
  for (int deg = 1; deg <= 10; ++deg) {
    std::vector<cplx> c(static_cast<std::size_t>(deg) + 1);
    c[0] = 1.0;
    for (int k = 1; k <= deg; ++k) c[static_cast<std::size_t>(k)] = s.annulus(0.2, 1.0);
    cases.push_back({"roundtrip/poly" + std::to_string(deg), CoeffSeq::polynomial(std::move(c)), std::nullopt});
  }
  PhiParams p22({cplx(0.3, 0.1), -0.4}, {0.6, cplx(0.2, 0.25)}, q);
  cases.push_back({"roundtrip/2phi2", phi_coefficients(p22), p22});

  std::vector<CheckReport> out;
  for (const auto& c : cases) {
    const CoeffSeq borel = qborel_map(c.coeffs, q);
    const Continuation psi = [&](cplx xi) { return sum_power_series(borel, xi, cfg.tr); };
    const long n = o.x ? 1 : points;
    for (long i = 0; i < n; ++i) {
      const cplx x = o.x ? *o.x : detail::draw_until([&] { return s.log_annulus(0.2, 5.0); },
                                                    [&](cplx z) { return detail::clear_of({-cfg.lambda}, q, z); });
      const SeriesValue direct = c.oracle ? phi_eval(*c.oracle, x, cfg.tr) : sum_power_series(c.coeffs, x, cfg.tr);
      const SeriesValue trip = qlaplace_eval(psi, x, cfg, q);
      out.push_back(make_report(c.name, direct.value, trip.value, tol,
                                {{"q", ScaledComplex(q.value())}, {"lambda", ScaledComplex(cfg.lambda)},
                                 {"x", ScaledComplex(x)}},
                                {{"laplace_terms", ScaledComplex(static_cast<double>(trip.terms_used))}}));
    }
  }
  return out;
}

/// Watson: 2phi1(a,b;c;q,x) summed directly against the two-term formula on
/// max(|cq/(ab)|, 0.1) < |x| < 0.9. Defaults (a,b,c) = (q^0.3, q^0.8, q^1.6).
inline std::vector<CheckReport> verify_watson(const SuiteOptions& o) {
  detail::Sampler s(o.seed);
  const QBase q(o.base());
  const cplx a = o.a1.value_or(q.pow(0.3)), b = o.a2.value_or(q.pow(0.8)), c = o.b1.value_or(q.pow(1.6));
  const double tol = o.tol_or(1e-8);
  const double lo = std::max(std::abs(c * q.value() / (a * b)), 0.1);
  if (lo >= 0.85) throw Error(ErrorKind::invalid_argument, "Watson annulus is empty for these parameters");
  const PhiParams lhs_series({a, b}, {c}, q);
  std::vector<CheckReport> out;
  const long n = o.x ? 1 : o.samples_or(20);
  for (long i = 0; i < n; ++i) {
    const cplx x = o.x ? *o.x : detail::draw_until([&] { return s.annulus(lo + 0.05 * (0.9 - lo), 0.9); },
                                                  [&](cplx z) { return detail::clear_of({1.0}, q, z); });
    const SeriesValue lhs = phi_eval(lhs_series, x, o.tr);
    const SeriesValue rhs = watson_rhs_eval(a, b, c, q, x, o.tr);
    out.push_back(make_report("watson", lhs.value, rhs.value, tol,
                              {{"q", ScaledComplex(q.value())}, {"a", ScaledComplex(a)}, {"b", ScaledComplex(b)},
                               {"c", ScaledComplex(c)}, {"x", ScaledComplex(x)}}));
  }
  return out;
}

/// Slater: 3phi2(a1,a2,a3; b1,b2; q, x) summed directly against the
/// three-term formula on max(|q b1 b2/(a1 a2 a3)|, 0.1) < |x| < 0.9, plus the
/// b2 -> 0 continuity check against the degenerate formula at b2 = 1e-6.
inline std::vector<CheckReport> verify_slater(const SuiteOptions& o) {
  detail::Sampler s(o.seed);
  const ParamSet3 p = o.params3();
  const QBase q = p.q;
  const cplx b2 = o.b2.value_or(q.pow(2.5));
  const double tol = o.tol_or(1e-8);
  const double lo = std::max(std::abs(q.value() * p.b1 * b2 / p.product()), 0.1);
  if (lo >= 0.85) throw Error(ErrorKind::invalid_argument, "Slater annulus is empty for these parameters");
  const PhiParams lhs_series({p.a[0], p.a[1], p.a[2]}, {p.b1, b2}, q);
  std::vector<CheckReport> out;
  const long n = o.x ? 1 : o.samples_or(20);
  for (long i = 0; i < n; ++i) {
    const cplx x = o.x ? *o.x : detail::draw_until([&] { return s.annulus(lo + 0.05 * (0.9 - lo), 0.9); },
                                                  [&](cplx z) { return detail::clear_of({1.0}, q, z); });
    const SeriesValue lhs = phi_eval(lhs_series, x, o.tr);
    const SeriesValue rhs = slater_rhs_eval(p.a[0], p.a[1], p.a[2], p.b1, b2, q, x, o.tr);
    out.push_back(make_report("slater", lhs.value, rhs.value, tol,
                              detail::with(detail::param_inputs(p), {{"b2", ScaledComplex(b2)}, {"x", ScaledComplex(x)}})));
  }
  const cplx x0 = o.x.value_or(std::polar(0.6, 0.9));
  const SeriesValue near = slater_rhs_eval(p.a[0], p.a[1], p.a[2], p.b1, 1e-6, q, x0, o.tr);
  const SeriesValue limit = lemma_ni_rhs_eval(p, x0, o.tr);
  out.push_back(make_report("slater/b2-to-zero", near.value, limit.value, 1e-6,
                            detail::with(detail::param_inputs(p), {{"b2", ScaledComplex(1e-6)}, {"x", ScaledComplex(x0)}})));
  return out;
}

/// Degenerate Slater formula against the direct 3phi2(a; b1, 0; q, x) for
/// 0.1 <= |x| <= 0.9, and the Borel image's two routes on 0.5 < |xi| < 0.9.
inline std::vector<CheckReport> verify_lemma_ni(const SuiteOptions& o) {
  detail::Sampler s(o.seed);
  const ParamSet3 p = o.params3();
  const QBase q = p.q;
  const double tol = o.tol_or(1e-8);
  const DegenerateSlater lemma(p, o.tr);
  const PhiParams direct({p.a[0], p.a[1], p.a[2]}, {p.b1, 0.0}, q);
  const BorelImage image(p, 0.5, o.tr);
  std::vector<CheckReport> out;
  const long n = o.x ? 1 : o.samples_or(20);
  for (long i = 0; i < n; ++i) {
    const cplx x = o.x ? *o.x : detail::draw_until([&] { return s.annulus(0.1, 0.9); },
                                                  [&](cplx z) { return detail::clear_of({1.0}, q, z); });
    out.push_back(make_report("lemma-ni", phi_eval(direct, x, o.tr).value, lemma(x).value, tol,
                              detail::with(detail::param_inputs(p), {{"x", ScaledComplex(x)}})));
  }
  for (long i = 0; i < n; ++i) {
    const cplx xi = o.x ? -*o.x : detail::draw_until([&] { return s.annulus(0.5, 0.9); },
                                                    [&](cplx z) { return detail::clear_of({-1.0}, q, z); });
    out.push_back(make_report("lemma-ni/borel-overlap", image.direct(xi).value, image.continued(xi).value, tol,
                              detail::with(detail::param_inputs(p), {{"xi", ScaledComplex(xi)}})));
  }
  return out;
}

/// Five parameter sets used by the main connection suite. The first is the
/// default profile; the others vary q, use complex parameters, and keep
/// |q b1/(a1 a2 a3)| below 2 so the solutions at infinity converge for |x| >= 2.5.
inline std::vector<ParamSet3> main_parameter_sets() {
  const QBase q5(0.5), q3(0.3), q7(0.7), q8(0.8);
  return {
      ParamSet3(q5.pow(0.3), q5.pow(0.7), q5.pow(1.1), q5.pow(0.4), q5),
      ParamSet3(q3.pow(0.2), q3.pow(0.55), q3.pow(0.9), q3.pow(0.7), q3),
      ParamSet3(q7.pow(0.15), q7.pow(0.6), q7.pow(1.35), q7.pow(1.2), q7),
      ParamSet3(std::polar(0.9, 0.3), 0.7, std::polar(0.55, -0.5), std::polar(0.35, 0.2), q5),
      ParamSet3(0.95, std::polar(0.7, 1.0), 0.5, 0.75, q8),
  };
}

/// Random points whose Laplace-sum cancellation factor exceeds this are redrawn.
inline constexpr double kMaxLaplaceCondition = 1e6;

/// 3f1 by Borel-Laplace summation against sum_j C_j v_j; 5 parameter sets x
/// 5 points with 2.5 <= |x| <= 6 off [-lambda; q] and with cancellation
/// factor at most kMaxLaplaceCondition. A fixed x runs the default profile
/// at that point only.
inline std::vector<CheckReport> verify_main(const SuiteOptions& o) {
  detail::Sampler s(o.seed);
  const double tol = o.tol_or(1e-6);
  std::vector<ParamSet3> sets = main_parameter_sets();
  if (o.x || o.q || o.a1 || o.a2 || o.a3 || o.b1) sets = {o.params3()};
  ResummationConfig cfg;
  cfg.lambda = o.lambda;
  cfg.tr = o.tr;
  std::vector<CheckReport> out;
  const long per_set = o.x ? 1 : o.samples_or(5);
  for (const ParamSet3& p : sets) {
    p.validate();
    cfg.validate(p.q);
    for (long i = 0; i < per_set; ++i) {
      const cplx x = o.x ? *o.x : detail::draw_until([&] { return s.annulus(2.5, 6.0); }, [&](cplx z) {
        return detail::clear_of({-cfg.lambda}, p.q, z) &&
               laplace_condition_estimate(cfg.lambda, z, p.q) <= kMaxLaplaceCondition;
      });
      if (spiral_contains(Spiral(-cfg.lambda, p.q), x)) {
        throw Error(ErrorKind::spiral_pole, "x lies on the excluded spiral [-lambda; q]");
      }
      const SeriesValue lhs = f31_eval(p, x, cfg);
      const SeriesValue rhs = main_rhs_eval(p, cfg.lambda, x, cfg.tr);
      std::vector<LabeledValue> diag;
      for (int j = 0; j < 3; ++j) {
        diag.push_back({"C" + std::to_string(j + 1) + "v" + std::to_string(j + 1),
                        main_rhs_term(p, j, cfg.lambda, x, cfg.tr).value});
      }
      diag.push_back({"laplace_terms", ScaledComplex(static_cast<double>(lhs.terms_used))});
      diag.push_back({"laplace_condition", ScaledComplex(laplace_condition_estimate(cfg.lambda, x, p.q))});
      diag.push_back({"lhs_err_est", ScaledComplex(lhs.err_est)});
      out.push_back(make_report("main", lhs.value, rhs.value, tol,
                                detail::with(detail::param_inputs(p), {{"lambda", ScaledComplex(cfg.lambda)},
                                                                       {"x", ScaledComplex(x)}}),
                                std::move(diag)));
    }
  }
  return out;
}

/// Documented sample where the lambda-dependence of 3f1 is large.
struct StokesSample {
  cplx x = std::polar(2.0, 2.5);
  cplx lambda1 = std::polar(1.1, 0.7);
  cplx lambda2 = std::polar(1.3, -0.9);
  double min_difference = 1e-6;
};

/// q-ellipticity of the Stokes coefficients: C_j(qx) = C_j(x) and invariance
/// under lambda -> q lambda for all j at random x; then the spiral invariance
/// 3f1(lambda) = 3f1(lambda q^k), k = -2..2, and the lambda-dependence of 3f1
/// across non-equivalent spirals. The last report's rel_err is
/// min_difference / |3f1(lambda1) - 3f1(lambda2)| / |3f1(lambda1)| with tol 1,
/// so it passes exactly when the two spirals differ by more than min_difference.
inline std::vector<CheckReport> verify_elliptic(const SuiteOptions& o) {
  detail::Sampler s(o.seed);
  const ParamSet3 p = o.params3();
  const QBase q = p.q;
  const double qv = q.value();
  const double tol = o.tol_or(1e-10);
  const cplx lambda = o.lambda;
  std::vector<CheckReport> out;
  const long n = o.x ? 1 : o.samples_or(20);
  for (long i = 0; i < n; ++i) {
    const cplx x = o.x ? *o.x : detail::draw_until([&] { return s.log_annulus(0.3, 5.0); }, [&](cplx z) {
      return detail::clear_of({-1.0, -1.0 / p.a[0], -1.0 / p.a[1], -1.0 / p.a[2], -lambda}, q, z);
    });
    for (int j = 1; j <= 3; ++j) {
      const auto inputs = detail::with(detail::param_inputs(p), {{"lambda", ScaledComplex(lambda)},
                                                                 {"x", ScaledComplex(x)},
                                                                 {"j", ScaledComplex(static_cast<double>(j))}});
      const SeriesValue c = stokes_coeff_eval(p, j, lambda, x, o.tr);
      out.push_back(make_report("elliptic/q-shift", stokes_coeff_eval(p, j, lambda, qv * x, o.tr).value, c.value, tol,
                                inputs));
      out.push_back(make_report("elliptic/lambda-shift", stokes_coeff_eval(p, j, qv * lambda, x, o.tr).value, c.value,
                                tol, inputs));
    }
  }

  const StokesSample sample;
  ResummationConfig cfg;
  cfg.lambda = sample.lambda1;
  cfg.tr = o.tr;
  const ParamSet3 d = SuiteOptions{}.params3();
  const SeriesValue base = f31_eval(d, sample.x, cfg);
  for (int k = -2; k <= 2; ++k) {
    if (k == 0) continue;
    ResummationConfig shifted = cfg;
    shifted.lambda = sample.lambda1 * d.q.pow(static_cast<double>(k));
    out.push_back(make_report("stokes/spiral-invariance", f31_eval(d, sample.x, shifted).value, base.value, 1e-12,
                              detail::with(detail::param_inputs(d), {{"x", ScaledComplex(sample.x)},
                                                                     {"k", ScaledComplex(static_cast<double>(k))}})));
  }
  ResummationConfig other = cfg;
  other.lambda = sample.lambda2;
  const SeriesValue alt = f31_eval(d, sample.x, other);
  const double diff = relative_difference(base.value, alt.value);
  CheckReport r = make_scalar_report(
      "stokes/lambda-dependence", diff > 0.0 ? sample.min_difference / diff : std::numeric_limits<double>::infinity(), 1.0,
      detail::with(detail::param_inputs(d), {{"x", ScaledComplex(sample.x)},
                                             {"lambda1", ScaledComplex(sample.lambda1)},
                                             {"lambda2", ScaledComplex(sample.lambda2)}}),
      {{"relative_difference", ScaledComplex(diff)}});
  r.lhs = base.value;
  r.rhs = alt.value;
  out.push_back(std::move(r));
  return out;
}

/// Relative residuals of v1, v2, v3 (|x| in [16, 40], so that the series at
/// q^3 x still converge) and of 3f1 (|x| in [0.5, 5]) under the 3phi1
/// equation; 2phi1 under Heine's equation; 3phi2 under the sign-fixed
/// third-order equation; and the constant-function residual against
/// -x (1-a1)(1-a2)(1-a3).
inline std::vector<CheckReport> verify_residual(const SuiteOptions& o) {
  detail::Sampler s(o.seed);
  const ParamSet3 p = o.params3();
  const QBase q = p.q;
  const double tol = o.tol_or(1e-7);
  const cplx b2 = o.b2.value_or(q.pow(2.5));
  const EquationParams third{p.a[0], p.a[1], p.a[2], p.b1, 0.0, q};
  const EquationParams degenerate{p.a[0], p.a[1], p.a[2], p.b1, b2, q};
  const EquationParams heine{q.pow(0.3), q.pow(0.8), 0.0, q.pow(1.6), 0.0, q};
  ResummationConfig cfg;
  cfg.lambda = o.lambda;
  cfg.tr = o.tr;
  const long n = o.x ? 1 : o.samples_or(5);
  std::vector<CheckReport> out;
  auto report = [&](std::string name, const Residual& r, cplx x) {
    out.push_back(make_scalar_report(std::move(name), r.relative, tol,
                                     detail::with(detail::param_inputs(p), {{"x", ScaledComplex(x)}}),
                                     {{"raw_residual", r.raw}}));
  };

  for (int j = 1; j <= 3; ++j) {
    detail::Sampler sj(o.seed + static_cast<std::uint64_t>(j));
    for (long i = 0; i < n; ++i) {
      const cplx x = o.x ? *o.x : detail::draw_until([&] { return sj.log_annulus(16.0, 40.0); },
                                                    [&](cplx z) { return detail::clear_of({-1.0}, q, z); });
      const ScalarFunction v = [&](cplx z) { return v_sol_eval(p, j, z, o.tr).value; };
      report("residual/third/v" + std::to_string(j), residual_eval(EquationId::third, v, third, x), x);
    }
  }
  const BorelImage image(p, cfg.rho, cfg.tr);
  for (long i = 0; i < n; ++i) {
    const cplx x = o.x ? *o.x : detail::draw_until([&] { return s.log_annulus(0.5, 5.0); },
                                                  [&](cplx z) { return detail::clear_of({-cfg.lambda}, q, z); });
    const ScalarFunction f = [&](cplx z) {
      return qlaplace_eval([&image](cplx xi) { return image(xi); }, z, cfg, q).value;
    };
    report("residual/third/f31", residual_eval(EquationId::third, f, third, x), x);
  }
  const PhiParams heine_series({heine.a1, heine.a2}, {heine.b1}, q);
  const PhiParams degenerate_series({p.a[0], p.a[1], p.a[2]}, {p.b1, b2}, q);
  for (long i = 0; i < n; ++i) {
    const cplx x = o.x ? *o.x : s.annulus(0.2, 0.6);
    report("residual/heine/2phi1",
           residual_eval(EquationId::heine, [&](cplx z) { return phi_eval(heine_series, z, o.tr).value; }, heine, x), x);
    report("residual/degenerate/3phi2",
           residual_eval(EquationId::degenerate, [&](cplx z) { return phi_eval(degenerate_series, z, o.tr).value; }, degenerate, x), x);
  }
  for (long i = 0; i < n; ++i) {
    const cplx x = o.x ? *o.x : s.annulus(0.2, 5.0);
    const Residual r = residual_eval(EquationId::third, [](cplx) { return ScaledComplex(1.0); }, third, x);
    const cplx closed = -x * (1.0 - p.a[0]) * (1.0 - p.a[1]) * (1.0 - p.a[2]);
    out.push_back(make_report("residual/third/constant", r.raw, ScaledComplex(closed), 1e-12,
                              detail::with(detail::param_inputs(p), {{"x", ScaledComplex(x)}})));
  }
  return out;
}

/// Coefficient ratios of 3phi1, 3phi2 and 2phi1 against the two-term
/// recurrences implied by their q-difference equations, n <= 40.
inline std::vector<CheckReport> verify_recurrence(const SuiteOptions& o) {
  const ParamSet3 p = o.params3();
  const QBase q = p.q;
  const double tol = o.tol_or(1e-13);
  const long N = o.samples_or(40);
  const cplx b2 = o.b2.value_or(q.pow(2.5));
  const EquationParams third{p.a[0], p.a[1], p.a[2], p.b1, 0.0, q};
  const EquationParams degenerate{p.a[0], p.a[1], p.a[2], p.b1, b2, q};
  const EquationParams heine{q.pow(0.3), q.pow(0.8), 0.0, q.pow(1.6), 0.0, q};
  return {
      formal_recurrence_check(EquationId::third, phi31_coefficients(p), third, N, tol),
      formal_recurrence_check(EquationId::degenerate, phi_coefficients(PhiParams({p.a[0], p.a[1], p.a[2]}, {p.b1, b2}, q)),
                              degenerate, N, tol),
      formal_recurrence_check(EquationId::heine, phi_coefficients(PhiParams({heine.a1, heine.a2}, {heine.b1}, q)), heine,
                              N, tol),
  };
}

/// q -> 1 behaviour over q = 1 - 2^{-k}, k = 4..10: for a few seeded
/// (alpha, beta, x) the theta-ratio errors must decrease (trend reports), as
/// must |Gamma_q - Gamma|/|Gamma| at a real and a complex point; then the
/// 3f1 limit scan on the default sample and its lambda robustness.
inline std::vector<CheckReport> verify_limits(const SuiteOptions& o, int k_first = 4, int k_last = 10) {
  detail::Sampler s(o.seed);
  const std::vector<double> schedule = dyadic_schedule(k_first, k_last);
  std::vector<CheckReport> out;
  const long n = o.samples_or(3);
  for (long i = 0; i < n; ++i) {
    const cplx alpha(s.uniform(0.1, 1.5), s.uniform(-0.3, 0.3));
    const cplx beta(s.uniform(0.1, 1.5), s.uniform(-0.3, 0.3));
    const cplx x = std::polar(s.uniform(0.5, 4.0), s.uniform(-2.5, 2.5));
    std::vector<double> e1, e2;
    for (const double qv : schedule) {
      const auto pair = theta_ratio_limit_check(alpha, beta, x, QBase(qv), o.tol_or(5e-2), o.tr);
      e1.push_back(pair[0].rel_err);
      e2.push_back(pair[1].rel_err);
      out.insert(out.end(), pair.begin(), pair.end());
    }
    out.push_back(trend_report("limit/theta-ratio-1/trend", e1));
    out.push_back(trend_report("limit/theta-ratio-2/trend", e2));
  }
  for (const cplx x : {cplx(2.5), cplx(0.7, 0.3)}) {
    const auto g = qgamma_limit_check(x, schedule, 1.0, o.tr);
    out.insert(out.end(), g.begin(), g.end());
  }
  LimitScanConfig cfg;
  cfg.q_schedule = schedule;
  cfg.lambda = o.lambda;
  cfg.tr = o.tr;
  const auto scan = f31_limit_scan(cfg);
  out.insert(out.end(), scan.begin(), scan.end());
  out.push_back(f31_limit_lambda_robustness(cfg, std::polar(1.3, 0.4)));
  return out;
}

// ---------------------------------------------------------------------------
// Scans

/// 3f1 at a fixed x along a grid of spiral directions |lambda| e^{i theta_k},
/// theta_k = -pi + (k + 1/2) 2 pi / grid, each compared with the connection
/// formula for the same lambda. The lhs column shows the lambda-dependence.
inline std::vector<CheckReport> scan_stokes(const SuiteOptions& o, int grid) {
  if (grid < 1) throw Error(ErrorKind::invalid_argument, "lambda grid must have at least one point");
  const ParamSet3 p = o.params3();
  const cplx x = o.x.value_or(StokesSample{}.x);
  const double tol = o.tol_or(1e-6);
  std::vector<CheckReport> out;
  for (int k = 0; k < grid; ++k) {
    const double theta = -std::numbers::pi + (k + 0.5) * 2.0 * std::numbers::pi / grid;
    ResummationConfig cfg;
    cfg.lambda = std::polar(std::abs(o.lambda), theta);
    cfg.tr = o.tr;
    const auto inputs = detail::with(detail::param_inputs(p), {{"x", ScaledComplex(x)}, {"lambda", ScaledComplex(cfg.lambda)}});
    if (!detail::clear_of({-cfg.lambda}, p.q, x, 1e-3)) {
      CheckReport r = make_scalar_report("scan/stokes", std::numeric_limits<double>::infinity(), tol, inputs);
      r.diagnostics.push_back({"skipped: x on [-lambda; q]", ScaledComplex(0.0)});
      out.push_back(std::move(r));
      continue;
    }
    const SeriesValue lhs = f31_eval(p, x, cfg);
    const SeriesValue rhs = main_rhs_eval(p, cfg.lambda, x, cfg.tr);
    out.push_back(make_report("scan/stokes", lhs.value, rhs.value, tol, inputs));
  }
  return out;
}

}  // namespace qstokes
