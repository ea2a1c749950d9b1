#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qstokes/scaled_complex.hpp"

namespace qstokes {

struct LabeledValue {
  std::string label;
  ScaledComplex value;

  friend bool operator==(const LabeledValue&, const LabeledValue&) = default;
};

/// Outcome of one identity or residual verification.
/// Invariant: passed <=> rel_err <= tol.
struct CheckReport {
  std::string check;
  std::vector<LabeledValue> inputs;
  ScaledComplex lhs;
  ScaledComplex rhs;
  double rel_err = 0.0;
  double tol = 0.0;
  bool passed = false;
  std::vector<LabeledValue> diagnostics;

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

/// Builds a report comparing two values; rel_err = |lhs-rhs| / max(|lhs|,|rhs|)
/// with both sides under 1e-300 counted as agreement.
inline CheckReport make_report(std::string check, ScaledComplex lhs, ScaledComplex rhs, double tol,
                               std::vector<LabeledValue> inputs = {}, std::vector<LabeledValue> diagnostics = {}) {
  CheckReport r;
  r.check = std::move(check);
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.rel_err = relative_difference(lhs, rhs);
  r.tol = tol;
  r.passed = r.rel_err <= tol;
  r.diagnostics = std::move(diagnostics);
  return r;
}

/// Report carrying a scalar error measure instead of two compared values
/// (residuals, trend statistics).
inline CheckReport make_scalar_report(std::string check, double err, double tol, std::vector<LabeledValue> inputs = {},
                                      std::vector<LabeledValue> diagnostics = {}) {
  CheckReport r;
  r.check = std::move(check);
  r.inputs = std::move(inputs);
  r.lhs = ScaledComplex(err);
  r.rhs = ScaledComplex(0.0);
  r.rel_err = err;
  r.tol = tol;
  r.passed = err <= tol;
  r.diagnostics = std::move(diagnostics);
  return r;
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

inline double max_rel_err(const std::vector<CheckReport>& reports) {
  double m = 0.0;
  for (const auto& r : reports) m = r.rel_err > m ? r.rel_err : m;
  return m;
}

}  // namespace qstokes
