#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qstokes {

/// Failure categories raised by the library. Every evaluator reports a
/// singular or out-of-domain request through one of these instead of
/// returning an infinite or truncated value.
enum class ErrorKind {
  invalid_argument,
  zero_argument,
  max_terms_exceeded,
  pole,
  denominator_zero,
  divergent_request,
  prefactor_pole,
  genericity_violation,
  spiral_pole,
  branch_violation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::zero_argument: return "ZeroArgument";
    case ErrorKind::max_terms_exceeded: return "MaxTermsExceeded";
    case ErrorKind::pole: return "PoleError";
    case ErrorKind::denominator_zero: return "DenominatorZero";
    case ErrorKind::divergent_request: return "DivergentRequest";
    case ErrorKind::prefactor_pole: return "PrefactorPole";
    case ErrorKind::genericity_violation: return "GenericityViolation";
    case ErrorKind::spiral_pole: return "SpiralPole";
    case ErrorKind::branch_violation: return "BranchViolation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qstokes
