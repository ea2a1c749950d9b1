#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace qstokes {

using cplx = std::complex<double>;

/// Complex number stored as mantissa * 2^exp2 with 0.5 <= |mantissa| < 1.
///
/// Theta values at spiral points lambda*q^n grow like q^(-n(n-1)/2) and leave
/// the binary64 range for |n| around 50 at q = 0.5; every product and bilateral
/// sum in the library is carried in this type.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(cplx z) : mantissa_(z) { normalize(); }  // NOLINT(google-explicit-constructor)
  ScaledComplex(double x) : mantissa_(x, 0.0) { normalize(); }  // NOLINT(google-explicit-constructor)

  static ScaledComplex from_parts(cplx mantissa, std::int64_t exp2) {
    ScaledComplex s;
    s.mantissa_ = mantissa;
    s.exp2_ = exp2;
    s.normalize();
    return s;
  }

  /// exp(log_value), without passing through binary64 overflow.
  static ScaledComplex from_log(cplx log_value) {
    if (!std::isfinite(log_value.real())) {
      return log_value.real() < 0 ? ScaledComplex{} : ScaledComplex{cplx(std::numeric_limits<double>::infinity())};
    }
    const double e = std::floor(log_value.real() / std::numbers::ln2);
    const double frac = log_value.real() - e * std::numbers::ln2;
    return from_parts(std::polar(std::exp(frac), log_value.imag()), static_cast<std::int64_t>(e));
  }

  cplx mantissa() const { return mantissa_; }
  std::int64_t exp2() const { return exp2_; }
  bool is_zero() const { return mantissa_ == cplx(0.0, 0.0); }
  bool is_finite() const { return std::isfinite(mantissa_.real()) && std::isfinite(mantissa_.imag()); }

  /// log2 |value|; -inf for zero.
  double log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(exp2_) + std::log2(std::abs(mantissa_));
  }
  double log_abs() const { return log2_abs() * std::numbers::ln2; }

  /// |value| as binary64 (may overflow to inf or underflow to 0).
  double abs() const { return std::ldexp(std::abs(mantissa_), clamp_exp(exp2_)); }

  /// Principal logarithm.
  cplx log() const { return {log_abs(), std::arg(mantissa_)}; }

  cplx to_complex() const {
    const int e = clamp_exp(exp2_);
    return {std::ldexp(mantissa_.real(), e), std::ldexp(mantissa_.imag(), e)};
  }

  ScaledComplex conj() const { return from_parts(std::conj(mantissa_), exp2_); }
  ScaledComplex inverse() const { return from_parts(1.0 / mantissa_, -exp2_); }

  ScaledComplex operator-() const { return from_parts(-mantissa_, exp2_); }

  ScaledComplex& operator*=(const ScaledComplex& o) {
    mantissa_ *= o.mantissa_;
    exp2_ += o.exp2_;
    normalize();
    return *this;
  }
  ScaledComplex& operator/=(const ScaledComplex& o) {
    mantissa_ /= o.mantissa_;
    exp2_ -= o.exp2_;
    normalize();
    return *this;
  }
  ScaledComplex& operator+=(const ScaledComplex& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const std::int64_t d = exp2_ - o.exp2_;
    if (d > kNegligibleShift) return *this;
    if (d < -kNegligibleShift) return *this = o;
    if (d >= 0) {
      mantissa_ += scale(o.mantissa_, -static_cast<int>(d));
    } else {
      mantissa_ = scale(mantissa_, static_cast<int>(d)) + o.mantissa_;
      exp2_ = o.exp2_;
    }
    normalize();
    return *this;
  }
  ScaledComplex& operator-=(const ScaledComplex& o) { return *this += -o; }

  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }
  friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }
  friend ScaledComplex operator-(ScaledComplex a, const ScaledComplex& b) { return a -= b; }

  friend bool operator==(const ScaledComplex& a, const ScaledComplex& b) {
    return a.mantissa_ == b.mantissa_ && a.exp2_ == b.exp2_;
  }

 private:
  // Shifts beyond this leave the smaller addend below half an ulp.
  static constexpr std::int64_t kNegligibleShift = 64;

  static int clamp_exp(std::int64_t e) {
    constexpr std::int64_t lim = 1 << 20;
    return static_cast<int>(e > lim ? lim : (e < -lim ? -lim : e));
  }
  static cplx scale(cplx z, int e) { return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)}; }

  void normalize() {
    const double m = std::abs(mantissa_);
    if (m == 0.0 || !std::isfinite(m)) {
      if (m == 0.0) {
        mantissa_ = {0.0, 0.0};
        exp2_ = 0;
      }
      return;
    }
    int e = 0;
    std::frexp(m, &e);
    mantissa_ = scale(mantissa_, -e);
    exp2_ += e;
    // frexp works on the rounded modulus; settle the boundary cases.
    const double r = std::abs(mantissa_);
    if (r >= 1.0) {
      mantissa_ = scale(mantissa_, -1);
      ++exp2_;
    } else if (r < 0.5) {
      mantissa_ = scale(mantissa_, 1);
      --exp2_;
    }
  }

  cplx mantissa_{0.0, 0.0};
  std::int64_t exp2_ = 0;
};

/// |a - b| / max(|a|, |b|), computed without leaving the scaled range.
/// Both magnitudes below `floor` counts as agreement (returns 0).
inline double relative_difference(const ScaledComplex& a, const ScaledComplex& b, double floor = 1e-300) {
  const double la = a.log2_abs();
  const double lb = b.log2_abs();
  const double lfloor = std::log2(floor);
  if (la < lfloor && lb < lfloor) return 0.0;
  const double lmax = std::max(la, lb);
  const ScaledComplex diff = a - b;
  if (diff.is_zero()) return 0.0;
  return std::exp2(diff.log2_abs() - lmax);
}

}  // namespace qstokes
