#pragma once

// Minimal binary128 complex arithmetic for the bilateral theta sum. Only the
// operations the summation needs are provided; no libquadmath dependency.

#include <complex>

namespace qstokes::detail {

using quad = __float128;

struct QuadComplex {
  quad re = 0;
  quad im = 0;

  QuadComplex() = default;
  QuadComplex(quad r, quad i) : re(r), im(i) {}
  explicit QuadComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  QuadComplex& operator+=(const QuadComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend QuadComplex operator*(const QuadComplex& a, const QuadComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QuadComplex operator*(const QuadComplex& a, quad s) { return {a.re * s, a.im * s}; }
  friend QuadComplex operator/(const QuadComplex& a, const QuadComplex& b) {
    const quad d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }

  quad norm() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

/// base^n by repeated squaring; n may be negative.
inline quad ipow(quad base, long n) {
  const bool invert = n < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  quad result = 1;
  while (k != 0) {
    if (k & 1UL) result *= base;
    base *= base;
    k >>= 1;
  }
  return invert ? quad(1) / result : result;
}

}  // namespace qstokes::detail
