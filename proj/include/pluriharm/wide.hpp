#pragma once

// Quad-precision scalars for the Carleman sums, whose terms cancel by many orders of
// magnitude. Only the handful of operations those sums need are provided.

#include <quadmath.h>

#include <string>

#include "pluriharm/types.hpp"

namespace pluriharm {

using wide = __float128;

inline constexpr double kWideEpsilon = 1.925929944387235853e-34;  // 2^-112
inline const wide kWidePi = M_PIq;

struct WComplex {
  wide re = 0;
  wide im = 0;

  WComplex() = default;
  constexpr WComplex(wide r, wide i = 0) : re(r), im(i) {}
  explicit WComplex(Complex z) : re(z.real()), im(z.imag()) {}

  Complex narrow() const { return {static_cast<double>(re), static_cast<double>(im)}; }

  WComplex& operator+=(const WComplex& o) { re += o.re; im += o.im; return *this; }
  WComplex& operator-=(const WComplex& o) { re -= o.re; im -= o.im; return *this; }
};

inline WComplex operator+(WComplex a, const WComplex& b) { return a += b; }
inline WComplex operator-(WComplex a, const WComplex& b) { return a -= b; }
inline WComplex operator-(const WComplex& a) { return {-a.re, -a.im}; }
inline WComplex operator*(const WComplex& a, const WComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline WComplex operator*(wide s, const WComplex& a) { return {s * a.re, s * a.im}; }
inline WComplex operator*(const WComplex& a, wide s) { return {s * a.re, s * a.im}; }
inline WComplex operator/(const WComplex& a, const WComplex& b) {
  // Smith's algorithm keeps the intermediate products in range.
  if (fabsq(b.re) >= fabsq(b.im)) {
    const wide r = b.im / b.re;
    const wide d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  const wide r = b.re / b.im;
  const wide d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}
inline WComplex operator/(const WComplex& a, wide s) { return {a.re / s, a.im / s}; }

inline wide abs(const WComplex& a) { return hypotq(a.re, a.im); }
inline WComplex conj(const WComplex& a) { return {a.re, -a.im}; }

/// e^{i phi}
inline WComplex unit(wide phi) {
  wide s, c;
  sincosq(phi, &s, &c);
  return {c, s};
}

inline WComplex exp(const WComplex& a) { return expq(a.re) * unit(a.im); }
inline WComplex log(const WComplex& a) { return {logq(abs(a)), atan2q(a.im, a.re)}; }

std::string to_string(wide x, int digits = 36);

}  // namespace pluriharm
