#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace pluriharm {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Reduce an angle to [0, 2pi).
inline double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

/// Scalar field on a planar region, z -> value.
using RealEvaluator = std::function<double(Complex)>;
/// Complex-valued field, z -> value.
using ComplexEvaluator = std::function<Complex(Complex)>;

}  // namespace pluriharm
