#include "pluriharm/disc_potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pluriharm/errors.hpp"

namespace pluriharm {

namespace {

void require_interior(Complex z) {
  if (!is_finite(z)) throw InputError("evaluation point must be finite");
  if (std::abs(z) >= 1.0 - kDiscGuard) {
    throw DomainError("point lies on or outside the unit circle: |z| = " +
                      std::to_string(std::abs(z)));
  }
}

// Increment of arg(e^{i theta} - z) over a piece of length <= pi. The increment
// equals (2 pi omega_piece + L) / 2 and therefore lies in (0, 3pi/2].
double arg_increment(Complex z, double a, double b) {
  const Complex ea = std::polar(1.0, a) - z;
  const Complex eb = std::polar(1.0, b) - z;
  double p = std::arg(eb / ea);
  if (p < -0.25 * kPi) p += kTwoPi;
  return p;
}

}  // namespace

double arc_harmonic_measure(Complex z, const Arc& arc) {
  const double len = arc.length();
  if (len <= 0) return 0.0;
  if (len >= kTwoPi) return 1.0;
  const int pieces = len > kPi ? 2 : 1;
  const double step = len / pieces;
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double a = arc.start + k * step;
    const double b = (k + 1 == pieces) ? arc.end : a + step;
    total += 2.0 * arg_increment(z, a, b) - (b - a);
  }
  return total / kTwoPi;
}

double omega_disc(Complex z, const UnitCircleSet& B) {
  require_interior(z);
  const UnitCircleSet rest = B.complement();
  if (rest.is_empty()) return 0.0;
  if (rest.is_full()) return 1.0;
  double total = 0.0;
  for (const Arc& arc : rest.arcs()) total += arc_harmonic_measure(z, arc);
  return std::clamp(total, 0.0, 1.0);
}

double omega_conjugate_disc(Complex z, const UnitCircleSet& B) {
  require_interior(z);
  const UnitCircleSet rest = B.complement();
  if (rest.is_empty() || rest.is_full()) return 0.0;
  double total = 0.0;
  for (const Arc& arc : rest.arcs()) {
    const double db = std::abs(std::polar(1.0, arc.end) - z);
    const double da = std::abs(std::polar(1.0, arc.start) - z);
    total += std::log(db / da);
  }
  return -total / kPi;
}

Complex omega_holomorphic(Complex z, const UnitCircleSet& B) {
  return {omega_disc(z, B), omega_conjugate_disc(z, B)};
}

Complex g_boundary(Complex a, const UnitCircleSet& B) {
  if (!is_finite(a) || std::abs(std::abs(a) - 1.0) > 1e-12) {
    throw DomainError("g_boundary needs a point on the unit circle");
  }
  const double theta = std::arg(a);
  if (!B.is_interior(theta)) {
    throw DomainError("g_boundary: point is not a density point of the set");
  }
  const UnitCircleSet rest = B.complement();
  if (rest.is_empty()) return {0.0, 0.0};
  double total = 0.0;
  for (const Arc& arc : rest.arcs()) {
    // |e^{i theta} - e^{i gamma}| = 2 |sin((theta - gamma) / 2)|
    total += std::log(std::abs(std::sin(0.5 * (theta - arc.end))) /
                      std::abs(std::sin(0.5 * (theta - arc.start))));
  }
  return {0.0, -total / kPi};
}

StolzRegion::StolzRegion(Complex vertex, double opening) : vertex_(vertex), opening_(opening) {
  if (!is_finite(vertex) || std::abs(std::abs(vertex) - 1.0) > 1e-12) {
    throw DomainError("Stolz vertex must lie on the unit circle");
  }
  if (!(opening > 0 && opening < 0.5 * kPi)) {
    throw DomainError("Stolz opening must lie in (0, pi/2)");
  }
}

Complex StolzRegion::ray_point(double depth, double phi) const {
  return vertex_ * (1.0 - std::polar(depth, phi));
}

bool StolzRegion::contains(Complex z) const {
  return std::abs(std::arg((vertex_ - z) / vertex_)) < opening_;
}

bool stolz_contains(const StolzRegion& region, Complex z) { return region.contains(z); }

AngularLimit angular_limit_probe(const ComplexEvaluator& field, Complex vertex, double opening,
                                 const ProbeOptions& options) {
  if (options.last_depth <= options.first_depth) {
    throw InputError("angular_limit_probe needs at least two depths");
  }
  const StolzRegion region(vertex, opening);
  const double angles[3] = {0.0, 0.5 * opening, -0.5 * opening};

  std::vector<std::vector<Complex>> samples(3);
  AngularLimit out;
  for (int k = options.first_depth; k <= options.last_depth; ++k) out.depths.push_back(k);

  Complex extrapolated[3];
  for (int r = 0; r < 3; ++r) {
    for (int k : out.depths) samples[r].push_back(field(region.ray_point(std::ldexp(1.0, -k), angles[r])));
    const auto& s = samples[r];
    extrapolated[r] = 2.0 * s[s.size() - 1] - s[s.size() - 2];
  }
  out.limit = (extrapolated[0] + extrapolated[1] + extrapolated[2]) / 3.0;
  for (const Complex& e : extrapolated) out.ray_spread = std::max(out.ray_spread, std::abs(e - out.limit));
  out.stolz_convergent = out.ray_spread <= options.tolerance;

  for (std::size_t i = 0; i < out.depths.size(); ++i) {
    double worst = 0.0;
    for (int r = 0; r < 3; ++r) worst = std::max(worst, std::abs(samples[r][i] - out.limit));
    out.residuals.push_back(worst);
  }
  return out;
}

}  // namespace pluriharm
