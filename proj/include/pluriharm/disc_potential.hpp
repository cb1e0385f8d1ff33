#pragma once

#include <vector>

#include "pluriharm/arcset.hpp"
#include "pluriharm/types.hpp"

namespace pluriharm {

/// Points closer than this to the unit circle are rejected by the interior evaluators.
inline constexpr double kDiscGuard = 1e-12;

/// Harmonic measure of the arc [start, end) seen from z, |z| < 1.
double arc_harmonic_measure(Complex z, const Arc& arc);

/// Relative extremal function of B on the unit disc: the Poisson integral of the
/// indicator of the complementary arcs. Closed form, no quadrature.
double omega_disc(Complex z, const UnitCircleSet& B);

/// Harmonic conjugate of omega_disc(., B), normalized to vanish at the origin.
double omega_conjugate_disc(Complex z, const UnitCircleSet& B);

/// omega + i*conjugate, the holomorphic function whose real part is omega_disc.
Complex omega_holomorphic(Complex z, const UnitCircleSet& B);

/// Boundary value of omega + i*conjugate at a density point a of B (|a| = 1).
/// The real part is 0; throws DomainError at arc endpoints or outside B.
Complex g_boundary(Complex a, const UnitCircleSet& B);

/// Angular (Stolz) approach region at a boundary point.
class StolzRegion {
 public:
  /// |vertex| must equal 1 within 1e-12 and 0 < opening < pi/2.
  StolzRegion(Complex vertex, double opening);

  Complex vertex() const { return vertex_; }
  double opening() const { return opening_; }
  /// Point approaching the vertex at distance `depth` along direction angle phi
  /// (phi = 0 is the radius, |phi| < opening stays inside the region).
  Complex ray_point(double depth, double phi) const;
  bool contains(Complex z) const;

 private:
  Complex vertex_;
  double opening_;
};

bool stolz_contains(const StolzRegion& region, Complex z);

struct ProbeOptions {
  int first_depth = 4;
  int last_depth = 12;
  /// Rays whose extrapolated limits differ by more than this are flagged.
  double tolerance = 1e-2;
};

struct AngularLimit {
  Complex limit;
  /// For each depth k: max over rays of |field(z_k) - limit|.
  std::vector<double> residuals;
  std::vector<int> depths;
  /// Max deviation of the per-ray extrapolated limits from the common limit.
  double ray_spread = 0.0;
  bool stolz_convergent = true;
};

/// Samples a field at z_k = vertex (1 - 2^-k e^{i phi}) on the radial ray and
/// the rays phi = +-opening/2, k = first_depth..last_depth, and Richardson
/// extrapolates each ray assuming an O(2^-k) error.
AngularLimit angular_limit_probe(const ComplexEvaluator& field, Complex vertex, double opening,
                                 const ProbeOptions& options = {});

}  // namespace pluriharm
