#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pluriharm/arcset.hpp"
#include "pluriharm/grid_domain.hpp"
#include "pluriharm/grid_extremal.hpp"
#include "pluriharm/types.hpp"

namespace pluriharm {

/// Counterclockwise boundary polyline of a simply connected grid region, traced by
/// marching squares with the exact boundary crossings of the domain's arms.
/// Throws TopologyError unless the interior is connected and simply connected.
std::vector<Complex> trace_boundary(const GridDomain& component);

/// Closed polyline resampled to `count` vertices equally spaced in arc length.
std::vector<Complex> resample_polyline(const std::vector<Complex>& polyline, int count);

struct ConformalOptions {
  /// Boundary vertices fed to the zipper.
  int vertices = 2048;
};

/// Conformal map of a Jordan region onto the unit disc (geodesic zipper), normalized by
/// Phi(center) = 0 and Phi'(center) > 0.
class DiscreteConformalMap {
 public:
  /// Polyline must be a closed, counterclockwise, simple polygon around `center`.
  /// `inside` decides membership for endpoint probes; point-in-polygon when empty.
  DiscreteConformalMap(std::vector<Complex> polyline, Complex center,
                       std::function<bool(Complex)> inside = {});

  const std::vector<Complex>& boundary() const { return polyline_; }
  Complex center() const { return center_; }
  bool contains(Complex z) const;

  Complex operator()(Complex z) const;
  Complex inverse(Complex w) const;
  /// Image of each boundary vertex on the unit circle, followed along the real line
  /// of the zipper instead of evaluating the map at the boundary.
  std::vector<Complex> boundary_correspondence() const;

 private:
  struct Step {
    double c;  // pole of the straightening Moebius map (may be infinite)
    double d;  // half-length of the slit after straightening
  };

  Complex to_half_plane(Complex z) const;
  Complex to_disc(Complex g) const;
  Complex from_half_plane(Complex u) const;

  std::vector<Complex> polyline_;
  Complex center_;
  std::function<bool(Complex)> inside_;
  Complex z0_, z1_;
  std::vector<Step> steps_;
  double last_pole_ = 0.0;
  double last_sign_ = 1.0;
  Complex center_image_;
  Complex rotation_{1.0, 0.0};
};

/// Riemann map of a simply connected grid component; throws TopologyError for multiply
/// connected input and DomainError when the center is not interior.
DiscreteConformalMap riemann_map(const GridDomain& component, Complex center, const ConformalOptions& options = {});

/// Stolz-ray limit of the map at a boundary point, projected to the unit circle.
/// Throws DomainError when a probe ray leaves the region (zeta is no end-point there) and
/// SolverError when the extrapolated modulus is farther than 1e-2 from 1.
Complex endpoint_limit(const DiscreteConformalMap& map, Complex zeta, double alpha);

/// Stolz openings and depths used to test end-points.
struct EndpointProbe {
  std::vector<double> openings{kPi / 8, kPi / 4, 3 * kPi / 8};
  int first_depth = 4;
  int last_depth = 12;
};

/// Every Stolz probe ray at zeta (|zeta| = 1) stays inside the region.
bool is_end_point(const GridDomain& omega, Complex zeta, const EndpointProbe& probe = {});

/// Sampled end-points of `omega` among the density points of B: `samples` evenly spaced
/// candidates are kept when they pass is_end_point.
std::vector<Complex> end_points(const GridDomain& omega, const UnitCircleSet& B, int samples = 512,
                                const EndpointProbe& probe = {});

/// Arc hull of points on the unit circle: neighbours closer than `gap` are joined.
UnitCircleSet arc_hull(const std::vector<Complex>& points, double gap = kTwoPi / 512);

struct TransferOptions {
  double h = 1.0 / 128;
  ConformalOptions conformal;
  int endpoint_samples = 512;
  double hull_gap = kTwoPi / 512;
  /// Bisection depth when refining the sampled end-points (see verify_transfer_identity).
  int refinement_depth = 30;
  /// Map center; defaults to the component node farthest from its boundary.
  std::optional<Complex> center;
  SolverOptions solver;
};

struct TransferReport {
  double max_deviation = 0.0;
  std::vector<double> deviations;
  std::size_t endpoint_count = 0;
  UnitCircleSet image;  // Phi(Delta)
  Complex center;
};

/// Conformal transfer of the level-set identity: on the component of {omega(., B, E) < 1 - delta}
/// containing samples.front(), max |(1 - delta) omega(Phi(z), Phi(Delta), E) - omega(z, B, E)|.
/// The sampled end-points are refined by bisection until neighbouring images are closer
/// than half the hull gap and each run reaches the edge of the end-point set, so the
/// arc hull does not break where the map stretches.
TransferReport verify_transfer_identity(const UnitCircleSet& B, double delta, const std::vector<Complex>& samples,
                                        const TransferOptions& options = {});

/// The component of {omega(., B, E) < 1 - delta} (grid solve at spacing h) containing seed.
GridDomain level_set_component(const UnitCircleSet& B, double delta, Complex seed, double h,
                               const SolverOptions& solver = {});

}  // namespace pluriharm
