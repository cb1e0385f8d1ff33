#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pluriharm/arcset.hpp"
#include "pluriharm/grid_domain.hpp"
#include "pluriharm/grid_extremal.hpp"
#include "pluriharm/types.hpp"

namespace pluriharm {

/// One factor (D, A) of a cross together with its extremal function omega(., A, D).
///
/// The target is regularized on construction (density points for arcs, isolated cells
/// removed for cell lists), so omega here is the plurisubharmonic measure.
class PlanarFactor {
 public:
  /// D = unit disc, A = boundary arcs; closed-form evaluator.
  static PlanarFactor unit_disc(const UnitCircleSet& target);
  /// Grid factor; target cells are regularized, then the extremal function is solved.
  static PlanarFactor grid(const Lattice& lattice, std::vector<BoundaryPiece> pieces,
                           std::vector<std::size_t> target_cells, std::vector<JumpSingularity> jumps = {},
                           const SolverOptions& options = {});
  /// Grid factor over a prepared domain (its target is taken as already regular).
  static PlanarFactor grid(std::shared_ptr<const GridDomain> domain, const SolverOptions& options = {});

  bool is_disc() const { return !field_; }
  /// Regularized boundary target (disc factors only).
  const UnitCircleSet& arcs() const { return arcs_; }
  const GridDomain* grid_domain() const { return field_ ? &field_->domain() : nullptr; }

  /// z lies in the open set D.
  bool in_domain(Complex z) const;
  /// z lies in A.
  bool in_target(Complex z) const;
  /// omega(z, A, D) for z in D or A (0 on A); throws DomainError elsewhere.
  double omega(Complex z) const;

  /// Bounding box of D.
  Complex lower_left() const { return lower_left_; }
  Complex upper_right() const { return upper_right_; }

 private:
  PlanarFactor() = default;

  UnitCircleSet arcs_;
  std::shared_ptr<const ScalarField> field_;
  Complex lower_left_{-1.0, -1.0};
  Complex upper_right_{1.0, 1.0};
};

/// Which part of X(A, B; D, G) = (A x (G u B)) u ((D u A) x B) a point lies in.
enum class CrossPart { first_branch, second_branch, both, none };

std::string_view cross_part_name(CrossPart part);

/// Two-fold cross with omega(z, w) = omega(z, A, D) + omega(w, B, G).
class Cross2 {
 public:
  Cross2(PlanarFactor first, PlanarFactor second) : first_(std::move(first)), second_(std::move(second)) {}

  const PlanarFactor& first() const { return first_; }
  const PlanarFactor& second() const { return second_; }
  double omega_total(Complex z, Complex w) const { return first_.omega(z) + second_.omega(w); }

 private:
  PlanarFactor first_;
  PlanarFactor second_;
};

CrossPart cross_part(const Cross2& cross, Complex z, Complex w);

/// (z, w) lies in the envelope {omega(z, w) < 1}; throws DomainError unless z in D and w in G.
bool envelope_contains(const Cross2& cross, Complex z, Complex w);

enum class Factor { first, second };

/// Envelope membership over an n x n grid of cell centres covering the free factor.
struct EnvelopeSlice {
  int n = 0;
  Complex lower_left;
  Complex upper_right;
  /// Row-major, row 0 at the bottom.
  std::vector<std::uint8_t> mask;
  /// omega_total at each sample, NaN outside the free domain.
  std::vector<double> omega_total;

  Complex point(int i, int j) const;
  std::size_t count() const;
  /// count() times the area of one cell.
  double area() const;
};

EnvelopeSlice envelope_slice(const Cross2& cross, Factor fixed, Complex value, int n);

/// m^(1 - omega) M^omega, the two-constant bound; requires 0 < m <= M and omega in [0, 1].
double two_constant_bound(double omega_total, double m, double M);

}  // namespace pluriharm
