#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pluriharm/arcset.hpp"
#include "pluriharm/types.hpp"

namespace pluriharm {

/// Uniform node lattice: node (i, j) sits at origin + h (i + i*j).
struct Lattice {
  Complex origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  int column(std::size_t node) const { return static_cast<int>(node % static_cast<std::size_t>(nx)); }
  int row(std::size_t node) const { return static_cast<int>(node / static_cast<std::size_t>(nx)); }
  Complex point(int i, int j) const { return origin + Complex(h * i, h * j); }
  Complex point(std::size_t node) const { return point(column(node), row(node)); }

  /// Square lattice with spacing h covering [center - half_width, center + half_width]^2
  /// plus one margin node on every side.
  static Lattice covering(Complex center, double half_width, double h);
};

/// One constraint of an implicitly described region: the domain is the set where
/// every piece's level function is negative.
struct BoundaryPiece {
  RealEvaluator level;
  /// Dirichlet value on the part of the boundary cut out by this piece.
  RealEvaluator data;
  /// Beyond this piece lies the (interior, compact) target set.
  bool target_body = false;
  std::string name;
};

/// Corner singularity of piecewise-constant Dirichlet data: at `point` the data jumps
/// from 0 (along `target_side`, a unit tangent pointing away from the corner) to
/// `jump` across a wedge of opening `wedge`, swept counterclockwise when
/// `orientation` is +1 and clockwise when -1. value() is the harmonic function
/// jump * angle / wedge, cut along the exterior bisector.
struct JumpSingularity {
  Complex point;
  Complex target_side{1.0, 0.0};
  int orientation = 1;
  double wedge = kPi;
  double jump = 1.0;

  double value(Complex z) const;
};

enum class CellClass : std::uint8_t { interior, boundary_target, boundary_other, exterior };

/// Link from an interior node towards one of its four lattice neighbours.
/// Either the neighbour is interior (neighbor >= 0, fraction = 1) or the boundary is
/// crossed at distance fraction * h and carries the Dirichlet value `value`.
struct Arm {
  double fraction = 1.0;
  double value = 0.0;
  std::int32_t neighbor = -1;
};

/// Lattice discretization of a bounded planar open set with Dirichlet data.
///
/// Boundary crossings along lattice lines are located to full precision, so the
/// discrete Laplacian built on the arms is the Shortley-Weller stencil.
class GridDomain {
 public:
  GridDomain(Lattice lattice, std::vector<BoundaryPiece> pieces,
             std::vector<std::size_t> target_cells = {},
             std::vector<JumpSingularity> singularities = {});

  /// Disc with a target arc set on its boundary circle (angles measured about the center).
  static GridDomain disc(Complex center, double radius, double h, const UnitCircleSet& target);
  /// Annulus r_in < |z - center| < r_out whose inner circle is the target.
  static GridDomain annulus(Complex center, double r_in, double r_out, double h);
  /// Disc with a compact target disc removed from its interior.
  static GridDomain disc_with_inner_target(Complex center, double radius, Complex target_center,
                                           double target_radius, double h);
  /// Upper half of the disc |z - center| < radius, boundary data 1, no target.
  static GridDomain half_disc(Complex center, double radius, double h);

  const Lattice& lattice() const { return lattice_; }
  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  /// Data jumps whose singular parts the solver subtracts analytically.
  const std::vector<JumpSingularity>& singularities() const { return singularities_; }
  double singular_part(Complex z) const;
  /// Point where arm k of interior slot s meets its (boundary or interior) endpoint.
  Complex arm_end(std::size_t slot, int k) const;
  CellClass cell_class(std::size_t node) const { return classes_[node]; }
  const std::vector<CellClass>& classes() const { return classes_; }
  /// Lattice indices of the interior nodes; position in this list is the node's slot.
  const std::vector<std::size_t>& interior_nodes() const { return interior_; }
  /// Slot of a node in interior_nodes(), or -1.
  std::int32_t slot(std::size_t node) const { return slot_[node]; }
  const std::array<Arm, 4>& arms(std::size_t slot) const { return arms_[slot]; }
  std::size_t interior_count() const { return interior_.size(); }

  /// Every level function negative (and the node mask, if restricted, allows z).
  bool contains(Complex z) const;
  /// z belongs to the closure of the target: inside a target body or a target-cell.
  bool in_target(Complex z) const;
  /// Node was listed as a fixed-value target cell.
  bool target_cell(std::size_t node) const { return target_cell_[node] != 0; }
  /// Lattice node nearest to z, or -1 when z is off the lattice.
  std::int64_t nearest_node(Complex z) const;
  /// Value used for non-interior nodes: 0 inside a target body, boundary data next to
  /// the domain, NaN (sentinel) elsewhere.
  double fill_value(std::size_t node) const { return fill_[node]; }

  /// 4-connected component label per node (-1 for non-interior nodes); returns count.
  int label_components(std::vector<int>& labels) const;
  /// Same region and data, interior restricted to one connected component.
  GridDomain restricted_to_component(int label) const;
  /// Complement of the interior within the lattice is 8-connected.
  bool is_simply_connected() const;
  /// Interior nodes whose lattice neighbourhood of Euclidean radius `distance` is interior.
  std::vector<bool> deep_interior_mask(double distance) const;

 private:
  void build(std::vector<std::size_t> target_cells);

  Lattice lattice_;
  std::vector<BoundaryPiece> pieces_;
  std::vector<JumpSingularity> singularities_;
  std::shared_ptr<const std::vector<std::uint8_t>> mask_;  // optional component mask
  std::vector<std::uint8_t> target_cell_;
  std::vector<CellClass> classes_;
  std::vector<std::size_t> interior_;
  std::vector<std::int32_t> slot_;
  std::vector<std::array<Arm, 4>> arms_;
  std::vector<double> fill_;
};

}  // namespace pluriharm
