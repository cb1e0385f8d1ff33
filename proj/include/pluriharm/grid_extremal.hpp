#pragma once

#include <memory>
#include <vector>

#include "pluriharm/arcset.hpp"
#include "pluriharm/grid_domain.hpp"

namespace pluriharm {

/// Node values over a GridDomain. Non-interior nodes carry GridDomain::fill_value
/// (NaN away from the domain).
class ScalarField {
 public:
  ScalarField(std::shared_ptr<const GridDomain> domain, std::vector<double> values);

  const GridDomain& domain() const { return *domain_; }
  std::shared_ptr<const GridDomain> domain_ptr() const { return domain_; }
  const std::vector<double>& values() const { return values_; }
  double at(std::size_t node) const { return values_[node]; }
  /// Value at interior slot s.
  double at_slot(std::size_t s) const { return values_[domain_->interior_nodes()[s]]; }

  /// Bilinear interpolation; corners with zero weight are ignored, so evaluation
  /// along a lattice line only uses the two nodes bounding the segment.
  double evaluate(Complex z) const;

 private:
  double remainder_at(std::size_t node) const;

  std::shared_ptr<const GridDomain> domain_;
  std::vector<double> values_;
};

struct SolverOptions {
  double tolerance = 1e-11;
  long max_sweeps = 1'000'000;
  /// 0 selects the optimal SOR factor of the enclosing rectangle.
  double relaxation = 0.0;
  /// 0 keeps the OpenMP default.
  int workers = 0;
};

struct SolveReport {
  long sweeps = 0;
  double last_update = 0.0;
  double relaxation = 0.0;
};

/// Discrete harmonic measure of the non-target boundary: Laplace's equation with
/// data 0 on the target and 1 elsewhere, red-black SOR until the largest update is
/// below the tolerance. Throws DomainError without interior nodes and SolverError
/// when the sweep cap is reached.
ScalarField solve_extremal(std::shared_ptr<const GridDomain> domain, const SolverOptions& options = {},
                           SolveReport* report = nullptr);
ScalarField solve_extremal(const GridDomain& domain, const SolverOptions& options = {},
                           SolveReport* report = nullptr);

/// Sublevel domain {omega < 1 - delta}; the new boundary piece carries value 1 and
/// the old target keeps value 0.
GridDomain level_set(const ScalarField& field, double delta);

struct LevelIdentityReport {
  double max_deviation = 0.0;
  std::size_t nodes_checked = 0;
};

/// Max of |(1 - delta) omega(., A, D_delta) - omega(., A, D)| over interior nodes of
/// D_delta lying at least `margin` away from both boundaries.
LevelIdentityReport verify_level_identity(const GridDomain& domain, double delta, double margin,
                                          const SolverOptions& options = {});

/// Regular part of an arc set: its density points.
UnitCircleSet regularize_set(const UnitCircleSet& set);
/// Regular part of a lattice cell set: drops cells without a 4-neighbour in the set.
std::vector<std::size_t> regularize_set(const Lattice& lattice, const std::vector<std::size_t>& cells);

/// Polynomial disc t -> sum_k coefficients[k] t^k.
struct PolynomialDisc {
  std::vector<Complex> coefficients;
  Complex operator()(Complex t) const;
};

struct PoletskyReport {
  double min_average = 1.0;
  double omega = 0.0;
  bool pass = false;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// One-sided Poisson-functional check: every admissible disc's boundary average of
/// the indicator of D \ A must dominate omega(z, A, D) - tolerance.
PoletskyReport poletsky_upper_check(const GridDomain& domain, const ScalarField& omega, Complex z,
                                    const std::vector<PolynomialDisc>& discs, int boundary_samples = 4096,
                                    double tolerance = 1e-2);

}  // namespace pluriharm
