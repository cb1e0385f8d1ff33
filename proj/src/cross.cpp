#include "pluriharm/cross.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"

namespace pluriharm {

namespace {

constexpr double kRimTolerance = 1e-12;

}  // namespace

PlanarFactor PlanarFactor::unit_disc(const UnitCircleSet& target) {
  PlanarFactor f;
  f.arcs_ = regularize_set(target);
  return f;
}

PlanarFactor PlanarFactor::grid(const Lattice& lattice, std::vector<BoundaryPiece> pieces,
                                std::vector<std::size_t> target_cells, std::vector<JumpSingularity> jumps,
                                const SolverOptions& options) {
  auto domain = std::make_shared<const GridDomain>(lattice, std::move(pieces),
                                                   regularize_set(lattice, target_cells), std::move(jumps));
  return grid(std::move(domain), options);
}

PlanarFactor PlanarFactor::grid(std::shared_ptr<const GridDomain> domain, const SolverOptions& options) {
  PlanarFactor f;
  f.field_ = std::make_shared<const ScalarField>(solve_extremal(domain, options));
  const Lattice& lat = domain->lattice();
  f.lower_left_ = lat.origin;
  f.upper_right_ = lat.point(lat.nx - 1, lat.ny - 1);
  return f;
}

bool PlanarFactor::in_domain(Complex z) const {
  if (!is_finite(z)) return false;
  if (is_disc()) return std::abs(z) < 1.0 - kDiscGuard;
  const GridDomain& dom = field_->domain();
  return dom.contains(z) || in_target(z);
}

bool PlanarFactor::in_target(Complex z) const {
  if (!is_finite(z)) return false;
  if (is_disc()) return std::abs(std::abs(z) - 1.0) <= kRimTolerance && arcs_.contains(std::arg(z));
  const GridDomain& dom = field_->domain();
  if (dom.in_target(z)) return true;
  const std::int64_t node = dom.nearest_node(z);
  return node >= 0 && dom.target_cell(static_cast<std::size_t>(node));
}

double PlanarFactor::omega(Complex z) const {
  if (in_target(z)) return 0.0;
  if (!in_domain(z)) throw DomainError("point lies outside the factor domain");
  if (is_disc()) return omega_disc(z, arcs_);
  const double v = field_->evaluate(z);
  if (std::isnan(v)) throw DomainError("point lies outside the solved region");
  return v;
}

std::string_view cross_part_name(CrossPart part) {
  switch (part) {
    case CrossPart::first_branch: return "A x (G u B)";
    case CrossPart::second_branch: return "(D u A) x B";
    case CrossPart::both: return "both";
    case CrossPart::none: return "none";
  }
  return "none";
}

CrossPart cross_part(const Cross2& cross, Complex z, Complex w) {
  const bool z_in_a = cross.first().in_target(z);
  const bool w_in_b = cross.second().in_target(w);
  const bool first = z_in_a && (w_in_b || cross.second().in_domain(w));
  const bool second = w_in_b && (z_in_a || cross.first().in_domain(z));
  if (first && second) return CrossPart::both;
  if (first) return CrossPart::first_branch;
  if (second) return CrossPart::second_branch;
  return CrossPart::none;
}

bool envelope_contains(const Cross2& cross, Complex z, Complex w) {
  if (!cross.first().in_domain(z)) throw DomainError("z lies outside D");
  if (!cross.second().in_domain(w)) throw DomainError("w lies outside G");
  return cross.omega_total(z, w) < 1.0;
}

Complex EnvelopeSlice::point(int i, int j) const {
  const Complex span = upper_right - lower_left;
  return lower_left + Complex(span.real() * (i + 0.5) / n, span.imag() * (j + 0.5) / n);
}

std::size_t EnvelopeSlice::count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

double EnvelopeSlice::area() const {
  const Complex span = upper_right - lower_left;
  return static_cast<double>(count()) * span.real() * span.imag() / (static_cast<double>(n) * n);
}

EnvelopeSlice envelope_slice(const Cross2& cross, Factor fixed, Complex value, int n) {
  if (n < 1) throw InputError("slice resolution must be positive");
  const PlanarFactor& held = fixed == Factor::first ? cross.first() : cross.second();
  const PlanarFactor& free = fixed == Factor::first ? cross.second() : cross.first();
  if (!held.in_domain(value)) throw DomainError("fixed coordinate lies outside its domain");
  const double base = held.omega(value);

  EnvelopeSlice slice;
  slice.n = n;
  slice.lower_left = free.lower_left();
  slice.upper_right = free.upper_right();
  const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  slice.mask.assign(total, 0);
  slice.omega_total.assign(total, std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Complex p = slice.point(i, j);
      if (!free.in_domain(p)) continue;
      const std::size_t k = static_cast<std::size_t>(j) * n + i;
      try {
        slice.omega_total[k] = base + free.omega(p);
      } catch (const DomainError&) {
        continue;  // rim point the grid field cannot reach
      }
      slice.mask[k] = slice.omega_total[k] < 1.0;
    }
  }
  return slice;
}

double two_constant_bound(double omega_total, double m, double M) {
  if (!(m > 0) || !(M > 0)) throw DomainError("two-constant bound needs positive m and M");
  if (m > M) throw DomainError("two-constant bound needs m <= M");
  if (!(omega_total >= 0.0 && omega_total <= 1.0)) throw DomainError("omega_total must lie in [0, 1]");
  return std::exp((1.0 - omega_total) * std::log(m) + omega_total * std::log(M));
}

}  // namespace pluriharm
