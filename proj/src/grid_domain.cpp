#include "pluriharm/grid_domain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "pluriharm/errors.hpp"

namespace pluriharm {

namespace {

constexpr int kDi[4] = {1, -1, 0, 0};
constexpr int kDj[4] = {0, 0, 1, -1};
constexpr double kMinFraction = 1e-6;

// First parameter s in (0, 1] where level(p + s (q - p)) >= 0, given level(p) < 0 <= level(q).
double crossing(const RealEvaluator& level, Complex p, Complex q) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (level(p + mid * (q - p)) < 0) lo = mid; else hi = mid;
  }
  return std::max(0.5 * (lo + hi), kMinFraction);
}

}  // namespace

double JumpSingularity::value(Complex z) const {
  double phi = orientation * std::arg((z - point) / target_side);
  // Interior directions have phi in (0, wedge); move the cut to the exterior bisector.
  if (phi < 0.5 * wedge - kPi) phi += kTwoPi;
  return jump * phi / wedge;
}

Lattice Lattice::covering(Complex center, double half_width, double h) {
  if (!(h > 0) || !(half_width > 0)) throw InputError("lattice spacing and extent must be positive");
  const int cells = static_cast<int>(std::ceil(2.0 * half_width / h - 1e-9));
  Lattice lat;
  lat.h = h;
  lat.nx = lat.ny = cells + 3;
  const double lo = -0.5 * cells * h - h;
  lat.origin = center + Complex(lo, lo);
  return lat;
}

GridDomain::GridDomain(Lattice lattice, std::vector<BoundaryPiece> pieces,
                       std::vector<std::size_t> target_cells,
                       std::vector<JumpSingularity> singularities)
    : lattice_(lattice), pieces_(std::move(pieces)), singularities_(std::move(singularities)) {
  if (lattice_.nx < 3 || lattice_.ny < 3 || !(lattice_.h > 0)) {
    throw InputError("lattice must have at least 3x3 nodes and positive spacing");
  }
  build(std::move(target_cells));
}

void GridDomain::build(std::vector<std::size_t> target_cells) {
  const std::size_t n = lattice_.size();
  target_cell_.assign(n, 0);
  for (std::size_t t : target_cells) {
    if (t >= n) throw InputError("target cell index outside the lattice");
    target_cell_[t] = 1;
  }
  std::vector<std::uint8_t> inside(n, 0);
  for (std::size_t node = 0; node < n; ++node) {
    if (target_cell_[node]) continue;
    if (mask_ && !(*mask_)[node]) continue;
    const Complex z = lattice_.point(node);
    bool in = true;
    for (const auto& piece : pieces_) {
      if (!(piece.level(z) < 0)) { in = false; break; }
    }
    inside[node] = in;
  }

  classes_.assign(n, CellClass::exterior);
  slot_.assign(n, -1);
  interior_.clear();
  for (std::size_t node = 0; node < n; ++node) {
    const int i = lattice_.column(node);
    const int j = lattice_.row(node);
    // Lattice border nodes stay exterior so every interior node has four neighbours.
    if (inside[node] && i > 0 && j > 0 && i + 1 < lattice_.nx && j + 1 < lattice_.ny) {
      slot_[node] = static_cast<std::int32_t>(interior_.size());
      interior_.push_back(node);
      classes_[node] = CellClass::interior;
    }
  }

  arms_.assign(interior_.size(), {});
  std::vector<std::uint8_t> touches_target(n, 0), touches_other(n, 0);
  for (std::size_t s = 0; s < interior_.size(); ++s) {
    const std::size_t node = interior_[s];
    const int i = lattice_.column(node);
    const int j = lattice_.row(node);
    const Complex p = lattice_.point(i, j);
    for (int k = 0; k < 4; ++k) {
      const std::size_t nb = lattice_.index(i + kDi[k], j + kDj[k]);
      Arm& arm = arms_[s][k];
      if (slot_[nb] >= 0) {
        arm = {1.0, 0.0, slot_[nb]};
        continue;
      }
      const Complex q = lattice_.point(nb);
      if (target_cell_[nb]) {
        arm = {1.0, 0.0, -1};
      } else {
        double best = 1.0;
        double value = std::numeric_limits<double>::quiet_NaN();
        for (const auto& piece : pieces_) {
          if (piece.level(q) < 0) continue;
          const double f = crossing(piece.level, p, q);
          if (f <= best || std::isnan(value)) {
            best = std::min(best, f);
            value = piece.data(p + f * (q - p));
          }
        }
        if (std::isnan(value)) {
          // Neighbour excluded only by the component mask or the lattice border.
          value = 1.0;
          for (const auto& piece : pieces_) value = piece.data(q);
        }
        arm = {best, value, -1};
      }
      (arm.value == 0.0 ? touches_target : touches_other)[nb] = 1;
    }
  }

  fill_.assign(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t node = 0; node < n; ++node) {
    if (classes_[node] == CellClass::interior) continue;
    if (touches_target[node]) classes_[node] = CellClass::boundary_target;
    else if (touches_other[node]) classes_[node] = CellClass::boundary_other;
    const Complex z = lattice_.point(node);
    if (in_target(z) || target_cell_[node]) {
      fill_[node] = 0.0;
    } else if (classes_[node] != CellClass::exterior) {
      double v = 1.0;
      for (const auto& piece : pieces_) {
        if (piece.level(z) >= 0) { v = piece.data(z); break; }
      }
      fill_[node] = v;
    }
  }
}

GridDomain GridDomain::disc(Complex center, double radius, double h, const UnitCircleSet& target) {
  if (!(radius > 0)) throw InputError("disc radius must be positive");
  BoundaryPiece rim;
  rim.name = "circle";
  rim.level = [center, radius](Complex z) { return std::abs(z - center) - radius; };
  rim.data = [center, target](Complex z) { return target.contains(std::arg(z - center)) ? 0.0 : 1.0; };
  std::vector<JumpSingularity> jumps;
  if (!target.is_full()) {
    for (const Arc& a : target.arcs()) {
      const Complex start = std::polar(1.0, a.start);
      const Complex end = std::polar(1.0, a.end);
      jumps.push_back({center + radius * start, Complex(0, 1) * start, 1, kPi, 1.0});
      jumps.push_back({center + radius * end, Complex(0, -1) * end, -1, kPi, 1.0});
    }
  }
  return GridDomain(Lattice::covering(center, radius, h), {std::move(rim)}, {}, std::move(jumps));
}

GridDomain GridDomain::annulus(Complex center, double r_in, double r_out, double h) {
  if (!(r_in > 0 && r_out > r_in)) throw InputError("annulus radii must satisfy 0 < r_in < r_out");
  BoundaryPiece outer{[center, r_out](Complex z) { return std::abs(z - center) - r_out; },
                      [](Complex) { return 1.0; }, false, "outer"};
  BoundaryPiece inner{[center, r_in](Complex z) { return r_in - std::abs(z - center); },
                      [](Complex) { return 0.0; }, true, "inner"};
  return GridDomain(Lattice::covering(center, r_out, h), {std::move(outer), std::move(inner)});
}

GridDomain GridDomain::disc_with_inner_target(Complex center, double radius, Complex target_center,
                                              double target_radius, double h) {
  if (!(radius > 0 && target_radius > 0) ||
      std::abs(target_center - center) + target_radius >= radius) {
    throw InputError("target disc must lie inside the domain disc");
  }
  BoundaryPiece outer{[center, radius](Complex z) { return std::abs(z - center) - radius; },
                      [](Complex) { return 1.0; }, false, "outer"};
  BoundaryPiece inner{[target_center, target_radius](Complex z) {
                        return target_radius - std::abs(z - target_center);
                      },
                      [](Complex) { return 0.0; }, true, "target"};
  return GridDomain(Lattice::covering(center, radius, h), {std::move(outer), std::move(inner)});
}

double GridDomain::singular_part(Complex z) const {
  double acc = 0.0;
  for (const auto& j : singularities_) acc += j.value(z);
  return acc;
}

GridDomain GridDomain::half_disc(Complex center, double radius, double h) {
  if (!(radius > 0)) throw InputError("half-disc radius must be positive");
  BoundaryPiece arc{[center, radius](Complex z) { return std::abs(z - center) - radius; },
                    [](Complex) { return 1.0; }, false, "arc"};
  BoundaryPiece chord{[center](Complex z) { return -(z - center).imag(); }, [](Complex) { return 1.0; }, false,
                      "chord"};
  return GridDomain(Lattice::covering(center, radius, h), {std::move(arc), std::move(chord)});
}

std::int64_t GridDomain::nearest_node(Complex z) const {
  const double fx = (z.real() - lattice_.origin.real()) / lattice_.h;
  const double fy = (z.imag() - lattice_.origin.imag()) / lattice_.h;
  if (!std::isfinite(fx) || !std::isfinite(fy)) return -1;
  const long i = std::lround(fx);
  const long j = std::lround(fy);
  if (i < 0 || j < 0 || i >= lattice_.nx || j >= lattice_.ny) return -1;
  return static_cast<std::int64_t>(lattice_.index(static_cast<int>(i), static_cast<int>(j)));
}

Complex GridDomain::arm_end(std::size_t slot, int k) const {
  const std::size_t node = interior_[slot];
  return lattice_.point(node) + arms_[slot][k].fraction * lattice_.h * Complex(kDi[k], kDj[k]);
}

bool GridDomain::contains(Complex z) const {
  for (const auto& piece : pieces_) {
    if (!(piece.level(z) < 0)) return false;
  }
  if (mask_) {
    const double fx = (z.real() - lattice_.origin.real()) / lattice_.h;
    const double fy = (z.imag() - lattice_.origin.imag()) / lattice_.h;
    const int i = static_cast<int>(std::lround(fx));
    const int j = static_cast<int>(std::lround(fy));
    if (i < 0 || j < 0 || i >= lattice_.nx || j >= lattice_.ny) return false;
    // Nearest node in the component, or a neighbouring one for points near the rim.
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const int a = i + di;
        const int b = j + dj;
        if (a < 0 || b < 0 || a >= lattice_.nx || b >= lattice_.ny) continue;
        if ((*mask_)[lattice_.index(a, b)]) return true;
      }
    }
    return false;
  }
  return true;
}

bool GridDomain::in_target(Complex z) const {
  for (const auto& piece : pieces_) {
    if (piece.target_body && piece.level(z) >= 0) return true;
  }
  return false;
}

int GridDomain::label_components(std::vector<int>& labels) const {
  labels.assign(lattice_.size(), -1);
  int count = 0;
  std::deque<std::size_t> queue;
  for (std::size_t start : interior_) {
    if (labels[start] >= 0) continue;
    labels[start] = count;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      const int i = lattice_.column(node);
      const int j = lattice_.row(node);
      for (int k = 0; k < 4; ++k) {
        const std::size_t nb = lattice_.index(i + kDi[k], j + kDj[k]);
        if (slot_[nb] >= 0 && labels[nb] < 0) {
          labels[nb] = count;
          queue.push_back(nb);
        }
      }
    }
    ++count;
  }
  return count;
}

GridDomain GridDomain::restricted_to_component(int label) const {
  std::vector<int> labels;
  const int count = label_components(labels);
  if (label < 0 || label >= count) throw DomainError("component label out of range");
  auto mask = std::make_shared<std::vector<std::uint8_t>>(lattice_.size(), 0);
  for (std::size_t node = 0; node < labels.size(); ++node) (*mask)[node] = labels[node] == label;
  GridDomain out = *this;
  out.mask_ = std::move(mask);
  std::vector<std::size_t> targets;
  for (std::size_t node = 0; node < target_cell_.size(); ++node) {
    if (target_cell_[node]) targets.push_back(node);
  }
  out.build(std::move(targets));
  return out;
}

bool GridDomain::is_simply_connected() const {
  std::vector<int> labels;
  if (label_components(labels) != 1) return false;
  // Complement (8-connected) must be a single piece touching the lattice border.
  std::vector<std::uint8_t> seen(lattice_.size(), 0);
  std::deque<std::size_t> queue;
  queue.push_back(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    const int i = lattice_.column(node);
    const int j = lattice_.row(node);
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const int a = i + di;
        const int b = j + dj;
        if (a < 0 || b < 0 || a >= lattice_.nx || b >= lattice_.ny) continue;
        const std::size_t nb = lattice_.index(a, b);
        if (seen[nb] || slot_[nb] >= 0) continue;
        seen[nb] = 1;
        ++reached;
        queue.push_back(nb);
      }
    }
  }
  return reached + interior_.size() == lattice_.size();
}

std::vector<bool> GridDomain::deep_interior_mask(double distance) const {
  std::vector<bool> deep(interior_.size(), false);
  const int reach = static_cast<int>(std::ceil(distance / lattice_.h));
  const double r2 = (distance / lattice_.h) * (distance / lattice_.h);
  for (std::size_t s = 0; s < interior_.size(); ++s) {
    const int i = lattice_.column(interior_[s]);
    const int j = lattice_.row(interior_[s]);
    bool ok = true;
    for (int dj = -reach; dj <= reach && ok; ++dj) {
      for (int di = -reach; di <= reach; ++di) {
        if (di * di + dj * dj > r2 + 1e-9) continue;
        const int a = i + di;
        const int b = j + dj;
        if (a < 0 || b < 0 || a >= lattice_.nx || b >= lattice_.ny ||
            slot_[lattice_.index(a, b)] < 0) {
          ok = false;
          break;
        }
      }
    }
    deep[s] = ok;
  }
  return deep;
}

}  // namespace pluriharm
