#include "pluriharm/grid_extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pluriharm/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pluriharm {

ScalarField::ScalarField(std::shared_ptr<const GridDomain> domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (!domain_ || values_.size() != domain_->lattice().size()) {
    throw InputError("field size does not match its lattice");
  }
}

double ScalarField::remainder_at(std::size_t node) const {
  const Lattice& lat = domain_->lattice();
  if (domain_->slot(node) >= 0) return values_[node] - domain_->singular_part(lat.point(node));
  // Outside the interior: constant extrapolation from the interior 4-neighbours.
  const int i = lat.column(node);
  const int j = lat.row(node);
  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  double acc = 0.0;
  int count = 0;
  for (int k = 0; k < 4; ++k) {
    const int a = i + di[k];
    const int b = j + dj[k];
    if (a < 0 || b < 0 || a >= lat.nx || b >= lat.ny) continue;
    const std::size_t nb = lat.index(a, b);
    if (domain_->slot(nb) < 0) continue;
    acc += values_[nb] - domain_->singular_part(lat.point(nb));
    ++count;
  }
  return count ? acc / count : std::numeric_limits<double>::quiet_NaN();
}

double ScalarField::evaluate(Complex z) const {
  const Lattice& lat = domain_->lattice();
  const double fx = (z.real() - lat.origin.real()) / lat.h;
  const double fy = (z.imag() - lat.origin.imag()) / lat.h;
  int i = static_cast<int>(std::floor(fx));
  int j = static_cast<int>(std::floor(fy));
  i = std::clamp(i, 0, lat.nx - 2);
  j = std::clamp(j, 0, lat.ny - 2);
  const double tx = std::clamp(fx - i, 0.0, 1.0);
  const double ty = std::clamp(fy - j, 0.0, 1.0);
  const double w[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
  const std::size_t nodes[4] = {lat.index(i, j), lat.index(i + 1, j), lat.index(i, j + 1),
                                lat.index(i + 1, j + 1)};
  // With data jumps only the smooth remainder is interpolated, from interior nodes.
  const bool singular = !domain_->singularities().empty();
  double acc = 0.0;
  double weight = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (w[k] == 0.0) continue;
    const double v = singular ? remainder_at(nodes[k]) : values_[nodes[k]];
    if (std::isnan(v)) continue;
    acc += w[k] * v;
    weight += w[k];
  }
  if (weight == 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (!singular) return acc / weight;
  return std::clamp(acc / weight + domain_->singular_part(z), 0.0, 1.0);
}

namespace {

struct Stencil {
  double diag = 0.0;
  double source = 0.0;
  std::int32_t neighbor[4] = {-1, -1, -1, -1};
  double coef[4] = {0, 0, 0, 0};
};

// Shortley-Weller weights for one axis: arms at distances a*h and b*h.
void axis_weights(const Arm& plus, const Arm& minus, Stencil& st, int kp, int km) {
  const double a = plus.fraction;
  const double b = minus.fraction;
  const double cp = 2.0 / (a * (a + b));
  const double cm = 2.0 / (b * (a + b));
  st.diag += cp + cm;
  if (plus.neighbor >= 0) { st.neighbor[kp] = plus.neighbor; st.coef[kp] = cp; }
  else st.source += cp * plus.value;
  if (minus.neighbor >= 0) { st.neighbor[km] = minus.neighbor; st.coef[km] = cm; }
  else st.source += cm * minus.value;
}

}  // namespace

ScalarField solve_extremal(std::shared_ptr<const GridDomain> domain, const SolverOptions& options,
                           SolveReport* report) {
  const GridDomain& dom = *domain;
  const std::size_t count = dom.interior_count();
  if (count == 0) throw DomainError("domain has no interior cells");

  const bool singular = !dom.singularities().empty();
  std::vector<Stencil> stencils(count);
  std::vector<std::int32_t> red, black;
  int imin = dom.lattice().nx, imax = 0, jmin = dom.lattice().ny, jmax = 0;
  for (std::size_t s = 0; s < count; ++s) {
    auto arms = dom.arms(s);
    if (singular) {
      // Solve for the remainder omega - S, whose boundary data no longer jumps.
      for (int k = 0; k < 4; ++k) {
        if (arms[k].neighbor < 0) arms[k].value -= dom.singular_part(dom.arm_end(s, k));
      }
    }
    axis_weights(arms[0], arms[1], stencils[s], 0, 1);
    axis_weights(arms[2], arms[3], stencils[s], 2, 3);
    const int i = dom.lattice().column(dom.interior_nodes()[s]);
    const int j = dom.lattice().row(dom.interior_nodes()[s]);
    imin = std::min(imin, i); imax = std::max(imax, i);
    jmin = std::min(jmin, j); jmax = std::max(jmax, j);
    ((i + j) % 2 == 0 ? red : black).push_back(static_cast<std::int32_t>(s));
  }

  double relax = options.relaxation;
  if (relax <= 0) {
    const int mx = imax - imin + 2;
    const int my = jmax - jmin + 2;
    const double rho = 0.5 * (std::cos(kPi / mx) + std::cos(kPi / my));
    relax = (mx >= 3 && my >= 3) ? 2.0 / (1.0 + std::sqrt(1.0 - rho * rho)) : 1.7;
  }

  std::vector<double> u(count, 0.0);
  std::vector<double> lift(count, 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    if (singular) lift[s] = dom.singular_part(dom.lattice().point(dom.interior_nodes()[s]));
    u[s] = 0.5 - lift[s];
  }
  long sweep = 0;
  double last = std::numeric_limits<double>::infinity();
#ifdef _OPENMP
  if (options.workers > 0) omp_set_num_threads(options.workers);
#endif
  for (; sweep < options.max_sweeps; ++sweep) {
    double biggest = 0.0;
    for (const auto* colour : {&red, &black}) {
      const auto& list = *colour;
      const long n = static_cast<long>(list.size());
#pragma omp parallel for reduction(max : biggest) if (n > 4096)
      for (long k = 0; k < n; ++k) {
        const std::int32_t s = list[static_cast<std::size_t>(k)];
        const Stencil& st = stencils[static_cast<std::size_t>(s)];
        double acc = st.source;
        for (int d = 0; d < 4; ++d) {
          if (st.neighbor[d] >= 0) acc += st.coef[d] * u[static_cast<std::size_t>(st.neighbor[d])];
        }
        const double delta = relax * (acc / st.diag - u[static_cast<std::size_t>(s)]);
        u[static_cast<std::size_t>(s)] += delta;
        biggest = std::max(biggest, std::abs(delta));
      }
    }
    last = biggest;
    if (biggest < options.tolerance) break;
  }
  if (sweep >= options.max_sweeps) {
    throw SolverError("SOR did not converge within " + std::to_string(options.max_sweeps) +
                          " sweeps; last update " + std::to_string(last),
                      last);
  }
  if (report) *report = {sweep + 1, last, relax};

  const Lattice& lat = dom.lattice();
  std::vector<double> values(lat.size());
  for (std::size_t node = 0; node < lat.size(); ++node) values[node] = dom.fill_value(node);
  for (std::size_t s = 0; s < count; ++s) values[dom.interior_nodes()[s]] = u[s] + lift[s];
  return ScalarField(std::move(domain), std::move(values));
}

ScalarField solve_extremal(const GridDomain& domain, const SolverOptions& options, SolveReport* report) {
  return solve_extremal(std::make_shared<const GridDomain>(domain), options, report);
}

GridDomain level_set(const ScalarField& field, double delta) {
  if (!(delta > 0 && delta < 1)) throw InputError("level-set delta must lie in (0, 1)");
  const GridDomain& dom = field.domain();
  auto shared = std::make_shared<const ScalarField>(field);
  const double threshold = 1.0 - delta;
  std::vector<BoundaryPiece> pieces = dom.pieces();
  pieces.push_back({[shared, threshold](Complex z) {
                      const double v = shared->evaluate(z);
                      return std::isnan(v) ? 1.0 : v - threshold;
                    },
                    [](Complex) { return 1.0; }, false, "level"});
  // Near a data jump omega grows like angle / wedge, so its sublevel set has the same
  // corner with the wedge shrunk by 1 - delta; the jump itself becomes 0 -> 1 again.
  std::vector<JumpSingularity> jumps = dom.singularities();
  for (auto& j : jumps) {
    j.wedge *= threshold / j.jump;
    j.jump = 1.0;
  }
  GridDomain out(dom.lattice(), std::move(pieces), {}, std::move(jumps));
  if (out.interior_count() == 0) throw DomainError("level set is empty");
  return out;
}

LevelIdentityReport verify_level_identity(const GridDomain& domain, double delta, double margin,
                                          const SolverOptions& options) {
  const ScalarField omega = solve_extremal(domain, options);
  const GridDomain sub = level_set(omega, delta);
  const ScalarField omega_sub = solve_extremal(sub, options);

  const auto deep_outer = domain.deep_interior_mask(margin);
  const auto deep_inner = sub.deep_interior_mask(margin);
  LevelIdentityReport report;
  for (std::size_t s = 0; s < sub.interior_count(); ++s) {
    if (!deep_inner[s]) continue;
    const std::size_t node = sub.interior_nodes()[s];
    const std::int32_t outer_slot = domain.slot(node);
    if (outer_slot < 0 || !deep_outer[static_cast<std::size_t>(outer_slot)]) continue;
    const double dev = std::abs((1.0 - delta) * omega_sub.at(node) - omega.at(node));
    report.max_deviation = std::max(report.max_deviation, dev);
    ++report.nodes_checked;
  }
  return report;
}

UnitCircleSet regularize_set(const UnitCircleSet& set) { return set.density_points(); }

std::vector<std::size_t> regularize_set(const Lattice& lattice, const std::vector<std::size_t>& cells) {
  std::vector<std::uint8_t> member(lattice.size(), 0);
  for (std::size_t c : cells) {
    if (c >= lattice.size()) throw InputError("cell index outside the lattice");
    member[c] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t c : cells) {
    const int i = lattice.column(c);
    const int j = lattice.row(c);
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int a = i + di[k];
      const int b = j + dj[k];
      if (a < 0 || b < 0 || a >= lattice.nx || b >= lattice.ny) continue;
      if (member[lattice.index(a, b)]) { out.push_back(c); break; }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Complex PolynomialDisc::operator()(Complex t) const {
  Complex acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
  return acc;
}

PoletskyReport poletsky_upper_check(const GridDomain& domain, const ScalarField& omega, Complex z,
                                    const std::vector<PolynomialDisc>& discs, int boundary_samples,
                                    double tolerance) {
  PoletskyReport report;
  report.omega = domain.in_target(z) ? 0.0 : omega.evaluate(z);
  if (std::isnan(report.omega)) throw DomainError("base point lies outside the domain");
  for (const auto& disc : discs) {
    if (disc.coefficients.empty() || std::abs(disc.coefficients.front() - z) > 1e-12) {
      ++report.rejected;
      continue;
    }
    int outside = 0;
    bool escaped = false;
    for (int k = 0; k < boundary_samples && !escaped; ++k) {
      const Complex p = disc(std::polar(1.0, kTwoPi * (k + 0.5) / boundary_samples));
      if (!domain.contains(p) && !domain.in_target(p)) escaped = true;
      else if (!domain.in_target(p)) ++outside;
    }
    if (escaped) { ++report.rejected; continue; }
    ++report.accepted;
    report.min_average = std::min(report.min_average, static_cast<double>(outside) / boundary_samples);
  }
  report.pass = report.accepted > 0 && report.min_average >= report.omega - tolerance;
  return report;
}

}  // namespace pluriharm
