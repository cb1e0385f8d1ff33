#include "pluriharm/conformal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <tuple>
#include <unordered_map>

#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"

namespace pluriharm {

namespace {

const Complex kI{0.0, 1.0};

// Square root in the closed upper half-plane.
Complex sqrt_upper(Complex z) { return kI * std::sqrt(-z); }

// Moebius map fixing 0 and sending `pole` to infinity; `pole` may be infinite.
Complex straighten(Complex z, double pole) { return z / (1.0 - z / pole); }
Complex unstraighten(Complex u, double pole) { return u / (1.0 + u / pole); }

double signed_area(const std::vector<Complex>& poly) {
  double a = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Complex p = poly[k];
    const Complex q = poly[(k + 1) % poly.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

bool point_in_polygon(const std::vector<Complex>& poly, Complex z) {
  bool in = false;
  for (std::size_t k = 0, m = poly.size() - 1; k < poly.size(); m = k++) {
    const Complex a = poly[k];
    const Complex b = poly[m];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (z.real() < x) in = !in;
    }
  }
  return in;
}

// Lattice node of `dom` with the largest 4-step distance to the non-interior nodes.
Complex deepest_node(const GridDomain& dom) {
  const Lattice& lat = dom.lattice();
  std::vector<int> dist(lat.size(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t node = 0; node < lat.size(); ++node) {
    if (dom.slot(node) < 0) {
      dist[node] = 0;
      queue.push_back(node);
    }
  }
  std::size_t best = dom.interior_nodes().front();
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    const int i = lat.column(node);
    const int j = lat.row(node);
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int a = i + di[k];
      const int b = j + dj[k];
      if (a < 0 || b < 0 || a >= lat.nx || b >= lat.ny) continue;
      const std::size_t nb = lat.index(a, b);
      if (dist[nb] >= 0) continue;
      dist[nb] = dist[node] + 1;
      if (dist[nb] > dist[best]) best = nb;
      queue.push_back(nb);
    }
  }
  return lat.point(best);
}

}  // namespace

std::vector<Complex> trace_boundary(const GridDomain& component) {
  if (component.interior_count() == 0) throw DomainError("component has no interior nodes");
  if (!component.is_simply_connected()) throw TopologyError("component is not simply connected");
  const Lattice& lat = component.lattice();
  auto inside = [&](int i, int j) { return component.slot(lat.index(i, j)) >= 0; };

  // Edge ids: 2 * node for the edge to the right neighbour, 2 * node + 1 for the one above.
  auto crossing_point = [&](std::size_t id) {
    const std::size_t node = id / 2;
    const bool vertical = id % 2 == 1;
    const std::size_t other = node + (vertical ? static_cast<std::size_t>(lat.nx) : 1);
    const std::int32_t s = component.slot(node);
    if (s >= 0) return component.arm_end(static_cast<std::size_t>(s), vertical ? 2 : 0);
    return component.arm_end(static_cast<std::size_t>(component.slot(other)), vertical ? 3 : 1);
  };

  std::unordered_map<std::size_t, std::array<std::size_t, 2>> links;
  std::unordered_map<std::size_t, int> degree;
  auto link = [&](std::size_t a, std::size_t b) {
    links[a][degree[a]++ % 2] = b;
    links[b][degree[b]++ % 2] = a;
  };

  for (int j = 0; j + 1 < lat.ny; ++j) {
    for (int i = 0; i + 1 < lat.nx; ++i) {
      const bool c[4] = {inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)};
      const std::size_t e[4] = {2 * lat.index(i, j), 2 * lat.index(i + 1, j) + 1, 2 * lat.index(i, j + 1),
                                2 * lat.index(i, j) + 1};
      const bool cut[4] = {c[0] != c[1], c[1] != c[2], c[3] != c[2], c[0] != c[3]};
      const int cuts = cut[0] + cut[1] + cut[2] + cut[3];
      if (cuts == 2) {
        std::size_t ends[2];
        int m = 0;
        for (int k = 0; k < 4; ++k) {
          if (cut[k]) ends[m++] = e[k];
        }
        link(ends[0], ends[1]);
      } else if (cuts == 4) {
        // Diagonal pair: interior is 4-connected, so each inside corner is cut off alone.
        if (c[0]) {
          link(e[0], e[3]);
          link(e[1], e[2]);
        } else {
          link(e[0], e[1]);
          link(e[2], e[3]);
        }
      }
    }
  }
  if (links.empty()) throw DomainError("component boundary is empty");

  std::vector<Complex> poly;
  const std::size_t start = links.begin()->first;
  std::size_t prev = std::numeric_limits<std::size_t>::max();
  std::size_t cur = start;
  std::size_t visited = 0;
  do {
    poly.push_back(crossing_point(cur));
    ++visited;
    const auto& nb = links[cur];
    const std::size_t next = nb[0] != prev ? nb[0] : nb[1];
    prev = cur;
    cur = next;
  } while (cur != start && visited <= links.size());
  if (visited != links.size()) throw TopologyError("component boundary has more than one loop");

  std::vector<Complex> clean;
  const double eps = 1e-12 * lat.h;
  for (const Complex& p : poly) {
    if (clean.empty() || std::abs(p - clean.back()) > eps) clean.push_back(p);
  }
  while (clean.size() > 1 && std::abs(clean.front() - clean.back()) <= eps) clean.pop_back();
  if (clean.size() < 3) throw DomainError("component boundary is degenerate");
  if (signed_area(clean) < 0) std::reverse(clean.begin(), clean.end());
  return clean;
}

std::vector<Complex> resample_polyline(const std::vector<Complex>& polyline, int count) {
  if (polyline.size() < 3 || count < 3) throw InputError("resampling needs a polygon and at least 3 vertices");
  const std::size_t n = polyline.size();
  std::vector<double> cumulative(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    cumulative[k + 1] = cumulative[k] + std::abs(polyline[(k + 1) % n] - polyline[k]);
  }
  const double total = cumulative.back();
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(count));
  std::size_t seg = 0;
  for (int k = 0; k < count; ++k) {
    const double s = total * k / count;
    while (seg + 1 < n && cumulative[seg + 1] <= s) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double t = len > 0 ? (s - cumulative[seg]) / len : 0.0;
    out.push_back(polyline[seg] + t * (polyline[(seg + 1) % n] - polyline[seg]));
  }
  return out;
}

DiscreteConformalMap::DiscreteConformalMap(std::vector<Complex> polyline, Complex center,
                                           std::function<bool(Complex)> inside)
    : polyline_(std::move(polyline)), center_(center), inside_(std::move(inside)) {
  const std::size_t n = polyline_.size();
  if (n < 3) throw InputError("conformal map needs at least 3 boundary vertices");
  if (!contains(center_)) throw DomainError("map center lies outside the region");

  // Opening map: the complement of the edge [z0, z1] onto the upper half-plane, with the
  // remaining boundary becoming a slit from 0 to infinity.
  z0_ = polyline_[0];
  z1_ = polyline_[1];
  std::vector<Complex> image(n);
  for (std::size_t k = 2; k < n; ++k) image[k] = kI * std::sqrt((polyline_[k] - z1_) / (polyline_[k] - z0_));

  // Each step unzips the geodesic arc from 0 to the next slit vertex onto the real line.
  double tail = std::numeric_limits<double>::infinity();  // image of z0
  steps_.reserve(n - 2);
  for (std::size_t k = 2; k < n; ++k) {
    Complex a = image[k];
    if (!(a.imag() > 0)) a.imag(std::max(a.imag(), 1e-300));
    const double m2 = std::norm(a);
    const Step st{m2 / a.real(), m2 / a.imag()};
    steps_.push_back(st);
    for (std::size_t j = k + 1; j < n; ++j) {
      const Complex u = straighten(image[j], st.c);
      image[j] = sqrt_upper(u * u + st.d * st.d);
    }
    const double w = std::isinf(tail) ? (std::isinf(st.c) ? tail : -st.c) : std::real(straighten(tail, st.c));
    tail = std::isinf(w) ? w : std::copysign(std::hypot(w, st.d), w);
  }
  last_pole_ = tail;

  center_image_ = to_half_plane(center_);
  if (center_image_.imag() < 0) {
    last_sign_ = -1.0;
    center_image_ = -center_image_;
  }
  double scale = 0.0;
  for (const Complex& p : polyline_) scale = std::max(scale, std::abs(p - center_));
  const double eps = 1e-6 * scale;
  const Complex derivative = (to_half_plane(center_ + eps) - to_half_plane(center_ - eps)) / (2.0 * eps);
  const Complex q = derivative / (2.0 * kI * center_image_.imag());
  rotation_ = std::conj(q) / std::abs(q);
}

bool DiscreteConformalMap::contains(Complex z) const {
  if (!is_finite(z)) return false;
  return inside_ ? inside_(z) : point_in_polygon(polyline_, z);
}

Complex DiscreteConformalMap::to_half_plane(Complex z) const {
  Complex u = kI * std::sqrt((z - z1_) / (z - z0_));
  for (const Step& st : steps_) {
    const Complex v = straighten(u, st.c);
    u = sqrt_upper(v * v + st.d * st.d);
  }
  const Complex v = straighten(u, last_pole_);
  return last_sign_ * v * v;
}

Complex DiscreteConformalMap::from_half_plane(Complex g) const {
  Complex u = unstraighten(sqrt_upper(last_sign_ * g), last_pole_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    u = unstraighten(sqrt_upper(u * u - it->d * it->d), it->c);
  }
  const Complex zeta = -u * u;
  return (zeta * z0_ - z1_) / (zeta - 1.0);
}

Complex DiscreteConformalMap::to_disc(Complex g) const {
  if (std::isinf(std::abs(g))) return rotation_;
  return rotation_ * (g - center_image_) / (g - std::conj(center_image_));
}

Complex DiscreteConformalMap::operator()(Complex z) const { return to_disc(to_half_plane(z)); }

std::vector<Complex> DiscreteConformalMap::boundary_correspondence() const {
  // The region keeps the negative side of every unzipped slit, so a slit base (the
  // previous vertex, sitting at 0) opens to -d.
  const std::size_t n = polyline_.size();
  std::vector<Complex> out(n);
  auto advance = [](double t, const Step& st) {
    if (t == 0.0) return -st.d;
    const double w = std::real(straighten(t, st.c));
    return std::isinf(w) ? w : std::copysign(std::hypot(w, st.d), w);
  };
  auto finish = [&](double t) {
    if (std::isinf(t)) return rotation_;
    const double v = std::real(straighten(t, last_pole_));
    return to_disc(last_sign_ * v * v);
  };
  out[0] = rotation_;  // z0 is sent to the pole of the last map
  for (std::size_t k = 1; k < n; ++k) {
    double t = 0.0;  // vertex k sits at the slit tip once step k - 2 has run (z1 from the start)
    for (std::size_t s = (k >= 2 ? k - 1 : 0); s < steps_.size(); ++s) t = advance(t, steps_[s]);
    out[k] = finish(t);
  }
  return out;
}

Complex DiscreteConformalMap::inverse(Complex w) const {
  const Complex v = w * std::conj(rotation_);
  const Complex g = (center_image_ - v * std::conj(center_image_)) / (1.0 - v);
  return from_half_plane(g);
}

DiscreteConformalMap riemann_map(const GridDomain& component, Complex center, const ConformalOptions& options) {
  if (!component.contains(center)) throw DomainError("map center lies outside the component");
  auto poly = resample_polyline(trace_boundary(component), options.vertices);
  auto shared = std::make_shared<const GridDomain>(component);
  return DiscreteConformalMap(std::move(poly), center, [shared](Complex z) { return shared->contains(z); });
}

namespace {

// Inward unit normal at a boundary point: -zeta on the unit circle, otherwise from the
// nearest polyline vertex.
Complex inward_normal(const DiscreteConformalMap& map, Complex zeta) {
  if (std::abs(std::abs(zeta) - 1.0) < 1e-9) return -zeta / std::abs(zeta);
  const auto& poly = map.boundary();
  std::size_t best = 0;
  for (std::size_t k = 1; k < poly.size(); ++k) {
    if (std::abs(poly[k] - zeta) < std::abs(poly[best] - zeta)) best = k;
  }
  const std::size_t n = poly.size();
  const Complex tangent = poly[(best + 1) % n] - poly[(best + n - 1) % n];
  return kI * tangent / std::abs(tangent);
}

bool rays_inside(const std::function<bool(Complex)>& inside, Complex zeta, Complex normal, double alpha,
                 int first_depth, int last_depth) {
  for (int k = first_depth; k <= last_depth; ++k) {
    const double r = std::ldexp(1.0, -k);
    for (double phi : {-alpha, 0.0, alpha}) {
      if (!inside(zeta + r * normal * std::polar(1.0, phi))) return false;
    }
  }
  return true;
}

}  // namespace

Complex endpoint_limit(const DiscreteConformalMap& map, Complex zeta, double alpha) {
  if (!(alpha > 0 && alpha < kPi / 2)) throw InputError("Stolz opening must lie in (0, pi/2)");
  const Complex normal = inward_normal(map, zeta);
  constexpr int kFirst = 4;
  constexpr int kLast = 12;
  auto inside = [&](Complex z) { return map.contains(z); };
  if (!rays_inside(inside, zeta, normal, 0.5 * alpha, kFirst, kLast)) {
    throw DomainError("Stolz ray leaves the region: not an end-point");
  }
  Complex sum = 0.0;
  for (double phi : {-0.5 * alpha, 0.0, 0.5 * alpha}) {
    const Complex dir = normal * std::polar(1.0, phi);
    const Complex near = map(zeta + std::ldexp(1.0, -kLast) * dir);
    const Complex far = map(zeta + std::ldexp(1.0, -(kLast - 1)) * dir);
    sum += 2.0 * near - far;  // Richardson step for an O(distance) error
  }
  const Complex limit = sum / 3.0;
  const double modulus = std::abs(limit);
  if (!(std::abs(modulus - 1.0) <= 1e-2)) {
    throw SolverError("end-point limit is not on the unit circle", std::abs(modulus - 1.0));
  }
  return limit / modulus;
}

bool is_end_point(const GridDomain& omega, Complex zeta, const EndpointProbe& probe) {
  auto inside = [&](Complex z) { return std::abs(z) < 1.0 && omega.contains(z); };
  for (double alpha : probe.openings) {
    if (!rays_inside(inside, zeta, -zeta, alpha, probe.first_depth, probe.last_depth)) return false;
  }
  return true;
}

std::vector<Complex> end_points(const GridDomain& omega, const UnitCircleSet& B, int samples,
                                const EndpointProbe& probe) {
  std::vector<Complex> out;
  const UnitCircleSet regular = B.density_points();
  if (regular.is_empty() || samples < 1) return out;
  for (const Arc& arc : regular.arcs()) {
    const int count = std::max(1, static_cast<int>(std::lround(samples * arc.length() / regular.measure())));
    for (int j = 0; j < count; ++j) {
      const Complex zeta = std::polar(1.0, arc.start + (j + 0.5) * arc.length() / count);
      if (is_end_point(omega, zeta, probe)) out.push_back(zeta);
    }
  }
  return out;
}

UnitCircleSet arc_hull(const std::vector<Complex>& points, double gap) {
  std::vector<double> angles;
  angles.reserve(points.size());
  for (const Complex& p : points) angles.push_back(wrap_angle(std::arg(p)));
  std::sort(angles.begin(), angles.end());
  const std::size_t n = angles.size();
  if (n < 2) return UnitCircleSet::empty();

  auto gap_after = [&](std::size_t k) {
    return k + 1 < n ? angles[k + 1] - angles[k] : angles[0] + kTwoPi - angles[n - 1];
  };
  std::size_t first_break = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (gap_after(k) >= gap) {
      first_break = k;
      break;
    }
  }
  if (first_break == n) return UnitCircleSet::full_circle();

  std::vector<std::pair<double, double>> intervals;
  std::size_t k = (first_break + 1) % n;
  for (std::size_t done = 0; done < n;) {
    const double start = angles[k];
    double length = 0.0;
    while (done + 1 < n && gap_after(k) < gap) {
      length += gap_after(k);
      k = (k + 1) % n;
      ++done;
    }
    if (length > 0) intervals.emplace_back(start, start + length);
    k = (k + 1) % n;
    ++done;
  }
  return UnitCircleSet::from_intervals(intervals);
}

GridDomain level_set_component(const UnitCircleSet& B, double delta, Complex seed, double h,
                               const SolverOptions& solver) {
  if (!(delta >= 0 && delta < 1)) throw InputError("delta must lie in [0, 1)");
  const GridDomain base = GridDomain::disc(0.0, 1.0, h, B);
  // Half-step offset keeps lattice lines off symmetry axes, where a level curve could run
  // through the nodes and make the classification depend on rounding.
  Lattice lat = base.lattice();
  lat.origin += Complex(0.5 * h, 0.5 * h);
  auto disc = std::make_shared<const GridDomain>(lat, base.pieces(), std::vector<std::size_t>{},
                                                 base.singularities());
  GridDomain region = *disc;
  if (delta > 0) region = level_set(solve_extremal(disc, solver), delta);

  std::vector<int> labels;
  region.label_components(labels);
  const std::int64_t node = region.nearest_node(seed);
  if (node >= 0) {
    const int i = lat.column(static_cast<std::size_t>(node));
    const int j = lat.row(static_cast<std::size_t>(node));
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const int a = i + di;
        const int b = j + dj;
        if (a < 0 || b < 0 || a >= lat.nx || b >= lat.ny) continue;
        const std::size_t nb = lat.index(a, b);
        if (labels[nb] < 0) continue;
        const double d = std::abs(lat.point(nb) - seed);
        if (d < best_dist) {
          best_dist = d;
          best = labels[nb];
        }
      }
    }
    if (best >= 0 && region.contains(seed)) return region.restricted_to_component(best);
  }
  throw DomainError("seed point is not inside the level set");
}

TransferReport verify_transfer_identity(const UnitCircleSet& B, double delta, const std::vector<Complex>& samples,
                                        const TransferOptions& options) {
  if (samples.empty()) throw InputError("transfer identity needs at least one sample");
  if (!(B.measure() > 0)) throw DomainError("boundary set has zero measure");
  const GridDomain omega = level_set_component(B, delta, samples.front(), options.h, options.solver);

  TransferReport report;
  report.center = options.center ? *options.center : deepest_node(omega);
  const DiscreteConformalMap map = riemann_map(omega, report.center, options.conformal);

  // Per arc of B: end-points as (angle, image), refined at both ends of each run and
  // between neighbours whose images are far apart.
  std::vector<Complex> images;
  const UnitCircleSet regular = B.density_points();
  const double join = 0.5 * options.hull_gap;
  for (const Arc& arc : regular.arcs()) {
    const int count = std::max(
        1, static_cast<int>(std::lround(options.endpoint_samples * arc.length() / regular.measure())));
    std::vector<std::pair<double, Complex>> pts;
    for (int j = 0; j < count; ++j) {
      const double theta = arc.start + (j + 0.5) * arc.length() / count;
      const Complex zeta = std::polar(1.0, theta);
      if (is_end_point(omega, zeta)) pts.emplace_back(theta, endpoint_limit(map, zeta, kPi / 4));
    }
    report.endpoint_count += pts.size();
    if (pts.empty()) continue;

    auto push_out = [&](double inner, double outer) {
      // Bisect towards `outer`, keeping the farthest point that is still an end-point.
      for (int it = 0; it < options.refinement_depth; ++it) {
        const double mid = 0.5 * (inner + outer);
        if (is_end_point(omega, std::polar(1.0, mid))) {
          inner = mid;
          pts.emplace_back(mid, endpoint_limit(map, std::polar(1.0, mid), kPi / 4));
        } else {
          outer = mid;
        }
      }
    };
    const double first = pts.front().first;
    const double last = pts.back().first;
    push_out(first, arc.start);
    push_out(last, arc.end);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::pair<double, Complex>> refined;
    std::vector<std::tuple<double, Complex, double, Complex, int>> stack;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      refined.push_back(pts[k]);
      if (k + 1 == pts.size()) break;
      stack.emplace_back(pts[k].first, pts[k].second, pts[k + 1].first, pts[k + 1].second, 0);
      while (!stack.empty()) {
        auto [ta, wa, tb, wb, depth] = stack.back();
        stack.pop_back();
        if (std::abs(wb - wa) < join || depth >= options.refinement_depth) continue;
        const double tm = 0.5 * (ta + tb);
        const Complex zm = std::polar(1.0, tm);
        if (!is_end_point(omega, zm)) continue;
        const Complex wm = endpoint_limit(map, zm, kPi / 4);
        refined.emplace_back(tm, wm);
        stack.emplace_back(ta, wa, tm, wm, depth + 1);
        stack.emplace_back(tm, wm, tb, wb, depth + 1);
      }
    }
    for (const auto& p : refined) images.push_back(p.second);
  }
  report.image = arc_hull(images, options.hull_gap);

  for (const Complex& z : samples) {
    if (!omega.contains(z)) throw DomainError("sample lies outside the chosen component");
    const double lhs = (1.0 - delta) * omega_disc(map(z), report.image);
    const double dev = std::abs(lhs - omega_disc(z, B));
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

}  // namespace pluriharm
