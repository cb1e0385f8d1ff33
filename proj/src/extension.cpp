#include "pluriharm/extension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"

namespace pluriharm {

std::string to_string(wide x, int digits) {
  char buf[128];
  quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
  return buf;
}

// ---------------------------------------------------------------------------
// Test functions

const std::vector<TestFunction>& all_test_functions() {
  static const std::vector<TestFunction> all{TestFunction::one, TestFunction::product,
                                             TestFunction::exp_product, TestFunction::exp_sum,
                                             TestFunction::cauchy};
  return all;
}

std::string_view test_function_name(TestFunction f) {
  switch (f) {
    case TestFunction::one: return "1";
    case TestFunction::product: return "zw";
    case TestFunction::exp_product: return "exp(zw)";
    case TestFunction::exp_sum: return "exp(z+w)";
    case TestFunction::cauchy: return "1/((2-z)(2-w))";
  }
  return "?";
}

TestFunction parse_test_function(std::string_view name) {
  struct Alias { std::string_view a, b; TestFunction f; };
  static constexpr Alias aliases[] = {{"1", "one", TestFunction::one},
                                      {"const1", "one", TestFunction::one},
                                      {"zw", "product", TestFunction::product},
                                      {"exp(zw)", "exp_product", TestFunction::exp_product},
                                      {"exp(z+w)", "exp_sum", TestFunction::exp_sum},
                                      {"1/((2-z)(2-w))", "cauchy", TestFunction::cauchy}};
  for (const auto& alias : aliases) {
    if (name == alias.a || name == alias.b) return alias.f;
  }
  throw InputError("unknown test function '" + std::string(name) + "'");
}

Complex evaluate(TestFunction f, Complex z, Complex w) {
  switch (f) {
    case TestFunction::one: return 1.0;
    case TestFunction::product: return z * w;
    case TestFunction::exp_product: return std::exp(z * w);
    case TestFunction::exp_sum: return std::exp(z + w);
    case TestFunction::cauchy: return 1.0 / ((2.0 - z) * (2.0 - w));
  }
  return 0.0;
}

WComplex evaluate(TestFunction f, const WComplex& z, const WComplex& w) {
  switch (f) {
    case TestFunction::one: return 1;
    case TestFunction::product: return z * w;
    case TestFunction::exp_product: return exp(z * w);
    case TestFunction::exp_sum: return exp(z + w);
    case TestFunction::cauchy: return WComplex(1) / ((WComplex(2) - z) * (WComplex(2) - w));
  }
  return 0;
}

BoundarySampler sampler_for(TestFunction f) {
  return {[f](const WComplex& a, const WComplex& b) { return evaluate(f, a, b); }, kWideEpsilon,
          std::string(test_function_name(f))};
}

std::function<Complex(Complex, Complex)> build_g(const UnitCircleSet& A, const UnitCircleSet& B) {
  if (!(A.measure() > 0) || !(B.measure() > 0)) {
    throw DomainError("build_g needs sets of positive measure");
  }
  return [A, B](Complex z, Complex w) { return omega_holomorphic(z, A) + omega_holomorphic(w, B); };
}

// ---------------------------------------------------------------------------
// Product-integration weights

namespace {

constexpr double kStripWidth = 1.2;   // analyticity half-width used to pick the step
constexpr double kTailCut = 80.0;     // e^-80 is below the wide epsilon
constexpr double kPanelLength = 0.5 * kPi;
constexpr double kSplitRadius = 0.5;  // split panels at arg z beyond this |z|
constexpr std::size_t kOrderBlock = 4;
constexpr double kContractionEpsilon = 4.93038065763132e-32;  // 2^-104, double-double
constexpr double kGuardDigits = 4.0;      // e^4 of slack on the accuracy target

wide wsigmoid(wide t) { return 1 / (1 + expq(-t)); }

// Boundary conjugate of the arc set at e^{i theta}; offset(gamma) returns theta - gamma,
// exactly for the ends of the current subpanel.
struct ConjugateEvaluator {
  std::vector<wide> starts, ends;

  explicit ConjugateEvaluator(const UnitCircleSet& set) {
    if (set.is_full()) return;
    for (const Arc& arc : set.arcs()) {
      starts.push_back(arc.start);
      ends.push_back(arc.end);
    }
  }

  template <class Offset>
  wide operator()(Offset offset) const {
    wide total = 0;
    for (std::size_t k = 0; k < starts.size(); ++k) {
      total += logq(fabsq(sinq(offset(starts[k]) / 2))) - logq(fabsq(sinq(offset(ends[k]) / 2)));
    }
    return -total / kWidePi;
  }
};

struct Panel {
  std::size_t base = 0;        // index of the first Chebyshev node
  std::vector<wide> theta, bary;
};

// One transformed quadrature node: angle, boundary conjugate and Cauchy factor.
struct QuadNode {
  std::uint32_t panel;
  wide theta;
  wide conjugate;
  WComplex cauchy;
};

}  // namespace

struct CarlemanWeights::Impl {
  struct Subpanel {
    std::uint32_t panel;
    wide lo, hi;
  };

  std::vector<WComplex> nodes;
  std::vector<Panel> panels;
  std::vector<Subpanel> subpanels;
  ConjugateEvaluator conjugate;
  WComplex z;
  double step_scale = 1.0;
  double tolerance = 0.0;
  double omega_total = 1.0;
  std::vector<int> orders;
  std::vector<std::vector<WComplex>> weights;  // empty until built
  Complex g;
  std::mutex mutex;

  explicit Impl(const UnitCircleSet& arcs) : conjugate(arcs) {}
  std::vector<QuadNode> quadrature(int top_order) const;
  void build_block(std::size_t first);
};

CarlemanWeights::CarlemanWeights(const UnitCircleSet& arcs, Complex z, std::vector<int> orders, int panel_nodes,
                                 double step_scale, double tolerance, double omega_total)
    : impl_(std::make_unique<Impl>(arcs)) {
  if (!(arcs.measure() > 0)) throw DomainError("Carleman weights need a set of positive measure");
  if (panel_nodes < 64) throw InputError("at least 64 nodes per panel are required");
  if (orders.empty()) throw InputError("no Carleman orders requested");
  if (*std::min_element(orders.begin(), orders.end()) < 1) throw InputError("Carleman orders must be >= 1");
  Impl& im = *impl_;
  im.g = omega_holomorphic(z, arcs);
  im.z = WComplex(z);
  im.step_scale = step_scale;
  im.tolerance = tolerance;
  im.omega_total = omega_total;
  im.orders = std::move(orders);
  im.weights.resize(im.orders.size());
  const double z_arg = wrap_angle(std::arg(z));
  const int m = panel_nodes;

  for (const Arc& arc : arcs.arcs()) {
    const int count = std::max(1, static_cast<int>(std::ceil(arc.length() / kPanelLength - 1e-12)));
    const wide start = arc.start;
    const wide length = arc.length();
    for (int p = 0; p < count; ++p) {
      const wide lo = start + length * p / count;
      const wide hi = p + 1 == count ? static_cast<wide>(arc.end) : start + length * (p + 1) / count;
      Panel panel;
      panel.base = im.nodes.size();
      const wide mid = (lo + hi) / 2;
      const wide rad = (hi - lo) / 2;
      for (int j = 0; j < m; ++j) {
        const wide angle = kWidePi * (j + 0.5Q) / m;
        panel.theta.push_back(mid + rad * cosq(angle));
        panel.bary.push_back((j % 2 ? -1 : 1) * sinq(angle));
        im.nodes.push_back(unit(panel.theta.back()));
      }
      const auto index = static_cast<std::uint32_t>(im.panels.size());
      im.panels.push_back(std::move(panel));
      // A pole close to the panel is resolved by clustering nodes at arg z.
      wide t = z_arg;
      while (t < lo) t += 2 * kWidePi;
      if (std::abs(z) > kSplitRadius && t > lo + 1e-9Q && t < hi - 1e-9Q) {
        im.subpanels.push_back({index, lo, t});
        im.subpanels.push_back({index, t, hi});
      } else {
        im.subpanels.push_back({index, lo, hi});
      }
    }
  }
}

CarlemanWeights::~CarlemanWeights() = default;

// Logistic substitution theta = lo + len * sigmoid(t) on every subpanel: the endpoint
// oscillation |theta - gamma|^{-iN/pi} becomes a plane wave in t of frequency N/pi.
// Step and truncation target the absolute accuracy the final contraction needs:
// its terms are amplified by e^{N omega_total}.
std::vector<QuadNode> CarlemanWeights::Impl::quadrature(int top_order) const {
  double digits = kTailCut;
  if (tolerance > 0) {
    digits = std::min(kTailCut, -std::log(1e-3 * tolerance) + top_order * omega_total + kGuardDigits);
  }
  const wide frequency = top_order / kWidePi;
  const wide h = step_scale * 2 * kWidePi * kStripWidth / (digits + frequency * kStripWidth);
  const int half = static_cast<int>(ceilq(digits / h));
  std::vector<QuadNode> quad;
  quad.reserve(subpanels.size() * static_cast<std::size_t>(2 * half + 1));
  for (const Subpanel& sp : subpanels) {
    const wide len = sp.hi - sp.lo;
    for (int q = -half; q <= half; ++q) {
      const wide t = h * q;
      const wide s_lo = wsigmoid(t);
      const wide s_hi = wsigmoid(-t);
      const wide d_lo = len * s_lo;  // accurate distances to both ends
      const wide d_hi = len * s_hi;
      const wide jac = h * len * s_lo * s_hi;
      if (jac == 0) continue;
      const wide th = d_lo <= d_hi ? sp.lo + d_lo : sp.hi - d_hi;
      const auto offset = [&](wide gamma) {
        if (gamma == sp.lo) return d_lo;
        if (gamma == sp.hi) return -d_hi;
        return th - gamma;
      };
      const WComplex a = unit(th);
      quad.push_back({sp.panel, th, conjugate(offset), jac * a / ((a - z) * (2 * kWidePi))});
    }
  }
  return quad;
}

void CarlemanWeights::Impl::build_block(std::size_t first) {
  // Orders within a factor 1.5 share one quadrature.
  std::vector<std::size_t> block;
  for (std::size_t k = first; k < orders.size() && block.size() < kOrderBlock; ++k) {
    if (orders[k] > 1.5 * orders[first] && !block.empty()) break;
    if (weights[k].empty()) block.push_back(k);
  }
  int top = 0;
  for (std::size_t k : block) top = std::max(top, orders[k]);
  const std::vector<QuadNode> quad = quadrature(top);

  std::vector<std::vector<WComplex>> acc(block.size(), std::vector<WComplex>(nodes.size(), WComplex(0)));
  std::vector<wide> row;
  std::vector<WComplex> factor(block.size());
  for (const QuadNode& node : quad) {
    const Panel& panel = panels[node.panel];
    const std::size_t m = panel.theta.size();
    row.resize(m);
    // Barycentric Lagrange basis of the panel at node.theta.
    wide denom = 0;
    std::size_t exact = m;
    for (std::size_t j = 0; j < m; ++j) {
      const wide diff = node.theta - panel.theta[j];
      if (diff == 0) { exact = j; break; }
      row[j] = panel.bary[j] / diff;
      denom += row[j];
    }
    if (exact < m) {
      std::fill(row.begin(), row.end(), wide(0));
      row[exact] = 1;
    } else {
      const wide inv = 1 / denom;
      for (auto& r : row) r *= inv;
    }
    for (std::size_t b = 0; b < block.size(); ++b) {
      factor[b] = node.cauchy * unit(-orders[block[b]] * node.conjugate);
    }
    for (std::size_t b = 0; b < block.size(); ++b) {
      WComplex* out = acc[b].data() + panel.base;
      const WComplex c = factor[b];
      for (std::size_t j = 0; j < m; ++j) {
        out[j].re += row[j] * c.re;
        out[j].im += row[j] * c.im;
      }
    }
  }
  for (std::size_t b = 0; b < block.size(); ++b) weights[block[b]] = std::move(acc[b]);
}

const std::vector<WComplex>& CarlemanWeights::nodes() const { return impl_->nodes; }
Complex CarlemanWeights::g() const { return impl_->g; }

const std::vector<WComplex>& CarlemanWeights::weights(int order) const {
  Impl& im = *impl_;
  for (std::size_t k = 0; k < im.orders.size(); ++k) {
    if (im.orders[k] != order) continue;
    std::lock_guard lock(im.mutex);
    if (im.weights[k].empty()) im.build_block(k);
    return im.weights[k];
  }
  throw InputError("Carleman order " + std::to_string(order) + " was not prepared");
}

std::vector<WComplex> sample_grid(const BoundarySampler& f, const std::vector<WComplex>& a,
                                  const std::vector<WComplex>& b) {
  if (!f.evaluate) throw InputError("boundary sampler has no evaluator");
  std::vector<WComplex> grid(a.size() * b.size());
  const long rows = static_cast<long>(a.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      grid[static_cast<std::size_t>(i) * b.size() + j] = f.evaluate(a[static_cast<std::size_t>(i)], b[j]);
    }
  }
  return grid;
}

// ---------------------------------------------------------------------------
// K_N and its limit

namespace {

// Double-double numbers (unevaluated sums hi + lo) for the contraction: 106 bits at a
// fraction of the cost of software quad arithmetic.
struct DD {
  double hi = 0, lo = 0;
};

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}
inline DD operator+(DD x, DD y) {
  const double s = x.hi + y.hi;
  const double bb = s - x.hi;
  const double err = (x.hi - (s - bb)) + (y.hi - bb) + x.lo + y.lo;
  return quick_two_sum(s, err);
}
inline DD operator-(DD x) { return {-x.hi, -x.lo}; }
inline DD operator*(DD x, DD y) {
  const double p = x.hi * y.hi;
  const double err = std::fma(x.hi, y.hi, -p) + x.hi * y.lo + x.lo * y.hi;
  return quick_two_sum(p, err);
}
inline DD to_dd(wide x) {
  const double hi = static_cast<double>(x);
  return {hi, static_cast<double>(x - hi)};
}

struct DDComplex {
  DD re, im;
};

std::vector<DDComplex> to_dd(const std::vector<WComplex>& v) {
  std::vector<DDComplex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = {to_dd(v[i].re), to_dd(v[i].im)};
  return out;
}

// e^{N g} u^T F v; the O(e^{N omega_total}) factor is applied after the cancellation.
Complex contract(const std::vector<DDComplex>& u, const std::vector<DDComplex>& grid,
                 const std::vector<DDComplex>& v, Complex exponent) {
  DD total_re, total_im;
  const std::size_t nb = v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    DD re, im;
    const DDComplex* g = grid.data() + i * nb;
    for (std::size_t j = 0; j < nb; ++j) {
      re = re + (g[j].re * v[j].re + -(g[j].im * v[j].im));
      im = im + (g[j].re * v[j].im + g[j].im * v[j].re);
    }
    total_re = total_re + (u[i].re * re + -(u[i].im * im));
    total_im = total_im + (u[i].re * im + u[i].im * re);
  }
  return Complex(total_re.hi + total_re.lo, total_im.hi + total_im.lo) * std::exp(exponent);
}

Complex contract(const std::vector<WComplex>& u, const std::vector<WComplex>& grid, const std::vector<WComplex>& v,
                 Complex exponent) {
  return contract(to_dd(u), to_dd(grid), to_dd(v), exponent);
}

std::string gap_list(const std::vector<double>& gaps) {
  std::string s;
  for (double g : gaps) {
    if (!s.empty()) s += ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", g);
    s += buf;
  }
  return s;
}

double level_step(int level) { return std::pow(0.75, level); }

struct ScheduleRun {
  bool converged = false;
  Complex value;
  int N_used = 0;
  double gap = 0.0;
  std::vector<double> gaps;
  std::vector<int> orders;
};

}  // namespace

struct CarlemanEvaluator::Level {
  Level(const UnitCircleSet& A, const UnitCircleSet& B, Complex z, Complex w, const std::vector<int>& orders,
        int panel_nodes, double step, double tolerance, double omega_total)
      : a(A, z, orders, panel_nodes, step, tolerance, omega_total),
        b(B, w, orders, panel_nodes, step, tolerance, omega_total) {}

  ScheduleRun run(const std::vector<WComplex>& samples, const std::vector<int>& orders, double tolerance) const {
    ScheduleRun out;
    const auto grid = to_dd(samples);
    const Complex g = a.g() + b.g();
    Complex prev;
    for (std::size_t k = 0; k < orders.size(); ++k) {
      const int N = orders[k];
      const Complex value = contract(to_dd(a.weights(N)), grid, to_dd(b.weights(N)), static_cast<double>(N) * g);
      out.orders.push_back(N);
      out.value = value;
      out.N_used = N;
      if (k > 0) {
        out.gap = std::abs(value - prev);
        out.gaps.push_back(out.gap);
        if (out.gap < tolerance) {
          out.converged = true;
          return out;
        }
      }
      prev = value;
    }
    return out;
  }

  CarlemanWeights a;
  CarlemanWeights b;
};

CarlemanEvaluator::CarlemanEvaluator(UnitCircleSet A, UnitCircleSet B, Complex z, Complex w, CarlemanOptions options)
    : A_(std::move(A)), B_(std::move(B)), z_(z), w_(w), options_(std::move(options)) {
  if (!is_finite(z) || !is_finite(w)) throw InputError("evaluation point must be finite");
  if (!(A_.measure() > 0) || !(B_.measure() > 0)) throw DomainError("cross legs must have positive measure");
  const auto& sched = options_.schedule;
  if (sched.empty() || sched.front() < 1) throw InputError("Carleman schedule must start at N >= 1");
  for (std::size_t k = 1; k < sched.size(); ++k) {
    if (sched[k] <= sched[k - 1]) throw InputError("Carleman schedule must be strictly increasing");
  }
  if (!(options_.tolerance > 0)) throw InputError("tolerance must be positive");
  if (options_.panel_nodes < 64) throw InputError("at least 64 nodes per panel are required");
  if (options_.max_refinements < 0) throw InputError("max_refinements must be >= 0");
  const double limit = 1.0 - options_.rim_distance;
  if (std::abs(z) > limit || std::abs(w) > limit) {
    throw DomainError("evaluation point is closer than " + std::to_string(options_.rim_distance) +
                      " to the unit circle");
  }
  omega_total_ = omega_disc(z, A_) + omega_disc(w, B_);
  if (omega_total_ > 1.0 - options_.margin) {
    throw DomainError("omega(z) + omega(w) = " + std::to_string(omega_total_) + " exceeds 1 - margin");
  }
}

CarlemanEvaluator::~CarlemanEvaluator() = default;

// Orders whose cancellation (terms of size e^{N omega_total}) stays within the precision.
std::vector<int> CarlemanEvaluator::orders(double precision) const {
  const double eps = std::max(precision, kContractionEpsilon);
  const double budget = std::log(1e-2 * options_.tolerance / eps);
  std::vector<int> out;
  for (int N : options_.schedule) {
    if (N * omega_total_ <= budget) out.push_back(N);
  }
  if (out.size() < 2) {
    throw SolverError("fewer than two schedule orders fit the working precision at omega_total = " +
                          std::to_string(omega_total_),
                      0.0);
  }
  return out;
}

const CarlemanEvaluator::Level& CarlemanEvaluator::level(int index) const {
  std::lock_guard lock(mutex_);
  if (levels_.size() <= static_cast<std::size_t>(index)) levels_.resize(static_cast<std::size_t>(index) + 1);
  auto& slot = levels_[static_cast<std::size_t>(index)];
  if (!slot) {
    slot = std::make_unique<Level>(A_, B_, z_, w_, orders(kWideEpsilon), options_.panel_nodes << index,
                                   level_step(index), options_.tolerance, omega_total_);
  }
  return *slot;
}

Complex CarlemanEvaluator::K_N(const BoundarySampler& f, int N, int level_index) const {
  if (N < 1) throw InputError("N must be positive");
  const auto feasible = orders(kWideEpsilon);
  if (std::find(feasible.begin(), feasible.end(), N) == feasible.end()) {
    // Orders outside the prepared schedule get their own weights.
    const int m = options_.panel_nodes << level_index;
    const CarlemanWeights wa(A_, z_, {N}, m, level_step(level_index), options_.tolerance, omega_total_);
    const CarlemanWeights wb(B_, w_, {N}, m, level_step(level_index), options_.tolerance, omega_total_);
    const auto grid = sample_grid(f, wa.nodes(), wb.nodes());
    return contract(wa.weights(N), grid, wb.weights(N), static_cast<double>(N) * (wa.g() + wb.g()));
  }
  const Level& lv = level(level_index);
  const auto grid = sample_grid(f, lv.a.nodes(), lv.b.nodes());
  return contract(lv.a.weights(N), grid, lv.b.weights(N), static_cast<double>(N) * (lv.a.g() + lv.b.g()));
}

ExtensionResult CarlemanEvaluator::limit(const BoundarySampler& f) const {
  const std::vector<int> usable = orders(f.precision);
  ExtensionResult result;
  result.omega_total = omega_total_;
  bool have_previous = false;
  Complex previous;
  std::vector<double> last_gaps;
  for (int index = 0; index <= options_.max_refinements; ++index) {
    const Level& lv = level(index);
    const auto grid = sample_grid(f, lv.a.nodes(), lv.b.nodes());
    const ScheduleRun run = lv.run(grid, usable, options_.tolerance);
    last_gaps = run.gaps;
    if (!run.converged) {
      have_previous = false;
      continue;
    }
    result.value = run.value;
    result.N_used = run.N_used;
    result.cauchy_gap = run.gap;
    result.gaps = run.gaps;
    result.orders = run.orders;
    result.panel_nodes = options_.panel_nodes << index;
    if (have_previous) {
      result.refinement_gap = std::abs(run.value - previous);
      if (result.refinement_gap < 0.5 * options_.tolerance) return result;
    }
    previous = run.value;
    have_previous = true;
  }
  throw SolverError("Carleman limit did not settle (last gaps: " + gap_list(last_gaps) + ")",
                    last_gaps.empty() ? 0.0 : last_gaps.back(), last_gaps);
}

Complex CarlemanEvaluator::threefold(const ThreefoldSampler& f, Complex t, int lambda_nodes) const {
  if (!is_finite(t) || std::abs(t) >= 1.0 - 1e-3) throw DomainError("|t| must stay below 1 - 1e-3");
  if (lambda_nodes < 8) throw InputError("too few lambda nodes");
  if (!f.evaluate) throw InputError("3-fold sampler has no evaluator");
  const std::vector<int> usable = orders(f.precision);
  const int n = lambda_nodes;
  bool have_previous = false;
  Complex previous;
  for (int index = 0; index <= options_.max_refinements; ++index) {
    const Level& lv = level(index);
    std::vector<Complex> values(static_cast<std::size_t>(n));
    std::vector<std::string> failures(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) {
      const WComplex lambda = unit(2 * kWidePi * k / n);
      const BoundarySampler slice{[&](const WComplex& a, const WComplex& b) { return f.evaluate(a, lambda, b); },
                                  f.precision, f.name};
      const auto grid = sample_grid(slice, lv.a.nodes(), lv.b.nodes());
      const ScheduleRun run = lv.run(grid, usable, options_.tolerance);
      if (!run.converged) failures[static_cast<std::size_t>(k)] = gap_list(run.gaps);
      values[static_cast<std::size_t>(k)] = run.value;
    }
    for (int k = 0; k < n; ++k) {
      if (!failures[static_cast<std::size_t>(k)].empty()) {
        throw SolverError("Carleman limit did not settle at lambda node " + std::to_string(k) + " (gaps: " +
                              failures[static_cast<std::size_t>(k)] + ")",
                          0.0);
      }
    }
    // Trapezoid rule for (1 / 2 pi i) \oint K(lambda) d lambda / (lambda - t).
    Complex sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const Complex lambda = std::polar(1.0, kTwoPi * k / n);
      sum += values[static_cast<std::size_t>(k)] * lambda / (lambda - t);
    }
    const Complex value = sum / static_cast<double>(n);
    if (have_previous && std::abs(value - previous) < 0.5 * options_.tolerance) return value;
    previous = value;
    have_previous = true;
  }
  throw SolverError("3-fold reconstruction did not settle under panel refinement", 0.0);
}

Complex carleman_K_N(const BoundarySampler& f, const UnitCircleSet& A, const UnitCircleSet& B, Complex z,
                     Complex w, int N, const CarlemanOptions& options) {
  return CarlemanEvaluator(A, B, z, w, options).K_N(f, N);
}

ExtensionResult carleman_limit(const BoundarySampler& f, const UnitCircleSet& A, const UnitCircleSet& B,
                               Complex z, Complex w, const CarlemanOptions& options) {
  return CarlemanEvaluator(A, B, z, w, options).limit(f);
}

Complex reconstruct_threefold(const ThreefoldSampler& f, const UnitCircleSet& A, const UnitCircleSet& B,
                              Complex z, Complex t, Complex w, const ThreefoldOptions& options) {
  return CarlemanEvaluator(A, B, z, w, options.carleman).threefold(f, t, options.lambda_nodes);
}

// ---------------------------------------------------------------------------
// Two-constant suprema

namespace {

std::vector<Complex> spread_on(const UnitCircleSet& set, int samples) {
  std::vector<Complex> points;
  if (set.is_empty()) return points;
  for (const Arc& arc : set.arcs()) {
    const int count = std::max(2, static_cast<int>(std::ceil(samples * arc.length() / set.measure())));
    for (int k = 0; k < count; ++k) points.push_back(std::polar(1.0, arc.start + arc.length() * k / (count - 1)));
  }
  return points;
}

}  // namespace

SupBounds sup_bounds(const std::function<Complex(Complex, Complex)>& F, const UnitCircleSet& A,
                     const UnitCircleSet& B, int samples) {
  if (samples < 2) throw InputError("sup_bounds needs at least two samples per set");
  const auto a = spread_on(A, samples);
  const auto b = spread_on(B, samples);
  const auto circle = spread_on(UnitCircleSet::full_circle(), samples);
  SupBounds s;
  for (Complex x : a) {
    for (Complex y : b) s.m = std::max(s.m, std::abs(F(x, y)));
    for (Complex y : circle) s.M = std::max(s.M, std::abs(F(x, y)));
  }
  for (Complex x : circle) {
    for (Complex y : b) s.M = std::max(s.M, std::abs(F(x, y)));
  }
  s.M = std::max(s.M, s.m);
  return s;
}

// Hartogs figure

Complex hartogs_extend(const std::function<Complex(Complex, Complex)>& F, double r, Complex z1, Complex z2,
                       int nodes) {
  if (!(r > 0 && r < 1)) throw DomainError("Hartogs radius r must lie in (0, 1)");
  if (!is_finite(z1) || !is_finite(z2)) throw InputError("evaluation point must be finite");
  if (nodes < 8) throw InputError("too few contour nodes");
  const double rho = 1.0 - 0.5 * r;
  if (std::abs(z1) >= 1.0) throw DomainError("|z1| must be below 1");
  if (std::abs(z2) >= rho - 1e-3) throw DomainError("|z2| is too close to the contour |lambda| = 1 - r/2");
  Complex sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const Complex lambda = std::polar(rho, kTwoPi * k / nodes);
    sum += F(z1, lambda) * lambda / (lambda - z2);
  }
  return sum / static_cast<double>(nodes);
}

}  // namespace pluriharm
