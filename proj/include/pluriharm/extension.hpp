#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "pluriharm/arcset.hpp"
#include "pluriharm/types.hpp"
#include "pluriharm/wide.hpp"

namespace pluriharm {

/// Values of f on the boundary legs of a bidisc cross, queried at (a, b) with a on A
/// and b on B (the 3-fold variant adds a middle variable on the unit circle).
struct BoundarySampler {
  std::function<WComplex(const WComplex& a, const WComplex& b)> evaluate;
  /// Relative accuracy of the returned values; caps the usable N (see carleman_limit).
  double precision = kWideEpsilon;
  std::string name;
};

struct ThreefoldSampler {
  std::function<WComplex(const WComplex& a, const WComplex& lambda, const WComplex& b)> evaluate;
  double precision = kWideEpsilon;
  std::string name;
};

/// Closed-form functions holomorphic near the closed bidisc, used as oracles.
enum class TestFunction { one, product, exp_product, exp_sum, cauchy };

const std::vector<TestFunction>& all_test_functions();
std::string_view test_function_name(TestFunction f);
/// Accepts the names "1", "zw", "exp(zw)", "exp(z+w)", "1/((2-z)(2-w))", the
/// identifiers one, product, exp_product, exp_sum, cauchy and "const1".
TestFunction parse_test_function(std::string_view name);
Complex evaluate(TestFunction f, Complex z, Complex w);
WComplex evaluate(TestFunction f, const WComplex& z, const WComplex& w);
BoundarySampler sampler_for(TestFunction f);

/// g(z, w) = g_A(z) + g_B(w) with g_X = omega(., X, E) + i conjugate, conjugate(0) = 0.
/// Throws DomainError when A or B has zero measure.
std::function<Complex(Complex, Complex)> build_g(const UnitCircleSet& A, const UnitCircleSet& B);

struct CarlemanOptions {
  /// Strictly increasing N values tried by carleman_limit.
  std::vector<int> schedule{1, 2, 4, 8, 16, 32, 64, 128, 256};
  double tolerance = 1e-6;
  /// Evaluation points must satisfy omega_total <= 1 - margin.
  double margin = 0.05;
  /// Chebyshev nodes per boundary panel at the coarsest refinement level (>= 64).
  int panel_nodes = 64;
  /// Extra refinement levels, each doubling panel_nodes, tried until two levels agree.
  int max_refinements = 2;
  /// Minimum distance of z and w from the unit circle.
  double rim_distance = 5e-4;
};

struct ExtensionResult {
  Complex value;
  int N_used = 0;
  /// |K_N - K_N'| for the last consecutive pair of the schedule.
  double cauchy_gap = 0.0;
  double omega_total = 0.0;
  /// Gap after each evaluated schedule entry (first entry has none).
  std::vector<double> gaps;
  std::vector<int> orders;
  int panel_nodes = 0;
  /// |K_inf(level) - K_inf(level - 1)| of the accepted refinement level (0 if single level).
  double refinement_gap = 0.0;
};

/// Product-integration weights of one factor of the Carleman kernel.
///
/// For each order N the weights u_j satisfy
///   sum_j u_j phi(a_j) ~= (1/2 pi i) \int_A e^{-N i c(a)} phi(a) da / (a - z)
/// for phi smooth on each panel, c being the boundary conjugate function of A.
/// The factor e^{N g_A(z)} is kept separately so that magnitudes stay O(1).
/// Weights for an order are built on first use (in blocks of consecutive orders);
/// access is thread-safe. With a positive tolerance the quadrature only resolves what
/// a result of that tolerance needs after amplification by e^{N omega_total};
/// otherwise it works to the wide epsilon.
class CarlemanWeights {
 public:
  CarlemanWeights(const UnitCircleSet& arcs, Complex z, std::vector<int> orders, int panel_nodes,
                  double step_scale = 1.0, double tolerance = 0.0, double omega_total = 1.0);
  ~CarlemanWeights();
  CarlemanWeights(const CarlemanWeights&) = delete;
  CarlemanWeights& operator=(const CarlemanWeights&) = delete;

  /// Boundary nodes a_j (on the unit circle, never at arc endpoints).
  const std::vector<WComplex>& nodes() const;
  const std::vector<WComplex>& weights(int order) const;
  /// g_A(z) = omega + i conjugate at the evaluation point.
  Complex g() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Sampled f on the tensor grid of two node sets.
std::vector<WComplex> sample_grid(const BoundarySampler& f, const std::vector<WComplex>& a,
                                  const std::vector<WComplex>& b);

/// Carleman machinery for one evaluation point (z, w): weights are independent of f,
/// so one evaluator serves any number of samplers (and every lambda of a 3-fold cross).
class CarlemanEvaluator {
 public:
  /// Validates the point (rim distance, omega_total <= 1 - margin).
  CarlemanEvaluator(UnitCircleSet A, UnitCircleSet B, Complex z, Complex w, CarlemanOptions options = {});
  ~CarlemanEvaluator();

  double omega_total() const { return omega_total_; }
  Complex K_N(const BoundarySampler& f, int N, int level = 0) const;
  ExtensionResult limit(const BoundarySampler& f) const;
  /// Same as limit() for a 3-fold sampler, integrating over `lambda_nodes` circle nodes.
  Complex threefold(const ThreefoldSampler& f, Complex t, int lambda_nodes) const;

 private:
  struct Level;
  const Level& level(int index) const;
  std::vector<int> orders(double precision) const;

  UnitCircleSet A_, B_;
  Complex z_, w_;
  CarlemanOptions options_;
  double omega_total_ = 0.0;
  mutable std::vector<std::unique_ptr<Level>> levels_;
  mutable std::mutex mutex_;
};

/// K_N(z, w) of the Gonchar-Carleman operator on the bidisc cross with legs A, B.
Complex carleman_K_N(const BoundarySampler& f, const UnitCircleSet& A, const UnitCircleSet& B, Complex z,
                     Complex w, int N, const CarlemanOptions& options = {});

/// N -> infinity limit of K_N: stops at the first consecutive schedule pair with gap below
/// the tolerance, skipping orders whose cancellation would exceed the working precision.
/// Panel refinement is repeated until two levels agree to tolerance / 2.
/// Throws SolverError (history = gaps) when the schedule is exhausted.
ExtensionResult carleman_limit(const BoundarySampler& f, const UnitCircleSet& A, const UnitCircleSet& B,
                               Complex z, Complex w, const CarlemanOptions& options = {});

struct ThreefoldOptions {
  CarlemanOptions carleman;
  int lambda_nodes = 512;
};

/// f(z, t, w) on the 3-fold cross X(A, dE, B; E, E, E): Cauchy integral in the middle
/// variable of per-node Carleman limits.
Complex reconstruct_threefold(const ThreefoldSampler& f, const UnitCircleSet& A, const UnitCircleSet& B,
                              Complex z, Complex t, Complex w, const ThreefoldOptions& options = {});

/// Suprema of |F| entering the two-constant bound: m over A x B and M over the closure
/// of W = (A x E) u (E x B), where by the maximum principle it suffices to sample
/// A x dE and dE x B. `samples` points per set, spread over the arcs by length.
struct SupBounds {
  double m = 0.0;
  double M = 0.0;
};
SupBounds sup_bounds(const std::function<Complex(Complex, Complex)>& F, const UnitCircleSet& A,
                     const UnitCircleSet& B, int samples = 512);

/// Extension of F from the Hartogs figure {|z1| < r} u {|z2| > 1 - r} to the bidisc, via
/// the Cauchy integral over |lambda| = 1 - r/2 with `nodes` trapezoid nodes. F is only
/// ever called inside the figure.
Complex hartogs_extend(const std::function<Complex(Complex, Complex)>& F, double r, Complex z1, Complex z2,
                       int nodes = 4096);

}  // namespace pluriharm
