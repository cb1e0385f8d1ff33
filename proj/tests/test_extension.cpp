#include <doctest.h>

#include <random>

#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"
#include "pluriharm/extension.hpp"
#include "support/generators.hpp"

using namespace pluriharm;
using pluriharm::testing::point_in_disc;

namespace {

const UnitCircleSet kThreeQuarter = UnitCircleSet::arc(0.0, 1.5 * kPi);

CarlemanOptions quick() {
  CarlemanOptions o;
  o.max_refinements = 1;
  return o;
}

}  // namespace

TEST_CASE("test function names round-trip") {
  for (TestFunction f : all_test_functions()) CHECK(parse_test_function(test_function_name(f)) == f);
  CHECK(parse_test_function("const1") == TestFunction::one);
  CHECK(parse_test_function("exp(z+w)") == TestFunction::exp_sum);
  CHECK_THROWS_AS(parse_test_function("sin(z)"), InputError);
  CHECK(evaluate(TestFunction::cauchy, Complex(0.0), Complex(0.0)) == Complex(0.25, 0.0));
}

TEST_CASE("build_g") {
  const auto g = build_g(kThreeQuarter, kThreeQuarter);
  const Complex g0 = g(0.0, 0.0);
  CHECK(g0.real() == doctest::Approx(0.5));
  CHECK(std::abs(g0.imag()) <= 1e-12);
  const Complex z(0.2, -0.3), w(-0.1, 0.4);
  CHECK(g(z, w).real() == doctest::Approx(omega_disc(z, kThreeQuarter) + omega_disc(w, kThreeQuarter)));
  CHECK_THROWS_AS(build_g(UnitCircleSet::empty(), kThreeQuarter), DomainError);
}

TEST_CASE("K_N of the zero function vanishes") {
  const BoundarySampler zero{[](const WComplex&, const WComplex&) { return WComplex{}; }, kWideEpsilon, "0"};
  CHECK(std::abs(carleman_K_N(zero, kThreeQuarter, kThreeQuarter, Complex(0.1, 0.1), 0.0, 8)) == 0.0);
}

TEST_CASE("Carleman limits of closed-form functions") {
  struct Case {
    TestFunction f;
    Complex z, w;
  };
  const Case cases[] = {{TestFunction::one, 0.0, 0.0},
                        {TestFunction::product, 0.2, -0.1},
                        {TestFunction::exp_product, 0.3, 0.2},
                        {TestFunction::cauchy, 0.0, 0.0}};
  for (const Case& c : cases) {
    CAPTURE(test_function_name(c.f));
    const ExtensionResult r = carleman_limit(sampler_for(c.f), kThreeQuarter, kThreeQuarter, c.z, c.w, quick());
    const Complex exact = evaluate(c.f, c.z, c.w);
    CHECK(std::abs(r.value - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
    CHECK(r.cauchy_gap <= 1e-6);
    CHECK(r.omega_total == doctest::Approx(omega_disc(c.z, kThreeQuarter) + omega_disc(c.w, kThreeQuarter)));
  }
}

TEST_CASE("Carleman evaluator rejects points outside the admissible region") {
  CHECK_THROWS_AS(CarlemanEvaluator(kThreeQuarter, kThreeQuarter, 1.1, 0.0), DomainError);
  // omega(-0.9 i) is close to one for both legs.
  CHECK_THROWS_AS(CarlemanEvaluator(kThreeQuarter, kThreeQuarter, Complex(0.3, -0.9), Complex(0.3, -0.9)),
                  DomainError);
}

TEST_CASE("property: K_N is linear in f and symmetric under swapping the legs") {
  std::mt19937_64 rng(51);
  const auto A = UnitCircleSet::arc(0.3, 4.0);
  const auto B = UnitCircleSet::arc(-1.0, 4.5);
  const BoundarySampler f = sampler_for(TestFunction::exp_product);
  const BoundarySampler g = sampler_for(TestFunction::exp_sum);
  for (int trial = 0; trial < 5; ++trial) {
    const Complex z = point_in_disc(rng, 0.3), w = point_in_disc(rng, 0.3);
    const Complex alpha = point_in_disc(rng, 2.0), beta = point_in_disc(rng, 2.0);
    const WComplex wa(alpha), wb(beta);
    const BoundarySampler combo{[&](const WComplex& a, const WComplex& b) {
                                  return wa * f.evaluate(a, b) + wb * g.evaluate(a, b);
                                },
                                kWideEpsilon, "combo"};
    for (int N : {1, 4, 16}) {
      const Complex lhs = carleman_K_N(combo, A, B, z, w, N);
      const Complex rhs = alpha * carleman_K_N(f, A, B, z, w, N) + beta * carleman_K_N(g, A, B, z, w, N);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
      const BoundarySampler swapped{[&](const WComplex& a, const WComplex& b) { return f.evaluate(b, a); },
                                    kWideEpsilon, "swapped"};
      const Complex direct = carleman_K_N(f, A, B, z, w, N);
      const Complex transposed = carleman_K_N(swapped, B, A, w, z, N);
      CHECK(std::abs(direct - transposed) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("3-fold reconstruction of a separable product") {
  ThreefoldSampler f{[](const WComplex&, const WComplex& l, const WComplex&) { return l; }, kWideEpsilon, "lambda"};
  ThreefoldOptions opt;
  opt.carleman = quick();
  opt.lambda_nodes = 64;
  const Complex t(0.3, -0.2);
  CHECK(std::abs(reconstruct_threefold(f, kThreeQuarter, kThreeQuarter, 0.1, t, -0.1, opt) - t) <= 1e-6);
}

TEST_CASE("sup bounds") {
  const auto product = [](Complex z, Complex w) { return z * w; };
  const SupBounds s = sup_bounds(product, UnitCircleSet::arc(0.0, 1.0), UnitCircleSet::arc(2.0, 1.0));
  CHECK(s.m == doctest::Approx(1.0));
  CHECK(s.M == doctest::Approx(1.0));
  const auto shifted = [](Complex z, Complex w) { return std::exp(z + w); };
  const SupBounds e = sup_bounds(shifted, UnitCircleSet::arc(kPi / 2, kPi), UnitCircleSet::arc(kPi / 2, kPi));
  CHECK(e.m == doctest::Approx(1.0).epsilon(1e-4));  // real parts on the left half circle are <= 0
  CHECK(e.M == doctest::Approx(std::exp(1.0)).epsilon(1e-4));
}

TEST_CASE("Hartogs extension") {
  const auto F = [](Complex z1, Complex z2) { return std::exp(z1 * z2) / (2.0 - z1); };
  for (Complex z1 : {Complex(0.5, 0.3), Complex(-0.9, 0.0)}) {
    for (Complex z2 : {Complex(0.0, 0.0), Complex(0.2, -0.6)}) {
      CHECK(std::abs(hartogs_extend(F, 0.25, z1, z2) - F(z1, z2)) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(hartogs_extend(F, 0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(hartogs_extend(F, 0.25, 1.0, 0.0), DomainError);
}

TEST_CASE("property: Hartogs error drops tenfold when the nodes double") {
  std::mt19937_64 rng(52);
  const auto F = [](Complex z1, Complex z2) { return 1.0 / ((2.0 - z1) * (2.0 - z2)); };
  for (int trial = 0; trial < 20; ++trial) {
    const Complex z1 = point_in_disc(rng, 0.99), z2 = point_in_disc(rng, 0.8);
    for (int nodes : {64, 512}) {
      const double coarse = std::abs(hartogs_extend(F, 0.25, z1, z2, nodes) - F(z1, z2));
      const double fine = std::abs(hartogs_extend(F, 0.25, z1, z2, 2 * nodes) - F(z1, z2));
      CHECK(fine <= std::max(0.1 * coarse, 1e-13));
    }
  }
}
