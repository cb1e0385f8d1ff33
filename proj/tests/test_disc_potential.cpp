#include <doctest.h>

#include <random>

#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"
#include "support/generators.hpp"

using namespace pluriharm;
using pluriharm::testing::point_in_disc;
using pluriharm::testing::random_arc_set;
using pluriharm::testing::uniform;

namespace {

const UnitCircleSet kHalf = UnitCircleSet::arc(0.0, kPi);

/// Composite trapezoid of the Poisson integral over the complement of B, n nodes per radian-ish.
double trapezoid_omega(Complex z, const UnitCircleSet& B, long n) {
  double sum = 0.0;
  const UnitCircleSet rest = B.complement();
  for (const Arc& arc : rest.arcs()) {
    const long m = std::max(2L, static_cast<long>(n * arc.length() / kTwoPi));
    const double step = arc.length() / m;
    for (long k = 0; k <= m; ++k) {
      const double w = (k == 0 || k == m) ? 0.5 : 1.0;
      sum += w * step * (1 - std::norm(z)) / std::norm(std::polar(1.0, arc.start + k * step) - z);
    }
  }
  return sum / kTwoPi;
}

/// Conjugate from the Fourier series of the indicator of the complement of B.
double fourier_conjugate(Complex z, const UnitCircleSet& B, int modes) {
  Complex acc = 0.0;
  Complex zn = 1.0;
  const UnitCircleSet rest = B.complement();
  for (int n = 1; n <= modes; ++n) {
    zn *= z;
    Complex c = 0.0;
    for (const Arc& arc : rest.arcs()) {
      c += (std::polar(1.0, -n * arc.start) - std::polar(1.0, -n * arc.end)) / (Complex(0.0, kTwoPi) * double(n));
    }
    acc += 2.0 * c * zn;
  }
  return acc.imag();
}

}  // namespace

TEST_CASE("center values") {
  CHECK(omega_disc(0.0, kHalf) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(omega_disc(0.0, UnitCircleSet::full_circle()) == 0.0);
  CHECK(omega_disc(0.0, UnitCircleSet::empty()) == doctest::Approx(1.0));
  CHECK(omega_conjugate_disc(0.0, UnitCircleSet::arc(0.3, 2.0)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("closed form matches a million-node trapezoid") {
  const auto B = UnitCircleSet::from_intervals({{-kPi / 2, kPi / 2}});
  CHECK(std::abs(omega_disc(0.5, B) - trapezoid_omega(0.5, B, 1'000'000)) <= 1e-8);
}

TEST_CASE("conjugate matches the Fourier oracle") {
  const Complex z(0.3, 0.2);
  CHECK(std::abs(omega_conjugate_disc(z, kHalf) - fourier_conjugate(z, kHalf, 1 << 16)) <= 1e-10);
}

TEST_CASE("conjugate vanishes on the real axis for symmetric sets") {
  const auto B = UnitCircleSet::from_intervals({{-1.0, 1.0}});
  for (double x : {-0.9, -0.3, 0.0, 0.4, 0.95}) CHECK(std::abs(omega_conjugate_disc(x, B)) <= 1e-14);
}

TEST_CASE("evaluators reject points on or outside the circle") {
  CHECK_THROWS_AS(omega_disc(1.0, kHalf), DomainError);
  CHECK_THROWS_AS(omega_disc(Complex(0.0, -1.5), kHalf), DomainError);
  CHECK_THROWS_AS(omega_conjugate_disc(1.0, kHalf), DomainError);
}

TEST_CASE("g_boundary at density points") {
  const Complex g = g_boundary(Complex(0.0, 1.0), kHalf);
  CHECK(g.real() == 0.0);
  CHECK(g_boundary(std::polar(1.0, 2.0), UnitCircleSet::full_circle()) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(g_boundary(1.0, kHalf), DomainError);              // arc endpoint
  CHECK_THROWS_AS(g_boundary(Complex(0.0, -1.0), kHalf), DomainError);  // outside B
}

TEST_CASE("g_boundary matches the Richardson-extrapolated radial limit") {
  const Complex a = std::polar(1.0, kPi / 4);
  std::vector<double> v;
  for (int k = 4; k <= 20; ++k) v.push_back(omega_conjugate_disc((1.0 - std::ldexp(1.0, -k)) * a, kHalf));
  // Two rounds of Richardson on a geometric depth sequence (error ~ c1 2^-k + c2 4^-k).
  const double r1 = 2 * v[v.size() - 1] - v[v.size() - 2];
  const double r0 = 2 * v[v.size() - 2] - v[v.size() - 3];
  const double limit = (4 * r1 - r0) / 3;
  CHECK(std::abs(g_boundary(a, kHalf).imag() - limit) <= 1e-8);
}

TEST_CASE("Stolz regions") {
  const StolzRegion r(1.0, kPi / 4);
  CHECK(stolz_contains(r, 0.0));
  CHECK_FALSE(stolz_contains(r, 1.0 - Complex(0.1, 0.2)));
  CHECK(stolz_contains(r, 1.0 - Complex(0.2, 0.1)));
  for (double s : {0.5, 1e-3, 1e-9}) {
    for (double alpha : {0.1, 0.7, 1.5}) CHECK(stolz_contains(StolzRegion(std::polar(1.0, 2.0), alpha), (1 - s) * std::polar(1.0, 2.0)));
  }
  CHECK_THROWS_AS(StolzRegion(0.5, kPi / 4), DomainError);
  CHECK_THROWS_AS(StolzRegion(1.0, kPi / 2), DomainError);
  CHECK_THROWS_AS(StolzRegion(1.0, 0.0), DomainError);
}

TEST_CASE("angular limit probe") {
  SUBCASE("constant field") {
    const auto res = angular_limit_probe([](Complex) { return Complex(2.0, -1.0); }, Complex(0.0, 1.0), kPi / 4);
    CHECK(res.limit == Complex(2.0, -1.0));
    for (double r : res.residuals) CHECK(r == 0.0);
    CHECK(res.stolz_convergent);
  }
  SUBCASE("omega tends to zero at a density point") {
    const auto res = angular_limit_probe([](Complex z) { return Complex(omega_disc(z, kHalf), 0.0); },
                                         Complex(0.0, 1.0), kPi / 4);
    CHECK(std::abs(res.limit) <= 1e-3);
    REQUIRE(res.depths.back() == 12);
    CHECK(res.residuals.back() < 1e-3);
    for (std::size_t k = 1; k < res.residuals.size(); ++k) CHECK(res.residuals[k] < res.residuals[k - 1]);
  }
}

TEST_CASE("property: partition and center formula") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto B = random_arc_set(rng);
    const Complex z = point_in_disc(rng, 0.95);
    const double w = omega_disc(z, B);
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
    CHECK(std::abs(w + omega_disc(z, B.complement()) - 1.0) <= 1e-12);
    CHECK(std::abs(omega_disc(0.0, B) - (1.0 - B.measure() / kTwoPi)) <= 1e-12);
  }
}

TEST_CASE("property: monotone in the set") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const auto B1 = random_arc_set(rng, 2);
    auto more = B1.intervals();
    const double s = uniform(rng, 0.0, kTwoPi);
    more.emplace_back(s, s + uniform(rng, 0.1, 1.0));
    const auto B2 = UnitCircleSet::from_intervals(more);
    const Complex z = point_in_disc(rng, 0.95);
    CHECK(omega_disc(z, B2) <= omega_disc(z, B1) + 1e-14);
  }
}

TEST_CASE("property: rotation equivariance") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const auto B = random_arc_set(rng);
    const Complex z = point_in_disc(rng, 0.95);
    const double phi = uniform(rng, -kPi, kPi);
    CHECK(std::abs(omega_disc(std::polar(1.0, phi) * z, B.rotated(phi)) - omega_disc(z, B)) <= 1e-12);
  }
}

TEST_CASE("property: discrete Laplacian is second order") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto B = random_arc_set(rng);
    auto laplacian = [&](double h) {
      double worst = 0.0;
      for (int j = -4; j <= 4; ++j) {
        for (int i = -4; i <= 4; ++i) {
          const Complex z(0.2 * i, 0.2 * j);
          if (std::abs(z) > 0.8) continue;
          const double l = omega_disc(z + h, B) + omega_disc(z - h, B) + omega_disc(z + Complex(0, h), B) +
                           omega_disc(z - Complex(0, h), B) - 4 * omega_disc(z, B);
          worst = std::max(worst, std::abs(l) / (h * h));
        }
      }
      return worst;
    };
    const double ratio = laplacian(1.0 / 128) / laplacian(1.0 / 256);
    CAPTURE(trial);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
  }
}

TEST_CASE("property: Cauchy-Riemann between omega and its conjugate") {
  std::mt19937_64 rng(25);
  const double h = 1e-4;
  for (int trial = 0; trial < 200; ++trial) {
    const auto B = random_arc_set(rng);
    const Complex z = point_in_disc(rng, 0.8);
    const double wx = (omega_disc(z + h, B) - omega_disc(z - h, B)) / (2 * h);
    const double wy = (omega_disc(z + Complex(0, h), B) - omega_disc(z - Complex(0, h), B)) / (2 * h);
    const double cx = (omega_conjugate_disc(z + h, B) - omega_conjugate_disc(z - h, B)) / (2 * h);
    const double cy = (omega_conjugate_disc(z + Complex(0, h), B) - omega_conjugate_disc(z - Complex(0, h), B)) / (2 * h);
    CHECK(std::abs(wx - cy) <= 1e-5);
    CHECK(std::abs(wy + cx) <= 1e-5);
  }
}
