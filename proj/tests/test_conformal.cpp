#include <doctest.h>

#include <random>

#include "pluriharm/conformal.hpp"
#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"
#include "support/generators.hpp"

using namespace pluriharm;
using pluriharm::testing::point_in_disc;

namespace {

constexpr double kH = 1.0 / 64;

}  // namespace

TEST_CASE("traced boundary of a disc") {
  const GridDomain disc = GridDomain::disc(Complex(0.2, 0.1), 0.5, kH, UnitCircleSet::empty());
  const auto poly = trace_boundary(disc);
  CHECK(poly.size() > 50);
  double area = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Complex a = poly[k], b = poly[(k + 1) % poly.size()];
    area += 0.5 * (a.real() * b.imag() - a.imag() * b.real());
    // Crossings where a lattice line touches the circle are only located to sqrt(eps).
    CHECK(std::abs(std::abs(a - Complex(0.2, 0.1)) - 0.5) <= 1e-7);
  }
  CHECK(area == doctest::Approx(kPi * 0.25).epsilon(1e-2));
  const auto even = resample_polyline(poly, 100);
  CHECK(even.size() == 100);
}

TEST_CASE("Riemann map of a disc is affine") {
  const Complex c(0.2, 0.1);
  const auto map = riemann_map(GridDomain::disc(c, 0.5, kH, UnitCircleSet::empty()), c);
  std::mt19937_64 rng(61);
  for (int k = 0; k < 50; ++k) {
    const Complex z = c + point_in_disc(rng, 0.4);
    CHECK(std::abs(map(z) - (z - c) / 0.5) <= 1e-4);
    CHECK(std::abs(map.inverse(map(z)) - z) <= 1e-9);
  }
}

TEST_CASE("Riemann map of the unit disc off center is a Moebius map") {
  const Complex a(0.3, -0.2);
  const auto map = riemann_map(GridDomain::disc(0.0, 1.0, kH, UnitCircleSet::empty()), a);
  std::mt19937_64 rng(62);
  for (int k = 0; k < 50; ++k) {
    const Complex z = point_in_disc(rng, 0.8);
    const Complex exact = (z - a) / (1.0 - std::conj(a) * z);
    CHECK(std::abs(map(z) - exact) <= 1e-4);
  }
}

TEST_CASE("boundary correspondence lies on the unit circle in order") {
  const auto map = riemann_map(GridDomain::half_disc(0.0, 1.0, kH), Complex(0.0, 0.5), {512});
  const auto images = map.boundary_correspondence();
  REQUIRE(images.size() == map.boundary().size());
  double turn = 0.0;
  for (std::size_t k = 0; k < images.size(); ++k) {
    CHECK(std::abs(std::abs(images[k]) - 1.0) <= 1e-9);
    turn += std::arg(images[(k + 1) % images.size()] / images[k]);
  }
  CHECK(turn == doctest::Approx(kTwoPi).epsilon(1e-9));
}

TEST_CASE("topology and placement errors") {
  CHECK_THROWS_AS(riemann_map(GridDomain::annulus(0.0, 0.25, 1.0, kH), 0.6), TopologyError);
  CHECK_THROWS_AS(riemann_map(GridDomain::disc(0.0, 0.5, kH, UnitCircleSet::empty()), 0.8), DomainError);
}

TEST_CASE("end-point limits") {
  const auto map = riemann_map(GridDomain::disc(0.0, 1.0, kH, UnitCircleSet::empty()), 0.0);
  const Complex zeta = std::polar(1.0, 0.7);
  CHECK(std::abs(endpoint_limit(map, zeta, kPi / 4) - zeta) <= 1e-3);
  CHECK_THROWS_AS(endpoint_limit(map, zeta, 2.0), InputError);
}

TEST_CASE("end-points of level sets") {
  SUBCASE("delta zero keeps the whole circle") {
    const GridDomain omega = level_set_component(UnitCircleSet::arc(0.0, kPi), 0.0, 0.0, kH);
    const auto points = end_points(omega, UnitCircleSet::full_circle(), 64);
    CHECK(points.size() >= 60);
  }
  SUBCASE("points near the target arc are end-points, far ones are not") {
    const GridDomain omega = level_set_component(UnitCircleSet::arc(0.0, kPi), 0.5, Complex(0.0, 0.5), kH);
    CHECK(is_end_point(omega, Complex(0.0, 1.0)));
    CHECK_FALSE(is_end_point(omega, Complex(0.0, -1.0)));
  }
  SUBCASE("arc hull joins close points and drops isolated ones") {
    const std::vector<Complex> pts{std::polar(1.0, 0.0), std::polar(1.0, 0.01), std::polar(1.0, 3.0)};
    const UnitCircleSet hull = arc_hull(pts, 0.05);
    CHECK(hull.arcs().size() == 1);
    CHECK(hull.measure() == doctest::Approx(0.01));
  }
}

TEST_CASE("transfer identity with delta zero") {
  TransferOptions opt;
  opt.h = 1.0 / 64;
  opt.conformal.vertices = 512;
  const std::vector<Complex> samples{Complex(0.0, 0.3), Complex(0.2, -0.4), Complex(-0.5, 0.1)};
  const auto rep = verify_transfer_identity(UnitCircleSet::arc(0.0, kPi), 0.0, samples, opt);
  CHECK(rep.deviations.size() == samples.size());
  CHECK(rep.max_deviation <= 5e-2);
}
