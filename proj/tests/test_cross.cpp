#include <doctest.h>

#include <random>

#include "pluriharm/cross.hpp"
#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"
#include "support/generators.hpp"

using namespace pluriharm;
using pluriharm::testing::point_in_disc;
using pluriharm::testing::random_arc_set;
using pluriharm::testing::uniform;

namespace {

Cross2 disc_cross(const UnitCircleSet& A, const UnitCircleSet& B) {
  return Cross2(PlanarFactor::unit_disc(A), PlanarFactor::unit_disc(B));
}

}  // namespace

TEST_CASE("cross parts") {
  const auto half = UnitCircleSet::arc(0.0, kPi);
  const Cross2 c = disc_cross(half, half);
  const Complex in_a = std::polar(1.0, 1.0);
  const Complex off_a = std::polar(1.0, 4.0);
  CHECK(cross_part(c, in_a, 0.3) == CrossPart::first_branch);
  CHECK(cross_part(c, 0.3, in_a) == CrossPart::second_branch);
  CHECK(cross_part(c, in_a, in_a) == CrossPart::both);
  CHECK(cross_part(c, 0.2, 0.3) == CrossPart::none);
  CHECK(cross_part(c, off_a, 0.3) == CrossPart::none);
  CHECK(cross_part_name(CrossPart::both) == "both");
}

TEST_CASE("envelope membership at the bicenter") {
  CHECK(envelope_contains(disc_cross(UnitCircleSet::arc(0, 1.5 * kPi), UnitCircleSet::arc(0, 1.5 * kPi)), 0.0, 0.0));
  CHECK(envelope_contains(disc_cross(UnitCircleSet::full_circle(), UnitCircleSet::full_circle()), 0.9, -0.9));
  CHECK_FALSE(envelope_contains(disc_cross(UnitCircleSet::arc(0, 0.5 * kPi), UnitCircleSet::arc(0, 0.5 * kPi)), 0.0, 0.0));
  const Cross2 c = disc_cross(UnitCircleSet::arc(0, kPi), UnitCircleSet::arc(0, kPi));
  CHECK(c.omega_total(0.0, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(envelope_contains(c, 1.2, 0.0), DomainError);
  CHECK_THROWS_AS(envelope_contains(c, 0.0, Complex(0.0, 1.0)), DomainError);
}

TEST_CASE("grid factor agrees with the disc factor") {
  const auto A = UnitCircleSet::arc(0.0, kPi);
  const auto grid = PlanarFactor::grid(std::make_shared<const GridDomain>(GridDomain::disc(0.0, 1.0, 1.0 / 64, A)));
  const auto disc = PlanarFactor::unit_disc(A);
  for (Complex z : {Complex(0.0, 0.0), Complex(0.3, 0.4), Complex(-0.5, -0.2)}) {
    CHECK(std::abs(grid.omega(z) - disc.omega(z)) <= 1e-6);
  }
  CHECK_THROWS_AS(grid.omega(1.5), DomainError);
}

TEST_CASE("isolated target cells are regularized away") {
  const Lattice lat = Lattice::covering(0.0, 1.0, 1.0 / 16);
  std::vector<BoundaryPiece> pieces{{[](Complex z) { return std::abs(z) - 1.0; }, [](Complex) { return 1.0; }, false, "rim"}};
  const auto f = PlanarFactor::grid(lat, pieces, {lat.index(18, 18)});
  CHECK_FALSE(f.in_target(lat.point(18, 18)));
  CHECK(f.omega(lat.point(18, 18)) == doctest::Approx(1.0));
}

TEST_CASE("envelope slices") {
  const auto half = UnitCircleSet::arc(0.0, kPi);
  const Cross2 c = disc_cross(half, half);
  SUBCASE("omega zero at the fixed point keeps all of G") {
    const Cross2 full = disc_cross(UnitCircleSet::full_circle(), half);
    const auto slice = envelope_slice(full, Factor::first, 0.3, 64);
    std::size_t in_g = 0;
    for (int j = 0; j < 64; ++j) {
      for (int i = 0; i < 64; ++i) in_g += std::abs(slice.point(i, j)) < 1.0 - kDiscGuard;
    }
    CHECK(slice.count() == in_g);
  }
  SUBCASE("fixed omega near one leaves a neighbourhood of B") {
    const auto slice = envelope_slice(c, Factor::first, Complex(0.0, -0.95), 64);
    for (int j = 0; j < 64; ++j) {
      for (int i = 0; i < 64; ++i) {
        if (slice.mask[j * 64 + i]) CHECK(slice.point(i, j).imag() > 0.0);
      }
    }
  }
  SUBCASE("half circles at the center: the slice area converges") {
    const double coarse = envelope_slice(c, Factor::first, 0.0, 1024).area();
    const double fine = envelope_slice(c, Factor::first, 0.0, 2048).area();
    CHECK(std::abs(coarse - fine) / fine < 1e-2);
    CHECK(fine == doctest::Approx(kPi / 2).epsilon(1e-2));
  }
  CHECK_THROWS_AS(envelope_slice(c, Factor::second, 2.0, 8), DomainError);
}

TEST_CASE("two-constant bound") {
  CHECK(two_constant_bound(0.0, 2.0, 5.0) == doctest::Approx(2.0));
  CHECK(two_constant_bound(1.0, 2.0, 5.0) == doctest::Approx(5.0));
  CHECK(two_constant_bound(0.3, 4.0, 4.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(two_constant_bound(0.5, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(two_constant_bound(0.5, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(two_constant_bound(1.5, 1.0, 2.0), DomainError);
}

TEST_CASE("property: two-constant bound is log-linear and monotone") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const double m = uniform(rng, 0.01, 10.0);
    const double M = m * uniform(rng, 1.0, 100.0);
    const double w1 = uniform(rng, 0.0, 1.0), w2 = uniform(rng, 0.0, 1.0);
    const double b1 = two_constant_bound(w1, m, M);
    CHECK(std::log(b1) == doctest::Approx((1 - w1) * std::log(m) + w1 * std::log(M)).epsilon(1e-12));
    if (w1 < w2) CHECK(b1 <= two_constant_bound(w2, m, M));
  }
}

TEST_CASE("property: envelope monotone under enlarging the sets") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const auto A = random_arc_set(rng, 2), B = random_arc_set(rng, 2);
    auto bigger = A.intervals();
    const double s = uniform(rng, 0.0, kTwoPi);
    bigger.emplace_back(s, s + uniform(rng, 0.1, 1.0));
    const Complex z = point_in_disc(rng, 0.95), w = point_in_disc(rng, 0.95);
    if (envelope_contains(disc_cross(A, B), z, w)) {
      CHECK(envelope_contains(disc_cross(UnitCircleSet::from_intervals(bigger), B), z, w));
    }
  }
}

TEST_CASE("property: swapping the factors") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const auto A = random_arc_set(rng), B = random_arc_set(rng);
    const Complex z = point_in_disc(rng, 0.95), w = point_in_disc(rng, 0.95);
    CHECK(envelope_contains(disc_cross(A, B), z, w) == envelope_contains(disc_cross(B, A), w, z));
    CHECK(disc_cross(A, B).omega_total(z, w) == doctest::Approx(disc_cross(B, A).omega_total(w, z)));
  }
}
