#include <doctest.h>

#include <random>

#include "pluriharm/arcset.hpp"
#include "pluriharm/errors.hpp"
#include "support/generators.hpp"

using namespace pluriharm;
using pluriharm::testing::random_arc_set;
using pluriharm::testing::uniform;

TEST_CASE("single interval") {
  const auto s = UnitCircleSet::from_intervals({{0.0, kPi}});
  REQUIRE(s.arcs().size() == 1);
  CHECK(s.measure() == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("overlapping intervals merge") {
  const auto s = UnitCircleSet::from_intervals({{0.0, kPi}, {kPi / 2, 3 * kPi / 2}});
  REQUIRE(s.arcs().size() == 1);
  CHECK(s.arcs()[0].start == 0.0);
  CHECK(s.measure() == doctest::Approx(1.5 * kPi));
}

TEST_CASE("empty input gives the empty set") {
  const auto s = UnitCircleSet::from_intervals(std::vector<std::pair<double, double>>{});
  CHECK(s.is_empty());
  CHECK(s.measure() == 0.0);
}

TEST_CASE("non-finite angles are rejected") {
  CHECK_THROWS_AS(UnitCircleSet::from_intervals({{0.0, std::nan("")}}), InputError);
  CHECK_THROWS_AS(UnitCircleSet::from_intervals({{-INFINITY, 1.0}}), InputError);
}

TEST_CASE("complement examples") {
  CHECK(UnitCircleSet::full_circle().complement().is_empty());
  CHECK(UnitCircleSet::empty().complement().is_full());
  const auto half = UnitCircleSet::from_intervals({{0.0, kPi}}).complement();
  REQUIRE(half.arcs().size() == 1);
  CHECK(half.arcs()[0].start == doctest::Approx(kPi));
  CHECK(half.measure() == doctest::Approx(kPi));
}

TEST_CASE("half-open membership with wrapping") {
  const auto s = UnitCircleSet::from_intervals({{0.0, kPi}});
  CHECK(s.contains(kPi / 2));
  CHECK_FALSE(s.contains(kPi));
  CHECK(s.contains(kTwoPi + 0.1));
  CHECK(s.contains(0.0));
  CHECK_FALSE(s.contains(-0.1));
}

TEST_CASE("interval wrapping through zero") {
  const auto s = UnitCircleSet::from_intervals({{-0.5, 0.5}});
  CHECK(s.contains(0.0));
  CHECK(s.contains(kTwoPi - 0.25));
  CHECK_FALSE(s.contains(1.0));
  CHECK(s.measure() == doctest::Approx(1.0));
}

TEST_CASE("density points are the open arcs") {
  const auto s = UnitCircleSet::from_intervals({{0.0, 1.0}, {2.0, 3.0}});
  const auto d = s.density_points();
  CHECK(d.measure() == doctest::Approx(s.measure()));
  CHECK_FALSE(d.contains(0.0));
  CHECK_FALSE(d.contains(2.0));
  CHECK(d.contains(0.5));
  CHECK(d.contains(2.5));
  CHECK(UnitCircleSet::empty().density_points().is_empty());
}

TEST_CASE("tiny gaps are merged") {
  const auto s = UnitCircleSet::from_intervals({{0.0, 1.0}, {1.0 + 1e-15, 2.0}});
  CHECK(s.arcs().size() == 1);
}

TEST_CASE("property: normalized representation is canonical") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    CAPTURE(trial);
    const auto s = random_arc_set(rng);
    double total = 0.0;
    for (std::size_t k = 0; k < s.arcs().size(); ++k) {
      const Arc& a = s.arcs()[k];
      CHECK(a.start >= 0.0);
      CHECK(a.start < kTwoPi);
      CHECK(a.length() > 0.0);
      CHECK(a.length() <= kTwoPi);
      total += a.length();
      if (k + 1 < s.arcs().size()) CHECK(a.end + kArcMergeGap < s.arcs()[k + 1].start);
    }
    CHECK(total == doctest::Approx(s.measure()).epsilon(1e-14));
    CHECK(s.measure() <= kTwoPi + 1e-12);
    CHECK(UnitCircleSet::from_intervals(s.intervals()) == s);
  }
}

TEST_CASE("property: measure of a set and its complement adds to 2 pi") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = random_arc_set(rng);
    CHECK(std::abs(s.measure() + s.complement().measure() - kTwoPi) <= 1e-12);
  }
}

TEST_CASE("property: double complement is the identity") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_arc_set(rng);
    const auto back = s.complement().complement();
    REQUIRE(back.arcs().size() == s.arcs().size());
    for (std::size_t k = 0; k < s.arcs().size(); ++k) {
      CHECK(back.arcs()[k].start == doctest::Approx(s.arcs()[k].start).epsilon(1e-12));
      CHECK(back.arcs()[k].end == doctest::Approx(s.arcs()[k].end).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: measure is rotation invariant and membership rotates") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_arc_set(rng);
    const double phi = uniform(rng, -10.0, 10.0);
    const auto r = s.rotated(phi);
    CHECK(std::abs(r.measure() - s.measure()) <= 1e-12);
    const double theta = uniform(rng, 0.0, kTwoPi);
    // Skip angles within rounding of an endpoint.
    bool near_end = false;
    for (const Arc& a : s.arcs()) {
      near_end = near_end || std::abs(wrap_angle(theta - a.start + 1.0) - 1.0) < 1e-9 ||
                 std::abs(wrap_angle(theta - a.end + 1.0) - 1.0) < 1e-9;
    }
    if (!near_end) CHECK(r.contains(theta + phi) == s.contains(theta));
  }
}

TEST_CASE("property: a point lies in exactly one of a set and its complement") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto s = random_arc_set(rng);
    const double theta = uniform(rng, -20.0, 20.0);
    CHECK(s.contains(theta) != s.complement().contains(theta));
  }
}
