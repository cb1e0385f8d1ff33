#pragma once

// Hand-rolled random inputs for the property tests. Every generator takes the engine
// by reference so a failing case is reproducible from the seed printed by the test.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "pluriharm/arcset.hpp"
#include "pluriharm/types.hpp"

namespace pluriharm::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform point in the disc |z| <= radius.
inline Complex point_in_disc(std::mt19937_64& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, kTwoPi));
}

/// Up to `max_arcs` random intervals (possibly overlapping or wrapping).
inline std::vector<std::pair<double, double>> random_intervals(std::mt19937_64& rng, int max_arcs = 4) {
  const int n = std::uniform_int_distribution<int>(1, max_arcs)(rng);
  std::vector<std::pair<double, double>> out;
  for (int k = 0; k < n; ++k) {
    const double start = uniform(rng, -kTwoPi, 2 * kTwoPi);
    out.emplace_back(start, start + uniform(rng, 0.01, 2.5));
  }
  return out;
}

inline UnitCircleSet random_arc_set(std::mt19937_64& rng, int max_arcs = 4) {
  return UnitCircleSet::from_intervals(random_intervals(rng, max_arcs));
}

}  // namespace pluriharm::testing
