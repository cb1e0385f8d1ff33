#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pluriharm/types.hpp"

namespace pluriharm {

/// Angular interval [start, end) in radians, 0 <= start < 2pi, start < end <= start + 2pi.
/// An arc whose end exceeds 2pi wraps through angle 0.
struct Arc {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  /// Counterclockwise offset of theta (mod 2pi) from the arc start, in [0, 2pi).
  double offset(double theta) const { return wrap_angle(theta - start); }
  double midpoint() const { return start + 0.5 * length(); }

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite union of disjoint arcs on the unit circle.
///
/// Arcs are stored sorted by start, pairwise disjoint, with adjacent arcs merged.
/// Values are immutable after construction.
class UnitCircleSet {
 public:
  /// Membership convention at arc start points.
  enum class Endpoints { half_open, open };

  UnitCircleSet() = default;

  /// Normalizes an arbitrary list of (start, end) intervals. Intervals may overlap,
  /// wrap through 0 or be given with end < start (read counterclockwise from start).
  /// Throws InputError on non-finite angles.
  static UnitCircleSet from_intervals(std::span<const std::pair<double, double>> intervals);
  static UnitCircleSet from_intervals(std::initializer_list<std::pair<double, double>> intervals);
  static UnitCircleSet full_circle();
  static UnitCircleSet empty() { return {}; }
  /// Single arc running counterclockwise from start for the given length.
  static UnitCircleSet arc(double start, double length);

  const std::vector<Arc>& arcs() const { return arcs_; }
  double measure() const { return measure_; }
  bool is_empty() const { return arcs_.empty(); }
  bool is_full() const;
  Endpoints endpoints() const { return endpoints_; }

  UnitCircleSet complement() const;
  bool contains(double theta) const;
  bool contains(Complex z, double radius_tol = 1e-12) const;
  /// True when theta lies strictly inside one of the arcs.
  bool is_interior(double theta) const;
  /// Set of density points: the open interiors of the arcs.
  UnitCircleSet density_points() const;
  UnitCircleSet rotated(double phi) const;

  /// (start, end) pairs of the stored arcs.
  std::vector<std::pair<double, double>> intervals() const;

  friend bool operator==(const UnitCircleSet& a, const UnitCircleSet& b) {
    return a.arcs_ == b.arcs_ && a.endpoints_ == b.endpoints_;
  }

 private:
  std::vector<Arc> arcs_;
  double measure_ = 0.0;
  Endpoints endpoints_ = Endpoints::half_open;
};

/// Gap below which neighbouring arcs are merged.
inline constexpr double kArcMergeGap = 1e-14;

}  // namespace pluriharm
