#include "pluriharm/arcset.hpp"

#include <algorithm>
#include <cmath>

#include "pluriharm/errors.hpp"

namespace pluriharm {

namespace {

// Pieces on [0, 2pi) without wrapping; merged and sorted.
std::vector<Arc> merge_linear(std::vector<Arc> pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const Arc& a, const Arc& b) { return a.start < b.start; });
  std::vector<Arc> out;
  for (const Arc& p : pieces) {
    if (p.end - p.start <= 0) continue;
    if (!out.empty() && p.start <= out.back().end + kArcMergeGap) {
      out.back().end = std::max(out.back().end, p.end);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

UnitCircleSet UnitCircleSet::from_intervals(std::span<const std::pair<double, double>> intervals) {
  std::vector<Arc> pieces;
  for (auto [a, b] : intervals) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw InputError("arc endpoints must be finite");
    }
    double len = b - a;
    if (len < 0) len = std::fmod(len, kTwoPi) + kTwoPi;
    if (len == 0) continue;
    if (len >= kTwoPi - kArcMergeGap) return full_circle();
    const double s = wrap_angle(a);
    // Keep b itself when a is already normalized so that re-normalizing is exact.
    const double e = (s == a && b > a) ? b : s + len;
    if (e <= kTwoPi) {
      pieces.push_back({s, e});
    } else {
      pieces.push_back({s, kTwoPi});
      pieces.push_back({0.0, e - kTwoPi});
    }
  }
  auto merged = merge_linear(std::move(pieces));

  UnitCircleSet out;
  if (merged.size() == 1 && merged.front().start <= kArcMergeGap &&
      merged.front().end >= kTwoPi - kArcMergeGap) {
    return full_circle();
  }
  // Join the piece touching 2pi with the one starting at 0 into a wrapping arc.
  if (merged.size() >= 2 && merged.front().start <= kArcMergeGap &&
      merged.back().end >= kTwoPi - kArcMergeGap) {
    Arc first = merged.front();
    merged.erase(merged.begin());
    merged.back().end = kTwoPi + first.end;
  }
  out.arcs_ = std::move(merged);
  for (const Arc& arc : out.arcs_) out.measure_ += arc.length();
  return out;
}

UnitCircleSet UnitCircleSet::from_intervals(
    std::initializer_list<std::pair<double, double>> intervals) {
  return from_intervals(std::span<const std::pair<double, double>>(intervals.begin(), intervals.size()));
}

UnitCircleSet UnitCircleSet::full_circle() {
  UnitCircleSet out;
  out.arcs_.push_back({0.0, kTwoPi});
  out.measure_ = kTwoPi;
  return out;
}

UnitCircleSet UnitCircleSet::arc(double start, double length) {
  return from_intervals({{start, start + length}});
}

bool UnitCircleSet::is_full() const {
  return arcs_.size() == 1 && arcs_.front().length() >= kTwoPi - kArcMergeGap;
}

UnitCircleSet UnitCircleSet::complement() const {
  if (arcs_.empty()) return full_circle();
  if (is_full()) return {};
  std::vector<std::pair<double, double>> gaps;
  gaps.reserve(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& cur = arcs_[i];
    const Arc& next = arcs_[(i + 1) % arcs_.size()];
    double gap_start = cur.end;
    double gap_end = next.start;
    if (gap_end <= gap_start) gap_end += kTwoPi;
    gaps.emplace_back(gap_start, gap_end);
  }
  UnitCircleSet out = from_intervals(gaps);
  // Exact measure identity regardless of the rounding inside the gap endpoints.
  out.measure_ = kTwoPi - measure_;
  return out;
}

bool UnitCircleSet::contains(double theta) const {
  if (endpoints_ == Endpoints::open) return is_interior(theta);
  for (const Arc& arc : arcs_) {
    if (arc.length() >= kTwoPi) return true;
    if (arc.offset(theta) < arc.length()) return true;
  }
  return false;
}

bool UnitCircleSet::contains(Complex z, double radius_tol) const {
  if (std::abs(std::abs(z) - 1.0) > radius_tol) return false;
  return contains(std::arg(z));
}

bool UnitCircleSet::is_interior(double theta) const {
  for (const Arc& arc : arcs_) {
    if (arc.length() >= kTwoPi) return true;
    const double off = arc.offset(theta);
    if (off > 0 && off < arc.length()) return true;
  }
  return false;
}

UnitCircleSet UnitCircleSet::density_points() const {
  UnitCircleSet out = *this;
  out.endpoints_ = Endpoints::open;
  return out;
}

UnitCircleSet UnitCircleSet::rotated(double phi) const {
  std::vector<std::pair<double, double>> moved;
  moved.reserve(arcs_.size());
  for (const Arc& arc : arcs_) moved.emplace_back(arc.start + phi, arc.end + phi);
  UnitCircleSet out = from_intervals(moved);
  out.endpoints_ = endpoints_;
  return out;
}

std::vector<std::pair<double, double>> UnitCircleSet::intervals() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(arcs_.size());
  for (const Arc& arc : arcs_) out.emplace_back(arc.start, arc.end);
  return out;
}

}  // namespace pluriharm
