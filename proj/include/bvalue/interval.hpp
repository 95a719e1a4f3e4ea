#pragma once

namespace bvalue {

// Closed interval [lo, hi]. All containment checks use closed endpoints.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double center() const { return 0.5 * (lo + hi); }
  double half_width() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }
  bool disjoint_from(const Interval& other) const {
    return hi < other.lo || other.hi < lo;
  }
};

}  // namespace bvalue
