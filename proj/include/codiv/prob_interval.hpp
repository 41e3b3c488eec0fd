#pragma once

namespace codiv {

/// Certified enclosure [lo, hi] of a probability: the exact value lies in it.
struct ProbInterval {
  double lo = 0.0;
  double hi = 0.0;
  /// Width the caller asked for (0 when the value is known exactly).
  double eps_requested = 0.0;

  double width() const noexcept { return hi - lo; }
  double midpoint() const noexcept { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool overlaps(const ProbInterval &o) const noexcept {
    return lo <= o.hi && o.lo <= hi;
  }
};

/// Enclosure of a real quantity that need not be a probability.
struct RealEnclosure {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

} // namespace codiv
