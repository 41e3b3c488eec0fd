#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "big_interval.hpp"
#include "codiv/prob_interval.hpp"

namespace codiv::detail {

/// zeta(s) by direct summation with integral tail bounds.
BigInterval zeta_series(unsigned s, double eps);

inline double down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

/// Enclosure of a - b, rounded outward and clamped to [0, 1].
inline ProbInterval difference(const ProbInterval &a, const ProbInterval &b,
                               double eps) {
  double lo = a.lo == b.hi ? 0.0 : down(a.lo - b.hi);
  double hi = a.hi == b.lo ? 0.0 : up(a.hi - b.lo);
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, lo, 1.0);
  return {lo, hi, eps};
}

} // namespace codiv::detail
