#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "codiv/limitdist.hpp"
#include "codiv/prob_interval.hpp"

namespace codiv {

/// Supremum of the gap between Bin(r, 1/2) and the limiting law.
///
/// Both distribution functions are right-continuous steps with jumps only at
/// integers, so the supremum over real t is the maximum over t = 0..r.
struct GapProfile {
  std::uint32_t r = 0;
  /// max_t of the upper endpoint of the gap enclosure.
  double sup_gap = 0.0;
  std::uint32_t argmax_t = 0;
  double eps = 0.0;
};

/// Gap P(Bin(r,1/2) <= t) - F_r(t). Signed enclosure: the lower endpoint may
/// dip below 0 by at most the enclosure width.
RealEnclosure gap(std::uint32_t r, double t, double eps = kDefaultEps);

/// 1 - prod_{p>=3} P(Bin(r,1/p) <= t), an upper bound for gap(r, t).
RealEnclosure gap_upper_bound_identity(std::uint32_t r, double t,
                                       double eps = kDefaultEps);

/// The gap evaluated through the factorisation
/// P(Bin(r,1/2) <= t) * (1 - prod_{p>=3} P(Bin(r,1/p) <= t)).
RealEnclosure gap_via_identity(std::uint32_t r, double t,
                               double eps = kDefaultEps);

/// Outcome of checking one inequality: exact left side against a right
/// side rounded in the direction that makes the check conservative.
struct LemmaWitness {
  std::string check;
  std::string params;
  mpq_class lhs_exact;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// P(Bin(N,q) <= 3N/8) >= 1 - e^{-N/300}, for N >= 2 and 0 < q <= 1/3.
LemmaWitness verify_hoeffding_lemma(std::uint64_t N, const mpq_class &q);

/// P(Bin(N,q) <= 3N/8) >= 1 - q^{3N/16}, for N >= 2 and 0 < q <= 1/64.
LemmaWitness verify_bennett_lemma(std::uint64_t N, const mpq_class &q);

/// zeta(s) <= 1 + 2^{1-s}, using the upper end of the direct-series
/// enclosure of zeta(s). Integer s >= 3.
LemmaWitness verify_zeta_bound(unsigned s);

/// Estimates used for large r (r >= 16):
///  small t:  P(Bin(r,1/2) <= 3r/8) = P(Bin(r,1/2) >= 5r/8) <= e^{-r/32}
///  p >= 64:  prod_{p>=67} P(Bin(r,1/p) <= 3r/8) >= 1 - 2^{1-3r/16}
///  3 <= p < 64:  prod P(Bin(r,1/p) <= 3r/8) >= 1 - 17 e^{-r/300}
/// One witness per estimate.
std::vector<LemmaWitness> verify_large_r_estimates(std::uint32_t r,
                                                   double eps = kDefaultEps);

struct Theorem1Report {
  std::vector<GapProfile> profiles;
  /// Least-squares fit of log(sup_gap) = log(A) - B r.
  double fitted_A = 0.0;
  double fitted_B = 0.0;
  double slope = 0.0;
  std::vector<double> residuals;
  /// sup_gap at the largest r is below sup_gap at the smallest r.
  bool decays = false;
};

GapProfile gap_profile(std::uint32_t r, double eps = kDefaultEps);

/// Gap profiles for each r plus the diagnostic exponential fit.
Theorem1Report theorem1_profile(const std::vector<std::uint32_t> &r_values,
                                double eps = kDefaultEps);

} // namespace codiv
