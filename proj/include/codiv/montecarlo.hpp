#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "codiv/limitdist.hpp"
#include "codiv/rng.hpp"

namespace codiv {

/// Everything needed to reproduce a sampling run bit for bit.
///
/// Sample i draws from the stream CounterRng(seed, i) regardless of which
/// worker processes it, so `workers` never changes the counts.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  unsigned workers = 1;
  /// Uniform mode: coordinates uniform on {1..n}.
  std::uint64_t n = 0;
  /// Tuple length; number of trials N in max-binomial mode.
  std::uint32_t r = 0;
  /// Zeta mode: P(X = m) = m^{-s} / zeta(s).
  double s = 0.0;
  /// Max-binomial mode: 1/2 = q_1 > q_2 > ... > 0.
  std::vector<mpq_class> q_sequence;
};

/// Histogram of an integer-valued statistic over 0..counts.size()-1.
struct EmpiricalPMF {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  double mass(std::size_t k) const;
  double cdf(long long k) const;
  double mean() const;
  /// Unbiased sample variance.
  double variance() const;
  /// Standard error of mass(k) as a binomial proportion.
  double standard_error(std::size_t k) const;
};

/// W_r^(n): index of r uniform draws from {1..n}.
EmpiricalPMF sample_uniform_index(const ExperimentConfig &cfg);

/// U_r: index of r independent zeta(s) draws.
EmpiricalPMF sample_zeta_index(const ExperimentConfig &cfg);

/// V_N = max_j Bin(N, q_j) over independent binomials, N = cfg.r.
EmpiricalPMF sample_max_binomials(const ExperimentConfig &cfg);

/// Exact zeta(s) sampler: inverse CDF on 1..2^16, Pareto-envelope rejection
/// above. Draws beyond 2^63 are redrawn.
class ZetaSampler {
public:
  static constexpr std::uint64_t kHeadSize = std::uint64_t{1} << 16;

  explicit ZetaSampler(double s);

  std::uint64_t operator()(CounterRng &rng) const;

  double s() const noexcept { return s_; }
  /// Probability of the head {1..2^16}.
  double head_mass() const noexcept { return head_mass_; }

private:
  double s_;
  double head_mass_;
  std::vector<double> cumulative_; // cumulative_[i] = P(X <= i+1 | head)
};

/// Counts of zeta(s) draws divisible by a, by b and by both (cfg.samples
/// draws). Under zeta(s) the two events are independent.
struct DivisibilityTally {
  std::uint64_t total = 0;
  std::uint64_t by_a = 0;
  std::uint64_t by_b = 0;
  std::uint64_t by_both = 0;
};
DivisibilityTally zeta_divisibility(const ExperimentConfig &cfg,
                                    std::uint64_t a, std::uint64_t b);

/// max_k |empirical CDF(k) - P(Bin <= k)| over k = 0..max(trials, support).
double ks_distance_to_binomial(const EmpiricalPMF &emp,
                               const BinomialSpec &spec);

/// max_k |empirical CDF(k) - Phi((k - mean) / sd)| over the support 0..K.
double ks_distance_to_normal(const EmpiricalPMF &emp, double mean, double sd);

/// Standard normal distribution function.
double normal_cdf(double x);

/// Dvoretzky-Kiefer-Wolfowitz half-width: with probability >= confidence
/// the empirical CDF of `total` samples is within it of the true CDF.
double dkw_margin(std::uint64_t total, double confidence);

} // namespace codiv
