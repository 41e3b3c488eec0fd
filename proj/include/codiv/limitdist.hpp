#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "codiv/prob_interval.hpp"

namespace codiv {

inline constexpr double kDefaultEps = 1e-9;

/// Bin(trials, success_prob) with an exact rational success probability.
class BinomialSpec {
public:
  /// Throws InvalidArgument unless trials >= 1 and 0 < success_prob <= 1.
  BinomialSpec(std::uint64_t trials, mpq_class success_prob);

  std::uint64_t trials() const noexcept { return trials_; }
  const mpq_class &success_prob() const noexcept { return q_; }

private:
  std::uint64_t trials_;
  mpq_class q_;
};

/// P(Bin <= t) exactly: 0 for t < 0, 1 for t >= trials.
mpq_class binom_cdf_exact(const BinomialSpec &spec, double t);

/// P(Bin = k) exactly.
mpq_class binom_pmf_exact(const BinomialSpec &spec, std::uint64_t k);

/// Options for products over primes of binomial CDFs.
struct PrimeProductOptions {
  /// Product runs over primes p >= first_prime.
  std::uint64_t first_prime = 2;
  /// Success probability at prime p is p^{-s}.
  unsigned s = 1;
};

/// Enclosure of prod_{p >= first_prime} P(Bin(r, p^{-s}) <= t).
ProbInterval prime_product_cdf(std::uint32_t r, double t, double eps,
                               const PrimeProductOptions &opts = {});

/// F_r(t) = prod_p P(Bin(r, 1/p) <= t), the limiting law of the index.
///
/// Exactly [0,0] for t < 1 and [1,1] for t >= r. Otherwise primes up to a
/// cutoff P (doubling from 4096) are multiplied in exactly and the remaining
/// primes are enclosed through an expansion of log P(Bin(r,x) <= t) in x
/// with prime-zeta power sums and a rigorous remainder. Throws
/// PrecisionLimit when eps is below what the double endpoints can carry.
ProbInterval limit_cdf(std::uint32_t r, double t, double eps = kDefaultEps);

/// zeta(s) for integer s >= 2 by direct summation of n^{-s} with the
/// integral tail bounds; independent of any Euler product.
RealEnclosure zeta_enclosure(unsigned s, double eps = kDefaultEps);

/// 1/zeta(r): asymptotic probability that r integers are mutually coprime.
ProbInterval mutual_coprimality_limit(std::uint32_t r,
                                      double eps = kDefaultEps);

/// T_r = prod_p ((1-1/p)^r + (r/p)(1-1/p)^{r-1}), built from that closed
/// form rather than from the binomial CDF.
ProbInterval pairwise_coprimality_limit(std::uint32_t r,
                                        double eps = kDefaultEps);

/// prod_p P(Bin(r,1/p) <= k - 1), 2 <= k <= r.
ProbInterval kwise_coprimality_limit(std::uint32_t r, std::uint32_t k,
                                     double eps = kDefaultEps);

/// Enclosures of P(W_r = k), k = 0..r, from differences of F_r.
std::vector<ProbInterval> limit_pmf(std::uint32_t r, double eps = kDefaultEps);

} // namespace codiv
