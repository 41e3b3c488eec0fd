#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "codiv/primes.hpp"

namespace codiv {

/// Exact law of the index of r uniform draws from {1..n}: mass[k] for
/// k = 0..r, as rationals summing to exactly 1.
struct ExactPMF {
  std::uint64_t n = 0;
  std::uint32_t r = 0;
  std::vector<mpq_class> mass;
};

struct EnumerationOptions {
  /// Maximum number of tuples (n^r) the brute force will visit.
  std::uint64_t budget = 100'000'000;
  /// Worker threads; the result does not depend on this.
  unsigned workers = 1;
};

/// Enumerate all n^r tuples. Throws ResourceLimit when n^r > budget.
ExactPMF exact_pmf_bruteforce(std::uint64_t n, std::uint32_t r,
                              const EnumerationOptions &opts = {});

/// P(W = r) = 1 - n^{-r} sum_{d<=n} mu(d) floor(n/d)^r. Needs table.limit() >= n
/// (n = 1 needs no table entries).
mpq_class exact_prob_top(std::uint64_t n, std::uint32_t r,
                         const PrimeTable &table);

/// Convenience overload that sieves up to max(n, 2).
mpq_class exact_prob_top(std::uint64_t n, std::uint32_t r);

/// P(W = 0) = n^{-r}.
mpq_class exact_prob_zero(std::uint64_t n, std::uint32_t r);

/// sum_{j <= k} mass[j]; 0 for k < 0 and 1 for k >= r.
mpq_class exact_cdf(const ExactPMF &pmf, long long k);

} // namespace codiv
