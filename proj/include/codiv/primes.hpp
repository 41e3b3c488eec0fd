#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace codiv {

/// Smallest-prime-factor sieve over [0, limit].
///
/// Built once by a linear sieve, then immutable; concurrent reads are safe.
/// Factorizing any m <= limit costs O(number of prime factors).
class PrimeTable {
public:
  /// Integers above this are rejected outright (no segmented sieving).
  static constexpr std::uint64_t kMaxSupportedLimit = std::uint64_t{1} << 40;
  /// Default memory budget: number of spf entries (4 bytes each).
  static constexpr std::uint64_t kDefaultMaxEntries = std::uint64_t{1} << 31;

  /// Throws InvalidArgument for limit < 2 or limit > kMaxSupportedLimit, and
  /// ResourceLimit when the table would need more than `max_entries` slots.
  explicit PrimeTable(std::uint64_t limit,
                      std::uint64_t max_entries = kDefaultMaxEntries);

  std::uint64_t limit() const noexcept { return limit_; }

  /// All primes <= limit, increasing.
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  /// Smallest prime factor of m, 2 <= m <= limit.
  std::uint32_t smallest_prime_factor(std::uint64_t m) const;

  bool is_prime(std::uint64_t m) const;

  /// Number of primes <= x, x <= limit.
  std::size_t prime_count(std::uint64_t x) const;

private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;

  void check_range(std::uint64_t m) const;
};

PrimeTable build_prime_table(std::uint64_t limit);

/// Distinct primes dividing a, increasing; empty for a = 1.
std::vector<std::uint64_t> distinct_prime_divisors(std::uint64_t a,
                                                   const PrimeTable &table);

/// Append the distinct prime divisors of a to `out` (hot-path variant).
void append_distinct_prime_divisors(std::uint64_t a, const PrimeTable &table,
                                    std::vector<std::uint64_t> &out);

/// Moebius function of d, 1 <= d <= limit.
int mobius(std::uint64_t d, const PrimeTable &table);

/// mu(1..n) as a dense vector indexed by d (entry 0 unused).
std::vector<int> mobius_range(std::uint64_t n, const PrimeTable &table);

} // namespace codiv
