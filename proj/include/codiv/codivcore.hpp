#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "codiv/primes.hpp"

namespace codiv {

/// An r-tuple of positive integers (r >= 1).
class TupleSample {
public:
  explicit TupleSample(std::vector<std::uint64_t> values);

  std::span<const std::uint64_t> values() const noexcept { return values_; }
  std::size_t r() const noexcept { return values_.size(); }
  std::uint64_t max_value() const noexcept;

private:
  std::vector<std::uint64_t> values_;
};

/// i_p for every prime dividing some coordinate, plus the index I_r.
///
/// `counts` is sorted by prime and holds only nonzero counts. A count is the
/// number of coordinates divisible by p, irrespective of the power of p.
struct DivisibilityProfile {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> counts;
  std::uint32_t index = 0;

  /// i_p for an arbitrary prime (0 when p divides no coordinate).
  std::uint32_t count(std::uint64_t p) const noexcept;
};

DivisibilityProfile divisibility_profile(const TupleSample &t,
                                         const PrimeTable &table);

std::uint32_t index_of_codivisibility(const TupleSample &t,
                                      const PrimeTable &table);

/// Index of codivisibility of raw values, reusing `scratch` across calls.
/// This is the sampling hot path; values must be >= 1 and <= table.limit().
std::uint32_t index_of_values(std::span<const std::uint64_t> values,
                              const PrimeTable &table,
                              std::vector<std::uint64_t> &scratch);

/// Index from a list of prime divisors (with one entry per coordinate each
/// prime divides): length of the longest run after sorting. Sorts in place.
std::uint32_t index_from_divisor_list(std::vector<std::uint64_t> &divisors);

/// True iff every prime divides at most k - 1 coordinates, 2 <= k <= r.
bool is_k_coprime(const TupleSample &t, std::uint32_t k,
                  const PrimeTable &table);

} // namespace codiv
