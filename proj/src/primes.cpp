#include "codiv/primes.hpp"

#include <algorithm>
#include <string>

#include "codiv/errors.hpp"

namespace codiv {

PrimeTable::PrimeTable(std::uint64_t limit, std::uint64_t max_entries)
    : limit_(limit) {
  if (limit < 2)
    throw InvalidArgument("prime table limit must be >= 2, got " +
                          std::to_string(limit));
  if (limit > kMaxSupportedLimit)
    throw InvalidArgument("prime table limit " + std::to_string(limit) +
                          " exceeds 2^40; segmented sieving is not supported");
  // spf entries are 32-bit, so the table itself must stay below 2^32.
  if (limit >= max_entries || limit >= (std::uint64_t{1} << 32))
    throw ResourceLimit("prime table limit " + std::to_string(limit) +
                        " exceeds the memory budget of " +
                        std::to_string(max_entries) + " entries");

  spf_.assign(limit + 1, 0);
  for (std::uint64_t m = 2; m <= limit; ++m) {
    if (spf_[m] == 0) {
      spf_[m] = static_cast<std::uint32_t>(m);
      primes_.push_back(static_cast<std::uint32_t>(m));
    }
    const std::uint32_t pm = spf_[m];
    for (std::uint32_t p : primes_) {
      if (p > pm || std::uint64_t{p} * m > limit)
        break;
      spf_[std::uint64_t{p} * m] = p;
    }
  }
}

void PrimeTable::check_range(std::uint64_t m) const {
  if (m > limit_)
    throw OutOfRange(std::to_string(m) + " exceeds prime table limit " +
                     std::to_string(limit_));
}

std::uint32_t PrimeTable::smallest_prime_factor(std::uint64_t m) const {
  check_range(m);
  if (m < 2)
    throw InvalidArgument("smallest prime factor is defined for m >= 2");
  return spf_[m];
}

bool PrimeTable::is_prime(std::uint64_t m) const {
  check_range(m);
  return m >= 2 && spf_[m] == m;
}

std::size_t PrimeTable::prime_count(std::uint64_t x) const {
  check_range(x);
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

PrimeTable build_prime_table(std::uint64_t limit) { return PrimeTable(limit); }

void append_distinct_prime_divisors(std::uint64_t a, const PrimeTable &table,
                                    std::vector<std::uint64_t> &out) {
  if (a == 0)
    throw InvalidArgument("prime divisors are defined for positive integers");
  if (a > table.limit())
    throw OutOfRange(std::to_string(a) + " exceeds prime table limit " +
                     std::to_string(table.limit()));
  while (a > 1) {
    const std::uint64_t p = table.smallest_prime_factor(a);
    out.push_back(p);
    do {
      a /= p;
    } while (a % p == 0);
  }
}

std::vector<std::uint64_t> distinct_prime_divisors(std::uint64_t a,
                                                   const PrimeTable &table) {
  std::vector<std::uint64_t> out;
  append_distinct_prime_divisors(a, table, out);
  return out;
}

int mobius(std::uint64_t d, const PrimeTable &table) {
  if (d == 0)
    throw InvalidArgument("mobius is defined for d >= 1");
  if (d > table.limit())
    throw OutOfRange(std::to_string(d) + " exceeds prime table limit " +
                     std::to_string(table.limit()));
  int mu = 1;
  while (d > 1) {
    const std::uint64_t p = table.smallest_prime_factor(d);
    d /= p;
    if (d % p == 0)
      return 0;
    mu = -mu;
  }
  return mu;
}

std::vector<int> mobius_range(std::uint64_t n, const PrimeTable &table) {
  std::vector<int> mu(n + 1, 0);
  for (std::uint64_t d = 1; d <= n; ++d)
    mu[d] = mobius(d, table);
  return mu;
}

} // namespace codiv
