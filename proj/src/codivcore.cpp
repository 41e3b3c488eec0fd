#include "codiv/codivcore.hpp"

#include <algorithm>
#include <string>

#include "codiv/errors.hpp"

namespace codiv {

TupleSample::TupleSample(std::vector<std::uint64_t> values)
    : values_(std::move(values)) {
  if (values_.empty())
    throw InvalidArgument("a tuple needs at least one value");
  for (auto v : values_)
    if (v == 0)
      throw InvalidArgument("tuple values must be positive integers");
}

std::uint64_t TupleSample::max_value() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

std::uint32_t DivisibilityProfile::count(std::uint64_t p) const noexcept {
  auto it = std::lower_bound(
      counts.begin(), counts.end(), p,
      [](const auto &entry, std::uint64_t key) { return entry.first < key; });
  return (it != counts.end() && it->first == p) ? it->second : 0;
}

namespace {

void check_fits(const TupleSample &t, const PrimeTable &table) {
  if (t.max_value() > table.limit())
    throw OutOfRange("tuple value " + std::to_string(t.max_value()) +
                     " exceeds prime table limit " +
                     std::to_string(table.limit()));
}

} // namespace

DivisibilityProfile divisibility_profile(const TupleSample &t,
                                         const PrimeTable &table) {
  check_fits(t, table);
  std::vector<std::uint64_t> divisors;
  for (auto v : t.values())
    append_distinct_prime_divisors(v, table, divisors);
  std::sort(divisors.begin(), divisors.end());

  DivisibilityProfile profile;
  for (std::size_t i = 0; i < divisors.size();) {
    std::size_t j = i;
    while (j < divisors.size() && divisors[j] == divisors[i])
      ++j;
    const auto c = static_cast<std::uint32_t>(j - i);
    profile.counts.emplace_back(divisors[i], c);
    profile.index = std::max(profile.index, c);
    i = j;
  }
  return profile;
}

std::uint32_t index_from_divisor_list(std::vector<std::uint64_t> &divisors) {
  std::sort(divisors.begin(), divisors.end());
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < divisors.size();) {
    std::size_t j = i + 1;
    while (j < divisors.size() && divisors[j] == divisors[i])
      ++j;
    best = std::max(best, static_cast<std::uint32_t>(j - i));
    i = j;
  }
  return best;
}

std::uint32_t index_of_values(std::span<const std::uint64_t> values,
                              const PrimeTable &table,
                              std::vector<std::uint64_t> &scratch) {
  scratch.clear();
  for (auto v : values)
    append_distinct_prime_divisors(v, table, scratch);
  return index_from_divisor_list(scratch);
}

std::uint32_t index_of_codivisibility(const TupleSample &t,
                                      const PrimeTable &table) {
  check_fits(t, table);
  std::vector<std::uint64_t> scratch;
  return index_of_values(t.values(), table, scratch);
}

bool is_k_coprime(const TupleSample &t, std::uint32_t k,
                  const PrimeTable &table) {
  if (k < 2 || k > t.r())
    throw InvalidArgument("k-wise coprimality needs 2 <= k <= r, got k=" +
                          std::to_string(k) + ", r=" + std::to_string(t.r()));
  return index_of_codivisibility(t, table) <= k - 1;
}

} // namespace codiv
