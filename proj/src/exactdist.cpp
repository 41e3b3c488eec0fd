#include "codiv/exactdist.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "codiv/codivcore.hpp"
#include "codiv/errors.hpp"

namespace codiv {

namespace {

// n^r, saturating at UINT64_MAX.
std::uint64_t tuple_count(std::uint64_t n, std::uint32_t r) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    if (n != 0 && total > UINT64_MAX / n)
      return UINT64_MAX;
    total *= n;
  }
  return total;
}

// Counts of each index over all tuples whose first coordinate lies in
// [first_lo, first_hi]. Odometer order over the remaining coordinates.
std::vector<std::uint64_t>
count_block(std::uint64_t n, std::uint32_t r, std::uint64_t first_lo,
            std::uint64_t first_hi,
            const std::vector<std::vector<std::uint64_t>> &divisors) {
  std::vector<std::uint64_t> counts(r + 1, 0);
  std::vector<std::uint64_t> tuple(r, 1);
  std::vector<std::uint64_t> scratch;
  for (std::uint64_t first = first_lo; first <= first_hi; ++first) {
    tuple[0] = first;
    std::fill(tuple.begin() + 1, tuple.end(), 1);
    while (true) {
      scratch.clear();
      for (auto v : tuple)
        scratch.insert(scratch.end(), divisors[v].begin(), divisors[v].end());
      ++counts[index_from_divisor_list(scratch)];

      std::uint32_t pos = r - 1;
      while (pos >= 1 && tuple[pos] == n) {
        tuple[pos] = 1;
        --pos;
      }
      if (pos < 1)
        break;
      ++tuple[pos];
    }
  }
  return counts;
}

} // namespace

ExactPMF exact_pmf_bruteforce(std::uint64_t n, std::uint32_t r,
                              const EnumerationOptions &opts) {
  if (n < 1 || r < 1)
    throw InvalidArgument("exact enumeration needs n >= 1 and r >= 1");
  const std::uint64_t total = tuple_count(n, r);
  if (total > opts.budget)
    throw ResourceLimit("enumerating " + std::to_string(n) + "^" +
                        std::to_string(r) +
                        " tuples exceeds the enumeration budget of " +
                        std::to_string(opts.budget));

  const PrimeTable table(std::max<std::uint64_t>(n, 2));
  std::vector<std::vector<std::uint64_t>> divisors(n + 1);
  for (std::uint64_t v = 1; v <= n; ++v)
    divisors[v] = distinct_prime_divisors(v, table);

  const unsigned workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(opts.workers, 1, n));
  std::vector<std::vector<std::uint64_t>> partial(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = 1 + n * w / workers;
      const std::uint64_t hi = n * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] {
        partial[w] = count_block(n, r, lo, hi, divisors);
      });
    }
  }

  std::vector<std::uint64_t> counts(r + 1, 0);
  for (const auto &part : partial)
    for (std::uint32_t k = 0; k <= r; ++k)
      counts[k] += part[k];

  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), n, r);
  ExactPMF pmf{n, r, {}};
  pmf.mass.reserve(r + 1);
  for (auto c : counts) {
    mpq_class m(mpz_class(static_cast<unsigned long>(c)), denom);
    m.canonicalize();
    pmf.mass.push_back(std::move(m));
  }
  return pmf;
}

mpq_class exact_prob_top(std::uint64_t n, std::uint32_t r,
                         const PrimeTable &table) {
  if (n < 1 || r < 2)
    throw InvalidArgument("exact_prob_top needs n >= 1 and r >= 2");
  if (n > 1 && n > table.limit())
    throw OutOfRange("Moebius table of size " + std::to_string(table.limit()) +
                     " is too small for n = " + std::to_string(n));
  mpz_class sum = 0;
  mpz_class term;
  for (std::uint64_t d = 1; d <= n; ++d) {
    const int mu = d == 1 ? 1 : mobius(d, table);
    if (mu == 0)
      continue;
    mpz_ui_pow_ui(term.get_mpz_t(), n / d, r);
    if (mu > 0)
      sum += term;
    else
      sum -= term;
  }
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), n, r);
  mpq_class coprime(sum, denom);
  coprime.canonicalize();
  return 1 - coprime;
}

mpq_class exact_prob_top(std::uint64_t n, std::uint32_t r) {
  return exact_prob_top(n, r, PrimeTable(std::max<std::uint64_t>(n, 2)));
}

mpq_class exact_prob_zero(std::uint64_t n, std::uint32_t r) {
  if (n < 1 || r < 1)
    throw InvalidArgument("exact_prob_zero needs n >= 1 and r >= 1");
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), n, r);
  return mpq_class(1, denom);
}

mpq_class exact_cdf(const ExactPMF &pmf, long long k) {
  if (k < 0)
    return 0;
  if (k >= static_cast<long long>(pmf.r))
    return 1;
  mpq_class acc = 0;
  for (long long j = 0; j <= k; ++j)
    acc += pmf.mass[static_cast<std::size_t>(j)];
  return acc;
}

} // namespace codiv
