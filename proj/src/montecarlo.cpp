#include "codiv/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "codiv/codivcore.hpp"
#include "codiv/errors.hpp"
#include "codiv/primes.hpp"

namespace codiv {

double EmpiricalPMF::mass(std::size_t k) const {
  if (total == 0 || k >= counts.size())
    return 0.0;
  return static_cast<double>(counts[k]) / static_cast<double>(total);
}

double EmpiricalPMF::cdf(long long k) const {
  if (k < 0 || total == 0)
    return 0.0;
  const auto last = std::min<std::size_t>(static_cast<std::size_t>(k) + 1,
                                          counts.size());
  const std::uint64_t below =
      std::accumulate(counts.begin(), counts.begin() + last, std::uint64_t{0});
  return static_cast<double>(below) / static_cast<double>(total);
}

double EmpiricalPMF::mean() const {
  if (total == 0)
    return 0.0;
  long double acc = 0;
  for (std::size_t k = 0; k < counts.size(); ++k)
    acc += static_cast<long double>(k) * counts[k];
  return static_cast<double>(acc / total);
}

double EmpiricalPMF::variance() const {
  if (total < 2)
    return 0.0;
  const long double m = mean();
  long double acc = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const long double d = k - m;
    acc += d * d * counts[k];
  }
  return static_cast<double>(acc / (total - 1));
}

double EmpiricalPMF::standard_error(std::size_t k) const {
  const double p = mass(k);
  return std::sqrt(p * (1 - p) / static_cast<double>(total));
}

namespace {

void check_common(const ExperimentConfig &cfg) {
  if (cfg.samples == 0)
    throw ConfigError("experiment needs at least one sample");
  if (cfg.workers == 0)
    throw ConfigError("experiment needs at least one worker");
}

// Runs draw(rng, state) for every sample index, each with its own stream,
// and histograms the results into `bins` bins.
template <class State, class Draw>
EmpiricalPMF run_samples(const ExperimentConfig &cfg, std::size_t bins,
                         Draw draw) {
  const std::uint64_t n = cfg.samples;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, n));
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(bins, 0));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t lo = n / workers * w + std::min<std::uint64_t>(w, n % workers);
        const std::uint64_t hi = lo + n / workers + (w < n % workers ? 1 : 0);
        State state;
        auto &local = partial[w];
        for (std::uint64_t i = lo; i < hi; ++i) {
          CounterRng rng(cfg.seed, i);
          ++local[draw(rng, state)];
        }
      });
    }
  }
  EmpiricalPMF out{std::vector<std::uint64_t>(bins, 0), n};
  for (const auto &part : partial)
    for (std::size_t k = 0; k < bins; ++k)
      out.counts[k] += part[k];
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1)
      r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all 64-bit n with these bases.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0)
      return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x, n);
      composite = x != n - 1;
    }
    if (composite)
      return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n odd composite.
std::uint64_t find_factor(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1, q = 1, ys = 2;
    std::uint64_t len = 1;
    while (d == 1) {
      x = y;
      for (std::uint64_t i = 0; i < len; ++i)
        y = f(y);
      for (std::uint64_t k = 0; k < len && d == 1; k += 128) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(128, len - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      len *= 2;
    }
    if (d == n) {
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n)
      return d;
  }
}

// Distinct primes of a value above the sieve table.
void append_large_divisors(std::uint64_t v, const PrimeTable &table,
                           std::vector<std::uint64_t> &out) {
  std::vector<std::uint64_t> found;
  for (std::uint32_t p : table.primes()) {
    if (p > 1000)
      break;
    if (v % p == 0) {
      found.push_back(p);
      while (v % p == 0)
        v /= p;
    }
  }
  std::vector<std::uint64_t> stack;
  if (v > 1)
    stack.push_back(v);
  while (!stack.empty()) {
    const std::uint64_t m = stack.back();
    stack.pop_back();
    if (m <= table.limit()) {
      append_distinct_prime_divisors(m, table, found);
    } else if (is_prime_u64(m)) {
      found.push_back(m);
    } else {
      const std::uint64_t d = find_factor(m);
      stack.push_back(d);
      stack.push_back(m / d);
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  out.insert(out.end(), found.begin(), found.end());
}

void append_divisors_any(std::uint64_t v, const PrimeTable &table,
                         std::vector<std::uint64_t> &out) {
  if (v <= table.limit())
    append_distinct_prime_divisors(v, table, out);
  else
    append_large_divisors(v, table, out);
}

struct Scratch {
  std::vector<std::uint64_t> values;
  std::vector<std::uint64_t> divisors;
};

const PrimeTable &zeta_table() {
  static const PrimeTable table(std::uint64_t{1} << 22);
  return table;
}

} // namespace

EmpiricalPMF sample_uniform_index(const ExperimentConfig &cfg) {
  check_common(cfg);
  if (cfg.n < 1)
    throw ConfigError("uniform mode needs n >= 1");
  if (cfg.r < 2)
    throw ConfigError("uniform mode needs r >= 2");
  std::optional<PrimeTable> table;
  try {
    table.emplace(std::max<std::uint64_t>(cfg.n, 2));
  } catch (const std::exception &e) {
    throw ConfigError(std::string("no prime table for n: ") + e.what());
  }
  const PrimeTable &tab = *table;
  return run_samples<Scratch>(
      cfg, cfg.r + 1, [&](CounterRng &rng, Scratch &sc) {
        sc.values.resize(cfg.r);
        for (auto &v : sc.values)
          v = rng.uniform_int(1, cfg.n);
        return index_of_values(sc.values, tab, sc.divisors);
      });
}

ZetaSampler::ZetaSampler(double s) : s_(s) {
  if (!(s > 1))
    throw InvalidArgument("zeta distribution needs s > 1");
  cumulative_.resize(kHeadSize);
  long double acc = 0;
  for (std::uint64_t n = 1; n <= kHeadSize; ++n) {
    acc += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    cumulative_[n - 1] = static_cast<double>(acc);
  }
  const long double head = acc;
  for (auto &c : cumulative_)
    c = static_cast<double>(c / head);
  cumulative_.back() = 1.0;
  // Euler-Maclaurin for sum_{n > M} n^{-s}.
  const long double M = kHeadSize, ls = s;
  const long double tail = std::pow(M, 1 - ls) / (ls - 1) - std::pow(M, -ls) / 2 +
                           ls * std::pow(M, -ls - 1) / 12 -
                           ls * (ls + 1) * (ls + 2) * std::pow(M, -ls - 3) / 720;
  head_mass_ = static_cast<double>(head / (head + tail));
}

std::uint64_t ZetaSampler::operator()(CounterRng &rng) const {
  if (rng.uniform01() < head_mass_) {
    const double v = rng.uniform01();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), v);
    return static_cast<std::uint64_t>(
               std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                        cumulative_.size() - 1)) +
           1;
  }
  // Pareto envelope on [M, inf): n = ceil(x) has mass int_{n-1}^n x^{-s}.
  const double M = static_cast<double>(kHeadSize);
  while (true) {
    const double x = M * std::pow(rng.uniform_open0(), -1.0 / (s_ - 1.0));
    if (!(x < 0x1.0p63))
      continue;
    const double n = std::ceil(x);
    if (n <= M)
      continue;
    // n^{-s} (s-1) / ((n-1)^{1-s} - n^{1-s})
    const double cell = std::expm1((1.0 - s_) * std::log1p(-1.0 / n));
    const double accept = (s_ - 1.0) / (n * cell);
    if (rng.uniform01() < accept)
      return static_cast<std::uint64_t>(n);
  }
}

EmpiricalPMF sample_zeta_index(const ExperimentConfig &cfg) {
  check_common(cfg);
  if (cfg.r < 2)
    throw ConfigError("zeta mode needs r >= 2");
  const ZetaSampler sampler(cfg.s);
  const PrimeTable &tab = zeta_table();
  return run_samples<Scratch>(
      cfg, cfg.r + 1, [&](CounterRng &rng, Scratch &sc) {
        sc.divisors.clear();
        for (std::uint32_t j = 0; j < cfg.r; ++j)
          append_divisors_any(sampler(rng), tab, sc.divisors);
        return index_from_divisor_list(sc.divisors);
      });
}

DivisibilityTally zeta_divisibility(const ExperimentConfig &cfg,
                                    std::uint64_t a, std::uint64_t b) {
  check_common(cfg);
  if (a < 2 || b < 2)
    throw InvalidArgument("divisibility tally needs moduli >= 2");
  const ZetaSampler sampler(cfg.s);
  // Encode the two indicators as a 2-bit bin.
  const EmpiricalPMF joint = run_samples<int>(
      cfg, 4, [&](CounterRng &rng, int &) {
        const std::uint64_t x = sampler(rng);
        return static_cast<std::size_t>((x % a == 0 ? 1 : 0) |
                                        (x % b == 0 ? 2 : 0));
      });
  return {joint.total, joint.counts[1] + joint.counts[3],
          joint.counts[2] + joint.counts[3], joint.counts[3]};
}

EmpiricalPMF sample_max_binomials(const ExperimentConfig &cfg) {
  check_common(cfg);
  if (cfg.r < 1)
    throw ConfigError("max-binomial mode needs N >= 1 trials");
  const auto &qs = cfg.q_sequence;
  if (qs.empty() || qs.front() != mpq_class(1, 2))
    throw InvalidArgument("q_sequence must start at 1/2");
  for (std::size_t j = 1; j < qs.size(); ++j)
    if (!(qs[j] < qs[j - 1]) || qs[j] <= 0)
      throw InvalidArgument("q_sequence must be strictly decreasing and positive");

  const std::uint32_t N = cfg.r;
  std::vector<std::vector<double>> cdfs;
  for (const auto &q : qs) {
    const double qd = q.get_d();
    std::vector<double> cdf(N + 1);
    long double acc = 0;
    for (std::uint32_t k = 0; k <= N; ++k) {
      const double logp = std::lgamma(N + 1.0) - std::lgamma(k + 1.0) -
                          std::lgamma(N - k + 1.0) + k * std::log(qd) +
                          (N - k) * std::log1p(-qd);
      acc += std::exp(static_cast<long double>(logp));
      cdf[k] = static_cast<double>(acc);
    }
    for (auto &c : cdf)
      c = static_cast<double>(c / acc);
    cdf.back() = 1.0;
    cdfs.push_back(std::move(cdf));
  }
  return run_samples<int>(cfg, N + 1, [&](CounterRng &rng, int &) {
    std::size_t best = 0;
    for (const auto &cdf : cdfs) {
      const double u = rng.uniform01();
      const auto k = static_cast<std::size_t>(
          std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      best = std::max(best, std::min<std::size_t>(k, N));
    }
    return best;
  });
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance_to_binomial(const EmpiricalPMF &emp,
                               const BinomialSpec &spec) {
  if (emp.total < 1)
    throw InvalidArgument("empirical PMF is empty");
  const std::uint64_t last = std::max<std::uint64_t>(
      spec.trials(), emp.counts.empty() ? 0 : emp.counts.size() - 1);
  mpq_class exact = 0;
  double dist = 0.0;
  for (std::uint64_t k = 0; k <= last; ++k) {
    exact += binom_pmf_exact(spec, k);
    dist = std::max(dist, std::abs(emp.cdf(static_cast<long long>(k)) -
                                   exact.get_d()));
  }
  return dist;
}

double ks_distance_to_normal(const EmpiricalPMF &emp, double mean, double sd) {
  if (!(sd > 0))
    throw InvalidArgument("normal comparison needs sd > 0");
  if (emp.total < 1)
    throw InvalidArgument("empirical PMF is empty");
  double dist = 0.0;
  for (std::size_t k = 0; k < emp.counts.size(); ++k) {
    const double z = (static_cast<double>(k) - mean) / sd;
    dist = std::max(dist, std::abs(emp.cdf(static_cast<long long>(k)) -
                                   normal_cdf(z)));
  }
  return dist;
}

double dkw_margin(std::uint64_t total, double confidence) {
  if (total == 0 || !(confidence > 0 && confidence < 1))
    throw InvalidArgument("DKW margin needs total >= 1 and 0 < confidence < 1");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) /
                   (2.0 * static_cast<double>(total)));
}

} // namespace codiv
