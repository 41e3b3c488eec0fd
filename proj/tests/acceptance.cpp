// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and seeds are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "codiv/bounds.hpp"
#include "codiv/exactdist.hpp"
#include "codiv/limitdist.hpp"
#include "codiv/montecarlo.hpp"
#include "codiv/serialize.hpp"

using namespace codiv;

namespace {

constexpr double kEps = 1e-9;
constexpr std::uint64_t kSeed = 20240601;

// Frozen regression value of sup_t gap(64, t) (upper enclosure endpoint at
// eps = 1e-9) and its allowed drift.
constexpr double kSupGap64 = 7.338801258e-3;
constexpr double kSupGap64Tol = 1e-8;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s; // 0 = no limit
  std::function<Outcome()> body;
};

std::string fmt(const char *f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char *f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double within_sigma(double observed, double expected, double se) {
  return std::abs(observed - expected) / se;
}

Outcome exact_oracle() {
  std::size_t checked = 0;
  auto run = [&](std::uint64_t n, std::uint32_t r) {
    const ExactPMF pmf = exact_pmf_bruteforce(n, r);
    ++checked;
    return pmf.mass[0] == exact_prob_zero(n, r) && pmf.mass[r] == exact_prob_top(n, r);
  };
  for (std::uint32_t r : {2u, 3u})
    for (std::uint64_t n = 1; n <= 12; ++n)
      if (!run(n, r))
        return {false, "mismatch at n=" + std::to_string(n) + " r=" + std::to_string(r)};
  for (std::uint64_t n = 1; n <= 6; ++n)
    if (!run(n, 4))
      return {false, "mismatch at n=" + std::to_string(n) + " r=4"};
  return {true, std::to_string(checked) + " (n, r) pairs equal as rationals"};
}

// Decimal prefix d of a constant: the constant lies in [d, d + 10^-digits).
bool matches_prefix(const ProbInterval &p, double prefix, double ulp) {
  return p.lo < prefix + ulp && p.hi >= prefix;
}

Outcome constants() {
  const ProbInterval inv2 = mutual_coprimality_limit(2, kEps);
  const ProbInterval inv3 = mutual_coprimality_limit(3, kEps);
  const ProbInterval prod2 = limit_cdf(2, 1, kEps);
  const ProbInterval prod3 = limit_cdf(3, 2, kEps);
  const ProbInterval t2 = pairwise_coprimality_limit(2, kEps);
  const bool widths = inv2.width() <= kEps && inv3.width() <= kEps &&
                      prod2.width() <= kEps && prod3.width() <= kEps &&
                      t2.width() <= kEps;
  const bool values = matches_prefix(inv2, 0.6079271018, 1e-10) &&
                      matches_prefix(inv3, 0.8319073725, 1e-10);
  const bool products = prod2.overlaps(inv2) && prod3.overlaps(inv3);
  const bool t2_ok = t2.overlaps(inv2);
  return {widths && values && products && t2_ok,
          "1/zeta(2) in [" + decimal(inv2.lo) + ", " + decimal(inv2.hi) +
              "], 1/zeta(3) in [" + decimal(inv3.lo) + ", " + decimal(inv3.hi) +
              "], T_2 in [" + decimal(t2.lo) + ", " + decimal(t2.hi) + "]"};
}

Outcome consistency() {
  for (std::uint32_t r = 2; r <= 8; ++r) {
    if (!kwise_coprimality_limit(r, 2, kEps).overlaps(pairwise_coprimality_limit(r, kEps)))
      return {false, "k=2 vs pairwise disagree at r=" + std::to_string(r)};
    if (!kwise_coprimality_limit(r, r, kEps).overlaps(mutual_coprimality_limit(r, kEps)))
      return {false, "k=r vs mutual disagree at r=" + std::to_string(r)};
  }
  return {true, "r = 2..8 overlapping at eps = 1e-9"};
}

Outcome lemma_sweeps() {
  std::size_t n = 0;
  for (std::uint64_t N = 2; N <= 400; ++N) {
    for (unsigned d : {3u, 4u, 10u, 100u}) {
      const auto w = verify_hoeffding_lemma(N, mpq_class(1, d));
      ++n;
      if (!w.pass)
        return {false, "hoeffding fails at " + w.params};
    }
    for (unsigned d : {64u, 101u, 1009u}) {
      const auto w = verify_bennett_lemma(N, mpq_class(1, d));
      ++n;
      if (!w.pass)
        return {false, "bennett fails at " + w.params};
    }
  }
  return {true, std::to_string(n) + " witnesses hold"};
}

Outcome theorem1() {
  double min_lo = 1.0;
  for (std::uint32_t r = 2; r <= 64; ++r)
    for (std::uint32_t t = 0; t <= r; ++t)
      min_lo = std::min(min_lo, gap(r, t, kEps).lo);
  const bool a = min_lo >= -1e-9;

  const Theorem1Report rep = theorem1_profile({2, 4, 8, 16, 32, 64}, kEps);
  bool decreasing = true;
  for (std::size_t i = 1; i < rep.profiles.size(); ++i)
    decreasing = decreasing && rep.profiles[i].sup_gap < rep.profiles[i - 1].sup_gap;
  const double sup64 = rep.profiles.back().sup_gap;
  const bool pinned = std::abs(sup64 - kSupGap64) <= kSupGap64Tol;
  const bool c = rep.slope < 0;

  std::string detail = "(a) min gap lo " + decimal(min_lo) + "; (b) sup_gap ";
  for (const auto &p : rep.profiles)
    detail += std::to_string(p.r) + ":" + fmt("%.4g", p.sup_gap) + " ";
  detail += "pin " + fmt2("%.10g vs %.10g", sup64, kSupGap64) + "; (c) slope " +
            fmt("%.4g", rep.slope) + fmt2(", fit A=%.4g B=%.4g", rep.fitted_A, rep.fitted_B);
  return {a && decreasing && pinned && c, detail};
}

Outcome identity() {
  for (std::uint32_t r = 2; r <= 8; ++r)
    for (std::uint32_t t = 0; t <= r; ++t) {
      const auto d = gap(r, t, kEps);
      const auto f = gap_via_identity(r, t, kEps);
      if (!(d.lo <= f.hi && f.lo <= d.hi))
        return {false, "disagree at r=" + std::to_string(r) + " t=" + std::to_string(t)};
    }
  return {true, "r = 2..8, t = 0..r"};
}

Outcome mc_vs_exact() {
  ExperimentConfig c;
  c.seed = kSeed;
  c.samples = 1'000'000;
  c.n = 2;
  c.r = 2;
  const auto emp = sample_uniform_index(c);
  const double expect[3] = {0.25, 0.5, 0.25};
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    const double se = std::sqrt(expect[k] * (1 - expect[k]) / c.samples);
    worst = std::max(worst, within_sigma(emp.mass(k), expect[k], se));
  }
  return {worst <= 4, fmt("max deviation %.2f SE", worst)};
}

Outcome hu_limit() {
  const ProbInterval t3 = pairwise_coprimality_limit(3, kEps);
  std::string detail;
  for (std::uint64_t n : {1'000'000ULL, 10'000'000ULL}) {
    ExperimentConfig c;
    c.seed = kSeed;
    c.samples = 1'000'000;
    c.n = n;
    c.r = 3;
    const auto emp = sample_uniform_index(c);
    const double p = emp.cdf(1);
    const double se = std::sqrt(p * (1 - p) / c.samples);
    const double z = within_sigma(p, t3.midpoint(), se);
    detail += fmt("n=%.0e: ", double(n)) + fmt2("P(W<=1)=%.5f, %.2f SE", p, z) + "; ";
    if (z <= 4)
      return {true, detail + fmt("T_3 midpoint %.9f", t3.midpoint())};
  }
  return {false, detail + "finite-n bias exceeds the band even at n=1e7"};
}

Outcome clt_trend() {
  std::vector<double> ks;
  std::string detail = "ks_normal ";
  double ks_bin64 = 0;
  for (std::uint32_t r : {16u, 64u, 256u}) {
    ExperimentConfig c;
    c.seed = kSeed;
    c.samples = 100'000;
    c.n = 1'000'000;
    c.r = r;
    const auto emp = sample_uniform_index(c);
    ks.push_back(ks_distance_to_normal(emp, r / 2.0, std::sqrt(double(r)) / 2));
    detail += std::to_string(r) + ":" + fmt("%.4f ", ks.back());
    if (r == 64)
      ks_bin64 = ks_distance_to_binomial(emp, BinomialSpec(64, mpq_class(1, 2)));
  }
  const bool trend = ks[1] < ks[0] && ks[2] < ks[1];
  const double bound = gap_profile(64, kEps).sup_gap + dkw_margin(100'000, 0.999);
  detail += fmt2("; ks_binomial(64)=%.4f <= %.4f", ks_bin64, bound);
  return {trend && ks_bin64 <= bound, detail};
}

Outcome remark2() {
  ExperimentConfig c;
  c.seed = kSeed;
  c.samples = 100'000;
  c.r = 100;
  c.s = 2.0;
  const auto emp = sample_zeta_index(c);
  const double mean = emp.mean(), var = emp.variance();
  const double se_mean = std::sqrt(var / c.samples);
  const double z_mean = within_sigma(mean, 25.0, se_mean);
  const double target_var = 0.75 * 25.0;
  const double rel_var = std::abs(var - target_var) / target_var;

  const auto t = zeta_divisibility(c, 2, 3);
  const double n = static_cast<double>(t.total);
  const double pa = t.by_a / n, pb = t.by_b / n, pab = t.by_both / n;
  const double z_ind = within_sigma(pab, pa * pb, std::sqrt(pa * pb * (1 - pa * pb) / n));

  std::string detail = fmt2("mean %.4f (%.2f SE from 25)", mean, z_mean) +
                       fmt2(", variance %.3f (%.1f%% from 18.75)", var, 100 * rel_var) +
                       fmt2(", P(2,3)=%.5f vs %.5f", pab, pa * pb) +
                       fmt(" (%.2f SE)", z_ind);
  return {z_mean <= 4 && rel_var <= 0.10 && z_ind <= 4, detail};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"simulate", "--mode=uniform", "-n", "1000000", "-r", "64", "--samples", "20000"},
      {"simulate", "--mode=zeta", "-s", "2", "-r", "100", "--samples", "20000"},
      {"simulate", "--mode=maxbin", "-r", "200", "--q-primes", "61", "--samples", "20000"},
  };
  for (const auto &base : commands) {
    std::string reference_counts, reference_out;
    for (const char *workers : {"1", "1", "2", "5"}) {
      auto args = base;
      args.insert(args.end(), {"--seed", "7", "--workers", workers, "--json"});
      std::ostringstream out, err;
      if (cli::run(args, out, err) != 0)
        return {false, base[1] + " exited with an error: " + err.str()};
      const std::string counts = Json::parse(out.str())["result"]["counts"].dump();
      if (reference_counts.empty()) {
        reference_counts = counts;
        reference_out = out.str();
      } else if (counts != reference_counts) {
        return {false, base[1] + " counts differ with --workers " + workers};
      } else if (std::string(workers) == "1" && out.str() != reference_out) {
        return {false, base[1] + " output differs between identical runs"};
      }
    }
  }
  return {true, "uniform, zeta and maxbin counts identical for 1, 2 and 5 workers"};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact endpoints equal closed forms", 60, exact_oracle},
      {2, "coprimality constants", 10, constants},
      {3, "k-wise limits reduce to pairwise and mutual", 0, consistency},
      {4, "concentration lemma sweeps", 300, lemma_sweeps},
      {5, "binomial gap positivity and decay", 0, theorem1},
      {6, "gap equals the odd-prime identity", 0, identity},
      {7, "Monte Carlo n=2 r=2 matches exact law", 30, mc_vs_exact},
      {8, "pairwise coprimality of three integers", 0, hu_limit},
      {9, "normal approximation trend and binomial distance", 0, clt_trend},
      {10, "zeta-distributed tuples", 0, remark2},
      {11, "worker-count independent sampling", 0, determinism},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += fmt(" [over time limit of %.0f s]", c.time_limit_s);
    }
    failures += !o.pass;
    std::printf("%s criterion %d: %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
