#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <new>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "codiv/bounds.hpp"
#include "codiv/codivcore.hpp"
#include "codiv/errors.hpp"
#include "codiv/exactdist.hpp"
#include "codiv/limitdist.hpp"
#include "codiv/montecarlo.hpp"
#include "codiv/primes.hpp"
#include "codiv/serialize.hpp"

namespace codiv::cli {

namespace {

// Sieve cap for `index`; larger values are a resource error.
constexpr std::uint64_t kIndexTableEntries = std::uint64_t{1} << 27;

Json envelope(const std::string &command, Json params, Json result,
              std::optional<std::uint64_t> seed, std::optional<double> eps) {
  Json prov = {{"version", kVersion}};
  if (seed)
    prov["seed"] = *seed;
  if (eps)
    prov["eps"] = *eps;
  return {{"command", command},
          {"params", std::move(params)},
          {"result", std::move(result)},
          {"provenance", std::move(prov)}};
}

void emit(std::ostream &out, const Json &j) { out << j.dump(2) << '\n'; }

std::string q_str(const mpq_class &q) { return q.get_str(); }

std::string interval_str(double lo, double hi) {
  return "[" + decimal(lo) + ", " + decimal(hi) + "]";
}

// ---------------------------------------------------------------- index

struct IndexCmd {
  std::vector<std::uint64_t> values;
  bool json = false;

  int run(std::ostream &out) const {
    TupleSample t(values);
    if (t.max_value() >= kIndexTableEntries)
      throw ResourceLimit("values above " + std::to_string(kIndexTableEntries - 1) +
                          " exceed the sieve budget of `index`");
    const PrimeTable table(std::max<std::uint64_t>(t.max_value(), 2));
    const DivisibilityProfile prof = divisibility_profile(t, table);
    if (json) {
      Json counts = Json::array();
      for (const auto &[p, c] : prof.counts)
        counts.push_back({{"p", p}, {"count", c}});
      emit(out, envelope("index", {{"values", values}},
                         {{"index", prof.index}, {"profile", counts}},
                         std::nullopt, std::nullopt));
      return kOk;
    }
    out << "index " << prof.index << '\n';
    for (const auto &[p, c] : prof.counts)
      out << "p=" << p << " count=" << c << '\n';
    return kOk;
  }
};

// ---------------------------------------------------------------- exact

struct ExactCmd {
  std::uint64_t n = 0;
  std::uint32_t r = 0;
  std::string mode = "bruteforce";
  std::uint64_t budget = EnumerationOptions{}.budget;
  unsigned workers = 1;
  bool json = false;

  int run(std::ostream &out) const {
    const Json params = {{"n", n}, {"r", r}, {"mode", mode},
                         {"budget", budget}, {"workers", workers}};
    if (mode == "endpoints") {
      const mpq_class zero = exact_prob_zero(n, r);
      const mpq_class top = exact_prob_top(n, r);
      if (json) {
        emit(out, envelope("exact", params,
                           {{"n", n}, {"r", r},
                            {"prob_zero", rational_to_json(zero)},
                            {"prob_top", rational_to_json(top)}},
                           std::nullopt, std::nullopt));
      } else {
        out << "P(W=0) = " << q_str(zero) << '\n'
            << "P(W=" << r << ") = " << q_str(top) << '\n';
      }
      return kOk;
    }
    const ExactPMF pmf = exact_pmf_bruteforce(n, r, {budget, workers});
    if (json) {
      emit(out, envelope("exact", params, to_json(pmf), std::nullopt,
                         std::nullopt));
      return kOk;
    }
    for (std::size_t k = 0; k < pmf.mass.size(); ++k)
      out << "P(W=" << k << ") = " << q_str(pmf.mass[k]) << "  ~ "
          << decimal(pmf.mass[k].get_d()) << '\n';
    return kOk;
  }
};

// ---------------------------------------------------------------- limit

struct LimitCmd {
  std::uint32_t r = 0;
  double t = 0;
  double eps = kDefaultEps;
  bool json = false;

  int run(std::ostream &out) const {
    const ProbInterval f = limit_cdf(r, t, eps);
    if (json) {
      emit(out, envelope("limit", {{"r", r}, {"t", t}, {"eps", eps}},
                         {{"F", to_json(f)}}, std::nullopt, eps));
      return kOk;
    }
    out << "F_" << r << "(" << decimal(t) << ") in " << interval_str(f.lo, f.hi)
        << '\n';
    return kOk;
  }
};

// ------------------------------------------------------------ constants

struct ConstantsCmd {
  std::uint32_t r = 0;
  double eps = kDefaultEps;
  bool json = false;

  int run(std::ostream &out) const {
    const ProbInterval inv_zeta = mutual_coprimality_limit(r, eps);
    const ProbInterval product = kwise_coprimality_limit(r, r, eps);
    const ProbInterval pairwise = pairwise_coprimality_limit(r, eps);
    std::vector<ProbInterval> kwise;
    for (std::uint32_t k = 2; k <= r; ++k)
      kwise.push_back(kwise_coprimality_limit(r, k, eps));

    if (json) {
      Json kj = Json::array();
      for (std::uint32_t k = 2; k <= r; ++k)
        kj.push_back({{"k", k}, {"enclosure", to_json(kwise[k - 2])}});
      emit(out, envelope("constants", {{"r", r}, {"eps", eps}},
                         {{"inverse_zeta", to_json(inv_zeta)},
                          {"mutual_product", to_json(product)},
                          {"pairwise", to_json(pairwise)},
                          {"kwise", std::move(kj)}},
                         std::nullopt, eps));
      return kOk;
    }
    out << "1/zeta(" << r << ") in " << interval_str(inv_zeta.lo, inv_zeta.hi)
        << '\n'
        << "F_" << r << "(" << r - 1 << ") in "
        << interval_str(product.lo, product.hi) << '\n'
        << "T_" << r << " in " << interval_str(pairwise.lo, pairwise.hi) << '\n';
    for (std::uint32_t k = 2; k <= r; ++k)
      out << k << "-wise in " << interval_str(kwise[k - 2].lo, kwise[k - 2].hi)
          << '\n';
    return kOk;
  }
};

// -------------------------------------------------------- verify-bounds

struct VerifyCmd {
  std::uint32_t r_max = 64;
  std::string grid = "full";
  double eps = kDefaultEps;
  bool json = false;

  int run(std::ostream &out, std::ostream &err) const {
    if (r_max < 2)
      throw InvalidArgument("--r-max must be >= 2");
    const bool full = grid == "full";
    const std::uint64_t n_max = full ? 400 : 64;
    const std::uint32_t r_step = full ? 1 : 8;

    std::vector<LemmaWitness> rows;
    for (std::uint64_t N = 2; N <= n_max; ++N) {
      for (unsigned d : {3u, 4u, 10u, 100u})
        rows.push_back(verify_hoeffding_lemma(N, mpq_class(1, d)));
      for (unsigned d : {64u, 101u, 1009u})
        rows.push_back(verify_bennett_lemma(N, mpq_class(1, d)));
    }
    for (unsigned s = 3; s <= 12; ++s)
      rows.push_back(verify_zeta_bound(s));
    for (std::uint32_t r = 16; r <= r_max; r += r_step)
      for (auto &w : verify_large_r_estimates(r, eps))
        rows.push_back(std::move(w));

    // Lower end of the gap enclosure should stay above -eps-scale noise.
    for (std::uint32_t r = 2; r <= r_max; r += (r < 16 ? 1 : r_step)) {
      double min_lo = 1.0;
      for (std::uint32_t t = 0; t <= r; ++t)
        min_lo = std::min(min_lo, gap(r, t, eps).lo);
      LemmaWitness w;
      w.check = "gap_lower";
      w.params = "r=" + std::to_string(r);
      w.lhs = min_lo;
      w.rhs = -1e-9;
      w.pass = min_lo >= w.rhs;
      rows.push_back(std::move(w));
    }

    std::vector<std::uint32_t> rs;
    for (std::uint32_t r = 2; r <= r_max; r *= 2)
      rs.push_back(r);
    const Theorem1Report rep = theorem1_profile(rs, eps);
    for (std::size_t i = 1; i < rep.profiles.size(); ++i) {
      LemmaWitness w;
      w.check = "sup_gap_decreasing";
      w.params = "r=" + std::to_string(rep.profiles[i - 1].r) + "->" +
                 std::to_string(rep.profiles[i].r);
      w.lhs = rep.profiles[i].sup_gap;
      w.rhs = rep.profiles[i - 1].sup_gap;
      w.pass = w.lhs < w.rhs;
      rows.push_back(std::move(w));
    }
    if (rs.size() >= 2) {
      LemmaWitness w;
      w.check = "gap_decay_slope";
      w.params = "r_max=" + std::to_string(rs.back());
      w.lhs = rep.slope;
      w.rhs = 0.0;
      w.pass = rep.slope < 0.0;
      rows.push_back(std::move(w));
    }

    bool all_pass = true;
    for (const auto &w : rows) {
      if (!w.pass) {
        all_pass = false;
        err << "FAILED " << w.check << " " << w.params << " lhs=" << decimal(w.lhs)
            << " rhs=" << decimal(w.rhs) << '\n';
      }
    }

    err << "r,sup_gap,argmax_t\n";
    for (const auto &p : rep.profiles)
      err << p.r << ',' << decimal(p.sup_gap) << ',' << p.argmax_t << '\n';
    err << "fit sup_gap ~ A*exp(-B*r): A=" << decimal(rep.fitted_A)
        << " B=" << decimal(rep.fitted_B) << '\n';

    if (json) {
      Json jr = Json::array();
      for (const auto &w : rows) {
        Json row = {{"check", w.check}, {"params", w.params},
                    {"lhs", decimal(w.lhs)}, {"rhs", decimal(w.rhs)},
                    {"pass", w.pass}};
        if (w.check == "hoeffding" || w.check == "bennett" ||
            w.check == "small_t_tail" || w.check == "small_primes_product")
          row["lhs_exact"] = rational_to_json(w.lhs_exact);
        jr.push_back(std::move(row));
      }
      Json prof = Json::array();
      for (const auto &p : rep.profiles)
        prof.push_back({{"r", p.r}, {"sup_gap", decimal(p.sup_gap)},
                        {"argmax_t", p.argmax_t}});
      emit(out, envelope("verify-bounds",
                         {{"r_max", r_max}, {"grid", grid}, {"eps", eps}},
                         {{"all_pass", all_pass},
                          {"rows", std::move(jr)},
                          {"sup_gap", std::move(prof)},
                          {"fitted_A", rep.fitted_A},
                          {"fitted_B", rep.fitted_B},
                          {"slope", rep.slope}},
                         std::nullopt, eps));
    } else {
      out << "check,params,lhs,rhs,pass\n";
      for (const auto &w : rows)
        out << w.check << ',' << w.params << ',' << decimal(w.lhs) << ','
            << decimal(w.rhs) << ',' << (w.pass ? "true" : "false") << '\n';
    }
    return all_pass ? kOk : kVerificationFailed;
  }
};

// ------------------------------------------------------------- simulate

std::vector<mpq_class> parse_q_list(const std::string &text) {
  std::vector<mpq_class> qs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    mpq_class q;
    if (q.set_str(item, 10) != 0 || q.get_den() == 0)
      throw InvalidArgument("cannot parse q value '" + item + "'");
    q.canonicalize();
    qs.push_back(q);
  }
  return qs;
}

struct SimulateCmd {
  std::string mode = "uniform";
  std::uint64_t n = 0;
  std::uint32_t r = 0;
  double s = 0.0;
  std::string q;
  std::uint64_t q_primes = 0;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string csv;
  bool json = false;

  int run(std::ostream &out, std::ostream &err) const {
    ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.workers = workers;
    cfg.n = n;
    cfg.r = r;
    cfg.s = s;
    if (!q.empty() && q_primes != 0)
      throw ConfigError("--q and --q-primes are mutually exclusive");
    if (!q.empty())
      cfg.q_sequence = parse_q_list(q);
    if (q_primes != 0) {
      const PrimeTable table(std::max<std::uint64_t>(q_primes, 2));
      for (std::uint32_t p : table.primes())
        cfg.q_sequence.emplace_back(1, p);
    }

    EmpiricalPMF emp;
    mpq_class bin_q(1, 2);
    double mean = r / 2.0, sd = std::sqrt(static_cast<double>(r)) / 2.0;
    if (mode == "uniform") {
      emp = sample_uniform_index(cfg);
    } else if (mode == "zeta") {
      emp = sample_zeta_index(cfg);
      const double p2 = std::exp2(-s);
      bin_q = mpq_class(p2);
      mean = r * p2;
      sd = std::sqrt((1.0 - p2) * r * p2);
    } else if (mode == "maxbin") {
      emp = sample_max_binomials(cfg);
    } else {
      throw ConfigError("unknown --mode '" + mode + "'");
    }
    const double ks_bin = ks_distance_to_binomial(emp, BinomialSpec(r, bin_q));
    const double ks_norm = ks_distance_to_normal(emp, mean, sd);

    if (!csv.empty()) {
      std::ofstream f(csv);
      if (!f)
        throw ConfigError("cannot open --csv path '" + csv + "'");
      write_cdf_csv(f, emp);
      err << "wrote empirical CDF to " << csv << '\n';
    }

    if (json) {
      Json params = {{"mode", mode}, {"n", n}, {"r", r}, {"s", s},
                     {"q", q}, {"q_primes", q_primes}, {"samples", samples},
                     {"seed", seed}, {"workers", workers}};
      Json result = simulation_to_json(cfg, emp, ks_bin, ks_norm);
      result["reference"] = {{"binomial_q", rational_to_json(bin_q)},
                             {"normal_mean", mean},
                             {"normal_sd", sd}};
      emit(out, envelope("simulate", std::move(params), std::move(result),
                         seed, std::nullopt));
      return kOk;
    }
    out << "k,count,mass,standard_error\n";
    for (std::size_t k = 0; k < emp.counts.size(); ++k)
      out << k << ',' << emp.counts[k] << ',' << decimal(emp.mass(k)) << ','
          << decimal(emp.standard_error(k)) << '\n';
    out << "mean " << decimal(emp.mean()) << "\nvariance "
        << decimal(emp.variance()) << "\nks_binomial " << decimal(ks_bin)
        << "\nks_normal " << decimal(ks_norm) << '\n';
    return kOk;
  }
};

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Index of codivisibility: exact laws, limit enclosures, "
               "bound checks and simulation",
               "codiv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  IndexCmd index;
  auto *sub_index = app.add_subcommand("index", "index of a tuple of integers");
  sub_index->add_option("values", index.values, "positive integers")
      ->required()
      ->check(CLI::PositiveNumber);
  sub_index->add_flag("--json", index.json, "emit a JSON envelope");

  ExactCmd exact;
  auto *sub_exact = app.add_subcommand("exact", "exact law of the index on {1..n}^r");
  sub_exact->add_option("n", exact.n)->required()->check(CLI::PositiveNumber);
  sub_exact->add_option("r", exact.r)->required()->check(CLI::Range(2u, 1u << 20));
  sub_exact->add_option("--mode", exact.mode)
      ->check(CLI::IsMember({"bruteforce", "endpoints"}));
  sub_exact->add_option("--budget", exact.budget, "maximum tuples enumerated");
  sub_exact->add_option("--workers", exact.workers)->check(CLI::PositiveNumber);
  sub_exact->add_flag("--json", exact.json, "emit a JSON envelope");

  LimitCmd limit;
  auto *sub_limit = app.add_subcommand("limit", "enclosure of the limit CDF F_r(t)");
  sub_limit->add_option("r", limit.r)->required()->check(CLI::Range(2u, 1u << 16));
  sub_limit->add_option("t", limit.t)->required();
  sub_limit->add_option("--eps", limit.eps, "target enclosure width")
      ->check(CLI::PositiveNumber);
  sub_limit->add_flag("--json", limit.json, "emit a JSON envelope");

  ConstantsCmd constants;
  auto *sub_const = app.add_subcommand(
      "constants", "1/zeta(r), pairwise and k-wise coprimality limits");
  sub_const->add_option("r", constants.r)->required()->check(CLI::Range(2u, 1024u));
  sub_const->add_option("--eps", constants.eps)->check(CLI::PositiveNumber);
  sub_const->add_flag("--json", constants.json, "emit a JSON envelope");

  VerifyCmd verify;
  auto *sub_verify = app.add_subcommand(
      "verify-bounds", "certified checks of the concentration lemmas and gap decay");
  sub_verify->add_option("--r-max", verify.r_max)->check(CLI::Range(2u, 256u));
  sub_verify->add_option("--grid", verify.grid)
      ->check(CLI::IsMember({"full", "quick"}));
  sub_verify->add_option("--eps", verify.eps)->check(CLI::PositiveNumber);
  sub_verify->add_flag("--json", verify.json, "emit a JSON envelope");

  SimulateCmd sim;
  auto *sub_sim = app.add_subcommand("simulate", "Monte Carlo sampling of the index");
  sub_sim->add_option("--mode", sim.mode)
      ->check(CLI::IsMember({"uniform", "zeta", "maxbin"}));
  sub_sim->add_option("-n", sim.n, "uniform mode: range {1..n}");
  sub_sim->add_option("-r", sim.r, "tuple length, or trials N in maxbin mode")
      ->required();
  sub_sim->add_option("-s", sim.s, "zeta mode exponent");
  sub_sim->add_option("--q", sim.q, "maxbin: comma-separated rationals, 1/2 first");
  sub_sim->add_option("--q-primes", sim.q_primes,
                      "maxbin: q = 1/p for primes p up to this bound");
  sub_sim->add_option("--samples", sim.samples)->check(CLI::PositiveNumber);
  sub_sim->add_option("--seed", sim.seed)->required();
  sub_sim->add_option("--workers", sim.workers)->check(CLI::PositiveNumber);
  sub_sim->add_option("--csv", sim.csv, "write the empirical CDF here");
  sub_sim->add_flag("--json", sim.json, "emit a JSON envelope");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sub_index->parsed())
      return index.run(out);
    if (sub_exact->parsed())
      return exact.run(out);
    if (sub_limit->parsed())
      return limit.run(out);
    if (sub_const->parsed())
      return constants.run(out);
    if (sub_verify->parsed())
      return verify.run(out, err);
    if (sub_sim->parsed())
      return sim.run(out, err);
  } catch (const InvalidArgument &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError &e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const OutOfRange &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceLimit &e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::bad_alloc &) {
    err << "resource limit: out of memory\n";
    return kResource;
  } catch (const PrecisionLimit &e) {
    err << "precision limit: " << e.what() << '\n';
    return kPrecision;
  }
  return kUsage;
}

} // namespace codiv::cli
