#include "codiv/serialize.hpp"

#include <charconv>
#include <cmath>

#include "codiv/errors.hpp"

namespace codiv {

std::string decimal(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json rational_to_json(const mpq_class &q) {
  return Json::array({q.get_num().get_str(), q.get_den().get_str()});
}

mpq_class rational_from_json(const Json &j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw InvalidArgument("rational must be a [\"num\", \"den\"] pair");
  mpq_class q(mpz_class(j[0].get<std::string>()),
              mpz_class(j[1].get<std::string>()));
  if (q.get_den() == 0)
    throw InvalidArgument("rational with zero denominator");
  q.canonicalize();
  return q;
}

Json to_json(const ExactPMF &pmf) {
  Json mass = Json::array();
  for (const auto &m : pmf.mass)
    mass.push_back(rational_to_json(m));
  return {{"n", pmf.n}, {"r", pmf.r}, {"mass", std::move(mass)}};
}

ExactPMF exact_pmf_from_json(const Json &j) {
  ExactPMF pmf;
  pmf.n = j.at("n").get<std::uint64_t>();
  pmf.r = j.at("r").get<std::uint32_t>();
  for (const auto &m : j.at("mass"))
    pmf.mass.push_back(rational_from_json(m));
  if (pmf.mass.size() != pmf.r + 1u)
    throw InvalidArgument("ExactPMF mass must have r + 1 entries");
  return pmf;
}

Json to_json(const ProbInterval &p) {
  return {{"lo", decimal(p.lo)},
          {"hi", decimal(p.hi)},
          {"eps_requested", p.eps_requested}};
}

Json to_json(const RealEnclosure &e) {
  return {{"lo", decimal(e.lo)}, {"hi", decimal(e.hi)}};
}

Json to_json(const ExperimentConfig &cfg) {
  Json j = {{"seed", cfg.seed},
            {"samples", cfg.samples},
            {"workers", cfg.workers},
            {"n", cfg.n},
            {"r", cfg.r},
            {"s", cfg.s}};
  Json qs = Json::array();
  for (const auto &q : cfg.q_sequence)
    qs.push_back(rational_to_json(q));
  j["q_sequence"] = std::move(qs);
  return j;
}

Json simulation_to_json(const ExperimentConfig &cfg, const EmpiricalPMF &emp,
                        double ks_binomial, double ks_normal) {
  Json mass = Json::array();
  for (std::size_t k = 0; k < emp.counts.size(); ++k)
    mass.push_back({{"k", k},
                    {"mass", emp.mass(k)},
                    {"standard_error", emp.standard_error(k)}});
  const double n = static_cast<double>(emp.total);
  return {{"config", to_json(cfg)},
          {"total", emp.total},
          {"counts", emp.counts},
          {"mass", std::move(mass)},
          {"mean", {{"value", emp.mean()},
                    {"standard_error", std::sqrt(emp.variance() / n)}}},
          {"variance", emp.variance()},
          {"diagnostics",
           {{"ks_binomial", ks_binomial}, {"ks_normal", ks_normal}}}};
}

void write_cdf_csv(std::ostream &os, const EmpiricalPMF &emp) {
  os << "k,cdf\n";
  for (std::size_t k = 0; k < emp.counts.size(); ++k)
    os << k << ',' << decimal(emp.cdf(static_cast<long long>(k))) << '\n';
}

} // namespace codiv
