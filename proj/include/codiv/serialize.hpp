#pragma once

#include <ostream>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

#include "codiv/exactdist.hpp"
#include "codiv/montecarlo.hpp"
#include "codiv/prob_interval.hpp"

namespace codiv {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that reads back to the same double.
std::string decimal(double x);

/// ["num", "den"] with decimal-string integers.
Json rational_to_json(const mpq_class &q);
mpq_class rational_from_json(const Json &j);

Json to_json(const ExactPMF &pmf);
ExactPMF exact_pmf_from_json(const Json &j);

Json to_json(const ProbInterval &p);
Json to_json(const RealEnclosure &e);

Json to_json(const ExperimentConfig &cfg);

/// {config, counts, diagnostics: {ks_binomial, ks_normal}} plus summary
/// statistics, each mass paired with its standard error.
Json simulation_to_json(const ExperimentConfig &cfg, const EmpiricalPMF &emp,
                        double ks_binomial, double ks_normal);

/// Two-column CSV "k,cdf" of the empirical distribution function.
void write_cdf_csv(std::ostream &os, const EmpiricalPMF &emp);

} // namespace codiv
