#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "natquant/analysis.hpp"
#include "natquant/distribution.hpp"
#include "natquant/solver.hpp"

namespace natquant {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distribution file schema:
///   {"head": ["1/4", "1/2"],
///    "tail": {"start": 3, "coeff": "1", "ratio": "1/2"}}
/// "tail" may be omitted for finite distributions. The parsed value is
/// validated before it is returned.
DiscreteDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::ordered_json distribution_to_json(const DiscreteDistribution& d);

/// Resolves a distribution argument: a built-in name ("distA", "distB",
/// "distC", "geometric"), a permutation spec ("defn:3,2,1"), inline JSON
/// (text starting with '{'), or a path to a JSON file.
DiscreteDistribution resolve_distribution(const std::string& spec);

nlohmann::ordered_json solve_result_to_json(const DiscreteDistribution& d,
                                            const SolveResult& r,
                                            unsigned digits);
nlohmann::ordered_json conjecture_report_to_json(const ConjectureReport& r);
nlohmann::ordered_json dimension_sweep_to_json(const DimensionSweep& s,
                                               unsigned digits);

}  // namespace natquant
