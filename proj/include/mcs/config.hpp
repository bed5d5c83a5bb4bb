#pragma once

#include <optional>
#include <stdexcept>
#include <string>

// vendored nlohmann/json
#include <json.hpp>

#include "mcs/models.hpp"
#include "mcs/stochastic.hpp"

namespace mcs {

/// Input error with the JSON-pointer-style path of the offending node.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Everything a scenario config can describe. Raw blocks and a model block
/// are mutually exclusive.
struct Scenario {
  LatticePtr lattice;
  PosetPtr poset;
  ObjectivePtr objective;
  std::optional<CostFunction> cost;
  std::optional<StaticProblem> static_problem;
  std::optional<DynamicScenario> dynamic;
  std::optional<CostLottery> lottery;
  std::optional<BuiltModel> model;
  double tol = 0.0;
};

Scenario load_scenario(const nlohmann::json& doc);
Scenario load_scenario_file(const std::string& path);

// Serialization for reproducible instances. Custom costs are tabulated over
// the exact difference set so the round trip is value-exact.
nlohmann::json lattice_to_json(const GridLattice& L);
nlohmann::json poset_to_json(const ParamPoset& P);
nlohmann::json cost_to_json(const CostFunction& C, const GridLattice& L);
nlohmann::json static_problem_to_json(const StaticProblem& P);
nlohmann::json dynamic_to_json(const DynamicScenario& S);
nlohmann::json lottery_to_json(const CostLottery& lot, const GridLattice& L);

nlohmann::json property_report_to_json(const PropertyReport& r);
nlohmann::json theorem_report_to_json(const TheoremReport& r);

}  // namespace mcs
