#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "favar/bvar.hpp"
#include "favar/reduce.hpp"
#include "favar/simgen.hpp"

namespace favar {

struct RunConfig {
  std::uint64_t seed = 42;
  std::string out_dir = "out";

  // Data inputs.
  std::string panel_path;
  std::string meta_path;
  std::string end_date;  // optional "YYYYQq" / ISO truncation

  // Dimension reduction.
  ReducerSpec reducer;  // q defaults to 5; ae table defaults

  // VAR estimation.
  int p = 4;
  SamplerOptions sampler;

  // Structural analysis.
  std::string scheme = "policy";  // policy | uncertainty
  int horizons = 16;
  double policy_shock = -1.0;       // 100 bps cut
  double uncertainty_shock = 0.25;  // 25 bps uncertainty impulse
  std::vector<std::string> targets = {"GDPC1", "UNRATE", "GDPCTPI",
                                      "HOUST",  "S&P 500", "GS1"};
  bool original_units = true;

  // Simulation study.
  DgpSpec dgp;
  int replications = 20;

  // Forecast evaluation.
  int holdout = 200;
  int ensemble_size = 500;
  int refit_every = 1;  // thinned refit mode when > 1
  std::vector<std::string> eval_models = {"linear", "lle", "ae"};

  // Importance diagnostics.
  int shapley_permutations = 200;
  std::string shapley_rows = "all";  // all | last
};

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
void write_config(const RunConfig& config, const std::string& path);

}  // namespace favar
