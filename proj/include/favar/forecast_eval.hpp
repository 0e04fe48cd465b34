#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "favar/bvar.hpp"
#include "favar/reduce.hpp"
#include "favar/simgen.hpp"

namespace favar {

// Empirical-ensemble continuous ranked probability score:
// (1/m) sum |x_i - y| - (1/(2 m^2)) sum_ij |x_i - x_j|,
// computed in O(m log m) via the sorted representation.
double crps(std::vector<double> ensemble, double y);
double crps(const Eigen::VectorXd& ensemble, double y);

double rmse(const std::vector<double>& errors);

struct EvalModelSpec {
  std::string id;  // "linear", "lle", "ae"
  ReducerSpec reducer;
  int p = 4;
  SamplerOptions sampler;
  int ensemble_size = 500;
  int refit_every = 1;  // refit reducer+VAR every this many origins
  std::uint64_t seed = 0;
};

struct ForecastRun {
  std::string model_id;
  std::vector<int> origins;  // time index t; the forecast is for t+1
  std::vector<Eigen::MatrixXd> ensembles;  // per origin: members×variables
  Eigen::MatrixXd realized;                // origins×variables
};

// One-step-ahead posterior-predictive forecasts of every panel column
// on an expanding window covering the last `holdout` periods. Factors
// are re-extracted (and the VAR re-estimated) at refit origins; between
// refits the frozen standardization and factor map extend the factor
// series over the new rows. Predictive members map factor forecasts
// through the linearized loadings and add observation noise.
ForecastRun expanding_forecast(const Eigen::MatrixXd& panel,
                               const EvalModelSpec& spec, int holdout);

struct EvalCell {
  long count = 0;
  double sse = 0.0;
  double crps_sum = 0.0;

  std::optional<double> rmse_value() const;
  std::optional<double> crps_value() const;
};

// Cells: period stratum (crisis, tranquil) × variable stratum
// (overall, heavily affected, affected, not affected).
struct EvalTable {
  std::string model_id;
  EvalCell cells[2][4];
};

struct RelativeCell {
  std::optional<double> rmse_ratio;
  std::optional<double> crps_ratio;
};

struct EvalReport {
  std::string baseline_id;
  std::vector<EvalTable> absolute;                       // per model
  std::vector<std::array<std::array<RelativeCell, 4>, 2>> relative;
  std::vector<std::string> model_ids;
};

extern const char* const kPeriodStratumNames[2];    // crisis, tranquil
extern const char* const kVariableStratumNames[4];  // overall, ...

// Scores every (origin, variable) pair into its stratum cell; the
// period label of a forecast is the label of the realized period t+1.
EvalTable score_run(const ForecastRun& run,
                    const std::vector<PeriodLabel>& labels,
                    const std::vector<VariableClass>& classes);

// Relative = model metric / baseline metric per cell; cells missing on
// either side stay absent.
EvalReport stratify_report(const std::vector<ForecastRun>& runs,
                           const std::string& baseline_id,
                           const std::vector<PeriodLabel>& labels,
                           const std::vector<VariableClass>& classes);

std::string report_to_csv(const EvalReport& report);

}  // namespace favar
