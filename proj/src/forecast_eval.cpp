#include "favar/forecast_eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "favar/errors.hpp"
#include "favar/io.hpp"
#include "favar/stats.hpp"
#include "favar/structural.hpp"

namespace favar {

const char* const kPeriodStratumNames[2] = {"crisis", "tranquil"};
const char* const kVariableStratumNames[4] = {"overall", "heavily_affected",
                                              "affected", "not_affected"};

double crps(std::vector<double> ensemble, double y) {
  if (ensemble.empty()) fail(ErrorKind::Parameter, "crps: empty ensemble");
  std::sort(ensemble.begin(), ensemble.end());
  double m = static_cast<double>(ensemble.size());
  double first = 0.0;
  double spread = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    first += std::abs(ensemble[i] - y);
    // sum_{i<j} (x_(j) - x_(i)) accumulated via sorted ranks.
    spread += (2.0 * static_cast<double>(i) - m + 1.0) * ensemble[i];
  }
  return first / m - spread / (m * m);
}

double crps(const Eigen::VectorXd& ensemble, double y) {
  return crps(std::vector<double>(ensemble.data(),
                                  ensemble.data() + ensemble.size()),
              y);
}

double rmse(const std::vector<double>& errors) {
  if (errors.empty()) fail(ErrorKind::Parameter, "rmse: empty input");
  double ss = 0.0;
  for (double e : errors) ss += e * e;
  return std::sqrt(ss / static_cast<double>(errors.size()));
}

ForecastRun expanding_forecast(const Eigen::MatrixXd& panel,
                               const EvalModelSpec& spec, int holdout) {
  const Eigen::Index t_total = panel.rows();
  const Eigen::Index n = panel.cols();
  if (holdout < 1 || holdout >= t_total) {
    fail(ErrorKind::Parameter, "holdout must be in [1, T)");
  }
  if (spec.ensemble_size < 1) {
    fail(ErrorKind::Parameter, "ensemble size must be >= 1");
  }
  if (spec.refit_every < 1) {
    fail(ErrorKind::Parameter, "refit_every must be >= 1");
  }

  ForecastRun run;
  run.model_id = spec.id;
  const int first_origin = static_cast<int>(t_total) - holdout - 1;
  if (first_origin < spec.p + 2) {
    fail(ErrorKind::Parameter, "training window too short for the lag order");
  }

  Eigen::RowVectorXd mean, sd;
  FactorSet factors;
  LinearizedLoadings loadings;
  BvarPosterior posterior;
  Eigen::MatrixXd factor_history;

  run.realized.resize(holdout, n);
  Rng base_rng = Rng(spec.seed).substream("eval-" + spec.id);

  for (int origin = first_origin; origin + 1 < t_total; ++origin) {
    const Eigen::Index rows = origin + 1;
    bool refit = ((origin - first_origin) % spec.refit_every) == 0;
    try {
      if (refit) {
        Eigen::MatrixXd slice = panel.topRows(rows);
        mean = slice.colwise().mean();
        sd.resize(n);
        for (Eigen::Index j = 0; j < n; ++j) {
          double v = (slice.col(j).array() - mean(j)).square().sum() /
                     static_cast<double>(rows - 1);
          if (!(v > 0.0)) {
            fail(ErrorKind::Degenerate, "zero-variance training column");
          }
          sd(j) = std::sqrt(v);
        }
        Eigen::MatrixXd std_slice =
            (slice.rowwise() - mean).array().rowwise() / sd.array();

        ReducerSpec rspec = spec.reducer;
        rspec.ae.seed =
            Rng(spec.seed).substream("ae-refit-" + std::to_string(origin))
                .seed();
        factors = reduce(std_slice, rspec);
        loadings = linearize(factors.factors, std_slice);

        VarData var_data = build_var_data(factors.factors, spec.p);
        MinnesotaPrior prior = build_prior(
            var_data,
            std::vector<bool>(static_cast<std::size_t>(factors.factors.cols()),
                              true));
        std::uint64_t sampler_seed =
            Rng(spec.seed).substream("var-refit-" + std::to_string(origin))
                .seed();
        posterior = gibbs_sample(var_data, prior, spec.sampler, sampler_seed);
        factor_history = factors.factors;
      } else {
        // Extend the factor series over rows seen since the last refit
        // using the frozen standardization and factor map.
        Eigen::Index have = factor_history.rows();
        if (rows > have) {
          Eigen::MatrixXd new_rows =
              (panel.middleRows(have, rows - have).rowwise() - mean)
                  .array()
                  .rowwise() /
              sd.array();
          Eigen::MatrixXd mapped = factors.map_rows(new_rows);
          factor_history.conservativeResize(rows, Eigen::NoChange);
          factor_history.bottomRows(rows - have) = mapped;
        }
      }

      const Eigen::Index q = factor_history.cols();
      Eigen::VectorXd x_star =
          one_step_regressors(factor_history.topRows(rows), spec.p);

      Rng rng = base_rng.substream("origin-" + std::to_string(origin));
      const int n_draws = static_cast<int>(posterior.draws.size());
      Eigen::MatrixXd members(spec.ensemble_size, n);
      for (int e = 0; e < spec.ensemble_size; ++e) {
        const BvarDraw& draw = posterior.draws[static_cast<std::size_t>(
            (static_cast<long>(e) * n_draws) / spec.ensemble_size)];
        Eigen::VectorXd mu = draw.a * x_star;
        Eigen::VectorXd z(q);
        for (Eigen::Index j = 0; j < q; ++j) z(j) = rng.normal();
        Eigen::VectorXd innov =
            draw.a0_tilde.triangularView<Eigen::Lower>().solve(
                draw.sigma_tilde.cwiseSqrt().cwiseProduct(z));
        Eigen::VectorXd f_star = mu + innov;
        Eigen::RowVectorXd d_std =
            (f_star.transpose() * loadings.theta).eval();
        for (Eigen::Index j = 0; j < n; ++j) {
          double noise =
              rng.normal(0.0,
                         std::sqrt(loadings.fitted_residual_variance(j)));
          members(e, j) = (d_std(j) + noise) * sd(j) + mean(j);
        }
      }
      run.origins.push_back(origin);
      run.ensembles.push_back(std::move(members));
      run.realized.row(static_cast<Eigen::Index>(run.origins.size()) - 1) =
          panel.row(origin + 1);
    } catch (Error& err) {
      fail(err.kind(), "origin " + std::to_string(origin) + ": " + err.what());
    }
  }
  run.realized.conservativeResize(
      static_cast<Eigen::Index>(run.origins.size()), n);
  return run;
}

std::optional<double> EvalCell::rmse_value() const {
  if (count == 0) return std::nullopt;
  return std::sqrt(sse / static_cast<double>(count));
}

std::optional<double> EvalCell::crps_value() const {
  if (count == 0) return std::nullopt;
  return crps_sum / static_cast<double>(count);
}

EvalTable score_run(const ForecastRun& run,
                    const std::vector<PeriodLabel>& labels,
                    const std::vector<VariableClass>& classes) {
  EvalTable table;
  table.model_id = run.model_id;
  const Eigen::Index n = run.realized.cols();
  if (static_cast<Eigen::Index>(classes.size()) != n) {
    fail(ErrorKind::Alignment, "variable class count mismatch");
  }
  for (std::size_t oi = 0; oi < run.origins.size(); ++oi) {
    int realized_period = run.origins[oi] + 1;
    if (realized_period >= static_cast<int>(labels.size())) {
      fail(ErrorKind::Alignment, "period label missing for forecast target");
    }
    int s = labels[static_cast<std::size_t>(realized_period)] ==
                    PeriodLabel::Crisis
                ? 0
                : 1;
    const Eigen::MatrixXd& members = run.ensembles[oi];
    for (Eigen::Index j = 0; j < n; ++j) {
      double y = run.realized(static_cast<Eigen::Index>(oi), j);
      double err = members.col(j).mean() - y;
      double score = crps(members.col(j), y);
      int cls;
      switch (classes[static_cast<std::size_t>(j)]) {
        case VariableClass::HeavilyAffected:
          cls = 1;
          break;
        case VariableClass::Affected:
          cls = 2;
          break;
        default:
          cls = 3;
      }
      for (int c : {0, cls}) {
        auto& cell = table.cells[s][c];
        ++cell.count;
        cell.sse += err * err;
        cell.crps_sum += score;
      }
    }
  }
  return table;
}

EvalReport stratify_report(const std::vector<ForecastRun>& runs,
                           const std::string& baseline_id,
                           const std::vector<PeriodLabel>& labels,
                           const std::vector<VariableClass>& classes) {
  if (runs.empty()) fail(ErrorKind::Parameter, "no forecast runs");
  const ForecastRun* baseline = nullptr;
  for (const auto& run : runs) {
    if (run.model_id == baseline_id) baseline = &run;
    if (run.origins != runs.front().origins) {
      fail(ErrorKind::Alignment, "forecast origins differ across models");
    }
    if (run.realized.cols() != runs.front().realized.cols()) {
      fail(ErrorKind::Alignment, "variable counts differ across models");
    }
  }
  if (baseline == nullptr) {
    fail(ErrorKind::Parameter, "baseline model '" + baseline_id + "' missing");
  }

  EvalReport report;
  report.baseline_id = baseline_id;
  EvalTable base_table = score_run(*baseline, labels, classes);
  for (const auto& run : runs) {
    report.model_ids.push_back(run.model_id);
    report.absolute.push_back(score_run(run, labels, classes));
    const EvalTable& table = report.absolute.back();
    std::array<std::array<RelativeCell, 4>, 2> rel;
    for (int s = 0; s < 2; ++s) {
      for (int c = 0; c < 4; ++c) {
        auto m_rmse = table.cells[s][c].rmse_value();
        auto b_rmse = base_table.cells[s][c].rmse_value();
        auto m_crps = table.cells[s][c].crps_value();
        auto b_crps = base_table.cells[s][c].crps_value();
        if (m_rmse && b_rmse && *b_rmse > 0.0) {
          rel[s][c].rmse_ratio = *m_rmse / *b_rmse;
        }
        if (m_crps && b_crps && *b_crps > 0.0) {
          rel[s][c].crps_ratio = *m_crps / *b_crps;
        }
      }
    }
    report.relative.push_back(rel);
  }
  return report;
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "model,period_stratum,variable_stratum,count,rmse,crps,"
         "rel_rmse,rel_crps\n";
  for (std::size_t mi = 0; mi < report.model_ids.size(); ++mi) {
    for (int s = 0; s < 2; ++s) {
      for (int c = 0; c < 4; ++c) {
        const auto& cell = report.absolute[mi].cells[s][c];
        const auto& rel = report.relative[mi][s][c];
        out << report.model_ids[mi] << ',' << kPeriodStratumNames[s] << ','
            << kVariableStratumNames[c] << ',' << cell.count << ',';
        auto put = [&out](const std::optional<double>& v) {
          if (v) out << format_double(*v);
        };
        put(cell.rmse_value());
        out << ',';
        put(cell.crps_value());
        out << ',';
        put(rel.rmse_ratio);
        out << ',';
        put(rel.crps_ratio);
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace favar
