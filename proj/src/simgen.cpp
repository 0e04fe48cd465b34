#include "favar/simgen.hpp"

#include <cmath>

#include "favar/errors.hpp"
#include "favar/rng.hpp"
#include "favar/stats.hpp"

namespace favar {

double sign_preserving_clamp(double v, double eps) {
  if (v >= eps || v <= -eps) return v;
  return v >= 0.0 ? eps : -eps;
}

namespace {

bool simulate_path(const DgpSpec& spec, const Eigen::MatrixXd& a1,
                   const Eigen::MatrixXd& a2, const Eigen::MatrixXd& c,
                   const Eigen::MatrixXd& lambda, Rng& rng,
                   Eigen::MatrixXd& factors, Eigen::MatrixXd& panel) {
  int total = spec.burn_in + spec.t;
  Eigen::MatrixXd y(total + 2, spec.q);  // rows 0,1 are y_{-1}, y_0
  for (int j = 0; j < spec.q; ++j) {
    y(0, j) = rng.normal();
    y(1, j) = rng.normal();
  }
  for (int t = 2; t < total + 2; ++t) {
    double recip =
        1.0 / sign_preserving_clamp(y(t - 2, 1), spec.clamp_eps);
    Eigen::VectorXd scaled1 = y.row(t - 1).transpose() * recip;
    Eigen::VectorXd scaled2 = y.row(t - 1).transpose() * y(t - 1, 2);
    Eigen::VectorXd u(spec.q);
    for (int j = 0; j < spec.q; ++j) u(j) = rng.normal();
    y.row(t) = (a1 * scaled1 + a2 * scaled2 + c * u).transpose();
    if (!y.row(t).allFinite()) return false;
  }

  factors = y.bottomRows(spec.t);
  panel.resize(spec.t, spec.n);
  for (int t = 0; t < spec.t; ++t) {
    int row = spec.burn_in + 2 + t;  // index of y_t in the padded array
    Eigen::VectorXd driver =
        y.row(row - 1).transpose() * y(row - 2, 1);
    for (int i = 0; i < spec.n; ++i) {
      panel(t, i) = lambda.row(i).dot(driver) + rng.normal();
    }
  }
  return panel.allFinite();
}

}  // namespace

bool simulate_dgp_path(const DgpSpec& spec, const Eigen::MatrixXd& a1,
                       const Eigen::MatrixXd& a2, const Eigen::MatrixXd& c,
                       const Eigen::MatrixXd& lambda, std::uint64_t seed,
                       Eigen::MatrixXd& factors, Eigen::MatrixXd& panel) {
  Rng rng = Rng(seed).substream("path");
  return simulate_path(spec, a1, a2, c, lambda, rng, factors, panel);
}

DgpSample draw_dgp(const DgpSpec& spec) {
  if (spec.t < 2 || spec.n < 1 || spec.q < 3) {
    fail(ErrorKind::Parameter, "dgp needs t >= 2, n >= 1, q >= 3");
  }
  if (spec.holdout >= spec.t) {
    fail(ErrorKind::Parameter, "holdout must be < t");
  }
  if (!(spec.clamp_eps > 0.0)) {
    fail(ErrorKind::Parameter, "clamp_eps must be positive");
  }

  Rng rng = Rng(spec.seed).substream("dgp");

  DgpSample sample;
  sample.spec = spec;
  sample.lambda.resize(spec.n, spec.q);
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.q; ++j) {
      sample.lambda(i, j) = rng.normal(0.0, spec.loading_std);
    }
  }
  sample.a1 = Eigen::MatrixXd::Zero(spec.q, spec.q);
  sample.a2 = Eigen::MatrixXd::Zero(spec.q, spec.q);
  for (int i = 0; i < spec.q; ++i) {
    for (int j = 0; j < spec.q; ++j) {
      if (i == j) continue;
      sample.a1(i, j) = rng.normal(0.0, spec.coef_std);
      sample.a2(i, j) = rng.normal(0.0, spec.coef_std);
    }
  }
  sample.c = Eigen::MatrixXd::Identity(spec.q, spec.q);
  for (int i = 1; i < spec.q; ++i) {
    for (int j = 0; j < i; ++j) sample.c(i, j) = rng.normal(0.0, spec.coef_std);
  }

  Rng path_rng = rng.substream("path");
  if (!simulate_path(spec, sample.a1, sample.a2, sample.c, sample.lambda,
                     path_rng, sample.factors, sample.panel)) {
    Rng retry_rng = rng.substream("path-retry");
    if (!simulate_path(spec, sample.a1, sample.a2, sample.c, sample.lambda,
                       retry_rng, sample.factors, sample.panel)) {
      fail(ErrorKind::Parameter, "dgp produced a non-finite path twice");
    }
  }
  return sample;
}

std::vector<PeriodLabel> label_periods(const Eigen::MatrixXd& factors,
                                       double iqr_lo, double iqr_hi) {
  Eigen::Index t = factors.rows();
  std::vector<PeriodLabel> labels(static_cast<std::size_t>(t),
                                  PeriodLabel::Tranquil);
  for (Eigen::Index j = 0; j < factors.cols(); ++j) {
    double med = median(factors.col(j));
    double range = quantile(factors.col(j), iqr_hi) -
                   quantile(factors.col(j), iqr_lo);
    double threshold = 7.0 * range;
    for (Eigen::Index i = 0; i < t; ++i) {
      if (std::abs(factors(i, j) - med) > threshold) {
        labels[static_cast<std::size_t>(i)] = PeriodLabel::Crisis;
      }
    }
  }
  return labels;
}

std::vector<VariableClass> classify_variables(const Eigen::MatrixXd& panel,
                                              double iqr_lo, double iqr_hi) {
  std::vector<VariableClass> classes;
  for (Eigen::Index j = 0; j < panel.cols(); ++j) {
    double med = median(panel.col(j));
    double range =
        quantile(panel.col(j), iqr_hi) - quantile(panel.col(j), iqr_lo);
    double max_dev = (panel.col(j).array() - med).abs().maxCoeff();
    if (max_dev > 7.0 * range) {
      classes.push_back(VariableClass::HeavilyAffected);
    } else if (max_dev > 2.0 * range) {
      classes.push_back(VariableClass::Affected);
    } else {
      classes.push_back(VariableClass::NotAffected);
    }
  }
  return classes;
}

std::uint64_t replication_seed(std::uint64_t base, std::uint64_t rep) {
  return Rng(base).replication(rep).seed();
}

}  // namespace favar
