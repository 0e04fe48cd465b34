#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace favar {

struct DgpSpec {
  int t = 350;
  int n = 20;
  int q = 3;
  double loading_std = 0.1;
  double coef_std = 0.1;
  int holdout = 200;
  std::uint64_t seed = 0;
  double clamp_eps = 0.1;  // sign-preserving clamp on the reciprocal term
  int burn_in = 50;
  double iqr_lo = 0.25;  // quantile pair defining the interquartile range
  double iqr_hi = 0.75;
};

struct DgpSample {
  Eigen::MatrixXd panel;    // T×N
  Eigen::MatrixXd factors;  // T×Q
  DgpSpec spec;
  Eigen::MatrixXd lambda;   // N×Q loadings
  Eigen::MatrixXd a1, a2;   // Q×Q, zero diagonal
  Eigen::MatrixXd c;        // Q×Q unit lower triangular
};

// Values in (-eps, eps) map to the nearest signed eps (0 counts as +).
double sign_preserving_clamp(double v, double eps);

// Non-linear factor recursion
//   y_t = A1 (y_{t-1} * clamp(y_{2,t-2})^-1) + A2 (y_{t-1} * y_{3,t-1}) + C u_t
// with elementwise scaling by the scalar terms, and observations
//   D_t = lambda (y_{t-1} * y_{2,t-2}) + v_t.
// A burn-in stretch is discarded before T periods are collected.
DgpSample draw_dgp(const DgpSpec& spec);

// Path simulation with fixed coefficient matrices (draw_dgp samples
// them first); returns false when the path goes non-finite.
bool simulate_dgp_path(const DgpSpec& spec, const Eigen::MatrixXd& a1,
                       const Eigen::MatrixXd& a2, const Eigen::MatrixXd& c,
                       const Eigen::MatrixXd& lambda, std::uint64_t seed,
                       Eigen::MatrixXd& factors, Eigen::MatrixXd& panel);

enum class PeriodLabel { Tranquil, Crisis };
enum class VariableClass { NotAffected, Affected, HeavilyAffected };

// Period t is a crisis iff any factor deviates from its full-sample
// median by more than 7 IQR.
std::vector<PeriodLabel> label_periods(const Eigen::MatrixXd& factors,
                                       double iqr_lo = 0.25,
                                       double iqr_hi = 0.75);

// Per column: heavily affected beyond 7 IQR, affected beyond 2 IQR.
std::vector<VariableClass> classify_variables(const Eigen::MatrixXd& panel,
                                              double iqr_lo = 0.25,
                                              double iqr_hi = 0.75);

// Seed for replication `rep`, independent across reps via splitmix
// mixing of (base seed, rep).
std::uint64_t replication_seed(std::uint64_t base, std::uint64_t rep);

}  // namespace favar
