#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "favar/rng.hpp"

namespace favar {

// VAR data in regression form. y rows are time; x row t holds
// (y_{t-1}', ..., y_{t-p}', 1) aligned with y_eff row t.
struct VarData {
  Eigen::MatrixXd y;      // T×K original series (factors first, policy last)
  int p = 4;
  Eigen::MatrixXd x;      // (T-p)×(Kp+1)
  Eigen::MatrixXd y_eff;  // (T-p)×K
};

VarData build_var_data(const Eigen::MatrixXd& y, int p);

// Regressor vector (y_{t-1}', ..., y_{t-p}', 1) for forecasting one step
// past the end of y.
Eigen::VectorXd one_step_regressors(const Eigen::MatrixXd& y, int p);

struct MinnesotaPrior {
  Eigen::VectorXd sigma_hat;        // per-variable AR(4) residual variance
  std::vector<bool> nonstationary;  // own-first-lag prior mean 1 when true
  double xi3 = 1000.0;
  std::vector<std::string> warnings;  // AR(4) fallback records
};

// sigma_hat from AR(4) OLS fits (on first differences for
// nonstationary series, levels otherwise); stationary_flags[k] = true
// marks a stationary series (prior mean 0).
MinnesotaPrior build_prior(const VarData& data,
                           const std::vector<bool>& stationary_flags);

// Prior mean / variance diagonal of equation k's lag-plus-intercept
// coefficient block, in the x layout above.
Eigen::VectorXd prior_mean_vector(const MinnesotaPrior& prior, int k, int n_var,
                                  int p);
Eigen::VectorXd prior_variance_vector(const MinnesotaPrior& prior, int k,
                                      int n_var, int p, double xi1, double xi2);

struct ConditionalPosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Eigen::MatrixXd chol;  // lower factor of cov
};

// Posterior of one equation's coefficients given its error variance:
// cov = (X'X/sigma + diag(prior_var)^-1)^-1,
// mean = cov (X'y/sigma + prior_mean / prior_var).
// Retries with 1e-10 jitter up to 3 times if the factorization fails.
ConditionalPosterior conditional_posterior(const Eigen::MatrixXd& xtx,
                                           const Eigen::VectorXd& xty,
                                           const Eigen::VectorXd& prior_mean,
                                           const Eigen::VectorXd& prior_var,
                                           double sigma);

struct BvarDraw {
  Eigen::MatrixXd a;           // K×(Kp+1), row k = equation k
  Eigen::MatrixXd a0_tilde;    // K×K unit lower triangular
  Eigen::VectorXd sigma_tilde; // K structural variances
  double xi1 = 0.0;
  double xi2 = 0.0;
};

struct BvarPosterior {
  std::vector<BvarDraw> draws;
  int burn = 0;
  double accept_xi1 = 0.0;  // post-burn-in acceptance rates
  double accept_xi2 = 0.0;
  double scale_xi1 = 0.0;   // frozen proposal scales
  double scale_xi2 = 0.0;
};

struct SamplerOptions {
  int draws = 3000;
  int burn = 2000;
  double xi1_init = 0.04;
  double xi2_init = 0.0016;
  double a0_prior_var = 100.0;  // variance of the contemporaneous terms
  bool sample_hyper = true;     // Metropolis steps on (xi1, xi2)
};

// Equation-by-equation Gibbs sampler on the triangularized system:
// equation k regresses y_k on x plus the columns (X a_i - y_i) of the
// preceding equations, whose coefficients form row k of A0_tilde.
BvarPosterior gibbs_sample(const VarData& data, const MinnesotaPrior& prior,
                           const SamplerOptions& options, std::uint64_t seed);

// Sigma_eps = A0_tilde^-1 diag(sigma_tilde) A0_tilde^-1', symmetrized.
Eigen::MatrixXd implied_covariance(const BvarDraw& draw);

}  // namespace favar
