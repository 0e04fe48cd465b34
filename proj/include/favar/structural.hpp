#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "favar/bvar.hpp"

namespace favar {

// Moore-Penrose pseudoinverse via SVD; singular values below
// max(rows, cols) * sigma_max * 1e-12 are treated as zero.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m);

struct LinearizedLoadings {
  Eigen::MatrixXd theta;  // regressors×targets
  Eigen::VectorXd fitted_residual_variance;
};

// theta = factors^+ panel: least squares when factors has full column
// rank, minimum-norm fitted values otherwise.
LinearizedLoadings linearize(const Eigen::MatrixXd& factors,
                             const Eigen::MatrixXd& panel);

enum class SchemeKind { RecursivePolicy, ProxyFirst };

struct IdentificationScheme {
  SchemeKind kind = SchemeKind::RecursivePolicy;
  int shock_index = 0;       // position of the shocked equation
  double shock_size = -1.0;  // -1.00 for the policy cut, +0.25 uncertainty
};

// Lower-triangular B with B B' = Sigma_eps for this draw.
Eigen::MatrixXd identify(const BvarDraw& draw,
                         const IdentificationScheme& scheme);

// Column shock_index of B, rescaled so the shocked variable moves by
// shock_size at horizon 0.
Eigen::VectorXd impact_column(const Eigen::MatrixXd& b, int shock_index,
                              double shock_size);

// Companion-form transition matrix (Kp×Kp) of a coefficient draw.
Eigen::MatrixXd companion_matrix(const BvarDraw& draw, int n_var, int p);
double spectral_radius(const Eigen::MatrixXd& m);

// How an IRF target is assembled from the VAR responses: either a VAR
// variable's own response row (var_index >= 0) or a loading vector over
// the VAR variables (zero entries for components the target must not
// load on). `scale` converts standardized responses to original units.
struct IrfTarget {
  std::string name;
  int var_index = -1;
  Eigen::VectorXd loading;
  double scale = 1.0;
  std::string units = "standardized";
};

struct IrfCurve {
  std::string name;
  std::string units;
  Eigen::VectorXd q16, q50, q84;  // length horizons+1
};

struct IrfResult {
  int horizons = 0;
  std::vector<IrfCurve> curves;
  int excluded_draws = 0;  // companion spectral radius > 1.15
  int used_draws = 0;
};

// Per-draw impact propagation through the companion matrix, mapped to
// targets, reduced to pointwise 16/50/84 posterior quantiles.
IrfResult irf(const BvarPosterior& posterior,
              const IdentificationScheme& scheme, int horizons, int p,
              const std::vector<IrfTarget>& targets);

std::string irf_to_csv(const IrfResult& result);

// First principal component of per-series forecast-error volatility:
// AR(4) one-step residuals, EWMA (decay 0.94) of their squares, log
// paths, PC1 of the centered volatility panel, standardized and signed
// to correlate positively with the cross-sectional mean volatility.
// The first 4 entries (before residuals exist) repeat the first value.
Eigen::VectorXd uncertainty_index(const Eigen::MatrixXd& standardized_panel);

}  // namespace favar
