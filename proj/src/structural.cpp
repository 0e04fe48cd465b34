#include "favar/structural.hpp"

#include <cmath>
#include <sstream>

#include "favar/errors.hpp"
#include "favar/io.hpp"
#include "favar/stats.hpp"

namespace favar {

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
               svd.singularValues()(0) * 1e-12;
  Eigen::VectorXd inv_sv = svd.singularValues();
  for (Eigen::Index i = 0; i < inv_sv.size(); ++i) {
    inv_sv(i) = inv_sv(i) > tol ? 1.0 / inv_sv(i) : 0.0;
  }
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

LinearizedLoadings linearize(const Eigen::MatrixXd& factors,
                             const Eigen::MatrixXd& panel) {
  if (factors.rows() != panel.rows()) {
    fail(ErrorKind::Dimension, "linearize: row mismatch");
  }
  LinearizedLoadings out;
  out.theta = pseudo_inverse(factors) * panel;
  Eigen::MatrixXd resid = panel - factors * out.theta;
  out.fitted_residual_variance =
      resid.colwise().squaredNorm() / static_cast<double>(panel.rows());
  return out;
}

Eigen::MatrixXd identify(const BvarDraw& draw,
                         const IdentificationScheme& scheme) {
  Eigen::MatrixXd cov = implied_covariance(draw);
  if (scheme.shock_index < 0 || scheme.shock_index >= cov.rows()) {
    fail(ErrorKind::Identification, "shock index out of range");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    fail(ErrorKind::Identification, "covariance not positive definite");
  }
  return llt.matrixL();
}

Eigen::VectorXd impact_column(const Eigen::MatrixXd& b, int shock_index,
                              double shock_size) {
  double own = b(shock_index, shock_index);
  if (!(std::abs(own) > 0.0)) {
    fail(ErrorKind::Identification, "degenerate impact on shocked variable");
  }
  return b.col(shock_index) * (shock_size / own);
}

Eigen::MatrixXd companion_matrix(const BvarDraw& draw, int n_var, int p) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_var * p, n_var * p);
  // draw.a row k holds (lag1 coefs, ..., lagp coefs, intercept).
  c.topRows(n_var) = draw.a.leftCols(n_var * p);
  if (p > 1) {
    c.bottomLeftCorner(n_var * (p - 1), n_var * (p - 1))
        .setIdentity();
  }
  return c;
}

double spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> eig(m, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

IrfResult irf(const BvarPosterior& posterior,
              const IdentificationScheme& scheme, int horizons, int p,
              const std::vector<IrfTarget>& targets) {
  if (posterior.draws.empty()) fail(ErrorKind::Parameter, "no draws");
  if (horizons < 0) fail(ErrorKind::Parameter, "negative horizon");
  int n_var = static_cast<int>(posterior.draws.front().a.rows());

  IrfResult result;
  result.horizons = horizons;

  // paths[target][h] collects one value per retained draw.
  std::vector<std::vector<std::vector<double>>> paths(
      targets.size(),
      std::vector<std::vector<double>>(static_cast<std::size_t>(horizons + 1)));

  for (const auto& draw : posterior.draws) {
    Eigen::MatrixXd comp = companion_matrix(draw, n_var, p);
    if (spectral_radius(comp) > 1.15) {
      ++result.excluded_draws;
      continue;
    }
    Eigen::MatrixXd b = identify(draw, scheme);
    Eigen::VectorXd shock = impact_column(b, scheme.shock_index,
                                          scheme.shock_size);
    Eigen::VectorXd state = Eigen::VectorXd::Zero(n_var * p);
    state.head(n_var) = shock;
    for (int h = 0; h <= horizons; ++h) {
      if (h > 0) state = comp * state;
      Eigen::VectorXd resp = state.head(n_var);
      for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        const auto& target = targets[ti];
        double value;
        if (target.var_index >= 0) {
          value = resp(target.var_index);
        } else {
          if (target.loading.size() != n_var) {
            fail(ErrorKind::Dimension, "target loading length mismatch");
          }
          value = target.loading.dot(resp);
        }
        paths[ti][static_cast<std::size_t>(h)].push_back(value * target.scale);
      }
    }
    ++result.used_draws;
  }
  if (result.used_draws == 0) {
    fail(ErrorKind::Identification, "all draws excluded as explosive");
  }

  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    IrfCurve curve;
    curve.name = targets[ti].name;
    curve.units = targets[ti].units;
    curve.q16.resize(horizons + 1);
    curve.q50.resize(horizons + 1);
    curve.q84.resize(horizons + 1);
    for (int h = 0; h <= horizons; ++h) {
      auto& vals = paths[ti][static_cast<std::size_t>(h)];
      curve.q16(h) = quantile(vals, 0.16);
      curve.q50(h) = quantile(vals, 0.50);
      curve.q84(h) = quantile(vals, 0.84);
    }
    result.curves.push_back(std::move(curve));
  }
  return result;
}

std::string irf_to_csv(const IrfResult& result) {
  std::ostringstream out;
  out << "variable,horizon,q16,q50,q84,units\n";
  for (const auto& curve : result.curves) {
    for (int h = 0; h <= result.horizons; ++h) {
      out << curve.name << ',' << h << ',' << format_double(curve.q16(h))
          << ',' << format_double(curve.q50(h)) << ','
          << format_double(curve.q84(h)) << ',' << curve.units << '\n';
    }
  }
  return out.str();
}

Eigen::VectorXd uncertainty_index(const Eigen::MatrixXd& panel) {
  constexpr int kLags = 4;
  constexpr double kDecay = 0.94;
  Eigen::Index t = panel.rows();
  Eigen::Index n = panel.cols();
  if (t <= kLags + 8) fail(ErrorKind::Parameter, "panel too short for AR(4)");

  Eigen::MatrixXd logvol(t - kLags, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index rows = t - kLags;
    Eigen::MatrixXd x(rows, kLags + 1);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      y(i) = panel(i + kLags, j);
      x(i, 0) = 1.0;
      for (int lag = 1; lag <= kLags; ++lag) x(i, lag) = panel(i + kLags - lag, j);
    }
    Eigen::VectorXd beta =
        (x.transpose() * x).ldlt().solve(x.transpose() * y);
    Eigen::VectorXd resid = y - x * beta;
    double level = resid.squaredNorm() / static_cast<double>(rows);
    if (!(level > 0.0)) {
      fail(ErrorKind::Degenerate, "volatility panel degenerate");
    }
    double ewma = level;
    for (Eigen::Index i = 0; i < rows; ++i) {
      ewma = kDecay * ewma + (1.0 - kDecay) * resid(i) * resid(i);
      logvol(i, j) = std::log(ewma + 1e-300);
    }
  }

  // First principal component of the volatility panel.
  Eigen::RowVectorXd means = logvol.colwise().mean();
  Eigen::MatrixXd centered = logvol.rowwise() - means;
  if (!(centered.squaredNorm() > 0.0)) {
    fail(ErrorKind::Degenerate, "volatility panel degenerate");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centered.transpose() *
                                                     centered);
  Eigen::VectorXd pc = centered * eig.eigenvectors().col(n - 1);

  double sd = std::sqrt(pc.squaredNorm() / static_cast<double>(pc.size() - 1));
  if (!(sd > 0.0)) fail(ErrorKind::Degenerate, "volatility panel degenerate");
  pc /= sd;
  Eigen::VectorXd mean_vol = logvol.rowwise().mean();
  if (stddev(mean_vol) > 0.0 && correlation(pc, mean_vol) < 0.0) pc = -pc;

  Eigen::VectorXd index(t);
  index.head(kLags).setConstant(pc(0));
  index.tail(t - kLags) = pc;
  return index;
}

}  // namespace favar
