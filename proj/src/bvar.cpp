#include "favar/bvar.hpp"

#include <cmath>

#include "favar/errors.hpp"
#include "favar/stats.hpp"

namespace favar {

VarData build_var_data(const Eigen::MatrixXd& y, int p) {
  if (p < 1) fail(ErrorKind::Parameter, "lag order must be >= 1");
  Eigen::Index t = y.rows();
  Eigen::Index k = y.cols();
  if (t <= p) fail(ErrorKind::Parameter, "not enough observations for p lags");
  VarData data;
  data.y = y;
  data.p = p;
  data.y_eff = y.bottomRows(t - p);
  data.x.resize(t - p, k * p + 1);
  for (Eigen::Index row = 0; row < t - p; ++row) {
    for (int lag = 1; lag <= p; ++lag) {
      data.x.block(row, static_cast<Eigen::Index>(lag - 1) * k, 1, k) =
          y.row(row + p - lag);
    }
    data.x(row, k * p) = 1.0;
  }
  return data;
}

Eigen::VectorXd one_step_regressors(const Eigen::MatrixXd& y, int p) {
  Eigen::Index t = y.rows();
  Eigen::Index k = y.cols();
  if (t < p) fail(ErrorKind::Parameter, "not enough rows for p lags");
  Eigen::VectorXd x(k * p + 1);
  for (int lag = 1; lag <= p; ++lag) {
    x.segment(static_cast<Eigen::Index>(lag - 1) * k, k) = y.row(t - lag);
  }
  x(k * p) = 1.0;
  return x;
}

namespace {

// AR(4) OLS residual variance with intercept; falls back to the sample
// variance when the design is singular or too short.
double ar4_residual_variance(const Eigen::VectorXd& series,
                             std::vector<std::string>* warnings,
                             const std::string& label) {
  constexpr int kLags = 4;
  Eigen::Index n = series.size() - kLags;
  if (n < kLags + 3) {
    if (warnings) warnings->push_back(label + ": series too short for AR(4)");
    return variance(series);
  }
  Eigen::MatrixXd x(n, kLags + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = series(i + kLags);
    x(i, 0) = 1.0;
    for (int lag = 1; lag <= kLags; ++lag) x(i, lag) = series(i + kLags - lag);
  }
  Eigen::MatrixXd xtx = x.transpose() * x;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(xtx);
  if (!lu.isInvertible()) {
    if (warnings) warnings->push_back(label + ": AR(4) design singular");
    return variance(series);
  }
  Eigen::VectorXd beta = lu.solve(x.transpose() * y);
  double ssr = (y - x * beta).squaredNorm();
  return ssr / static_cast<double>(n - (kLags + 1));
}

}  // namespace

MinnesotaPrior build_prior(const VarData& data,
                           const std::vector<bool>& stationary_flags) {
  Eigen::Index k = data.y.cols();
  if (static_cast<Eigen::Index>(stationary_flags.size()) != k) {
    fail(ErrorKind::Parameter, "stationary_flags size mismatch");
  }
  if (data.y.rows() - data.p < 20) {
    fail(ErrorKind::Parameter,
         "need at least 20 post-lag observations to estimate sigma_hat");
  }
  MinnesotaPrior prior;
  prior.sigma_hat.resize(k);
  prior.nonstationary.resize(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    bool nonstat = !stationary_flags[static_cast<std::size_t>(j)];
    prior.nonstationary[static_cast<std::size_t>(j)] = nonstat;
    Eigen::VectorXd series = data.y.col(j);
    if (nonstat) {
      series = (data.y.col(j).tail(data.y.rows() - 1) -
                data.y.col(j).head(data.y.rows() - 1))
                   .eval();
    }
    double v = ar4_residual_variance(series, &prior.warnings,
                                     "variable " + std::to_string(j));
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::Degenerate,
           "sigma_hat nonpositive for variable " + std::to_string(j));
    }
    prior.sigma_hat(j) = v;
  }
  return prior;
}

Eigen::VectorXd prior_mean_vector(const MinnesotaPrior& prior, int k, int n_var,
                                  int p) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n_var * p + 1);
  if (prior.nonstationary[static_cast<std::size_t>(k)]) mean(k) = 1.0;
  return mean;
}

Eigen::VectorXd prior_variance_vector(const MinnesotaPrior& prior, int k,
                                      int n_var, int p, double xi1,
                                      double xi2) {
  Eigen::VectorXd var(n_var * p + 1);
  for (int lag = 1; lag <= p; ++lag) {
    double r2 = static_cast<double>(lag) * lag;
    for (int j = 0; j < n_var; ++j) {
      Eigen::Index idx = static_cast<Eigen::Index>(lag - 1) * n_var + j;
      if (j == k) {
        var(idx) = xi1 / r2;
      } else {
        var(idx) = xi2 * prior.sigma_hat(k) / (r2 * prior.sigma_hat(j));
      }
    }
  }
  var(n_var * p) = prior.xi3;
  return var;
}

ConditionalPosterior conditional_posterior(const Eigen::MatrixXd& xtx,
                                           const Eigen::VectorXd& xty,
                                           const Eigen::VectorXd& prior_mean,
                                           const Eigen::VectorXd& prior_var,
                                           double sigma) {
  Eigen::Index m = xtx.rows();
  Eigen::MatrixXd precision = xtx / sigma;
  precision.diagonal() += prior_var.cwiseInverse();
  Eigen::VectorXd shift = xty / sigma + prior_mean.cwiseQuotient(prior_var);

  double jitter = 0.0;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Eigen::MatrixXd prec = precision;
    if (jitter > 0.0) prec.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(prec);
    if (llt.info() == Eigen::Success) {
      ConditionalPosterior post;
      post.mean = llt.solve(shift);
      post.cov = llt.solve(Eigen::MatrixXd::Identity(m, m));
      Eigen::LLT<Eigen::MatrixXd> cov_llt(
          0.5 * (post.cov + post.cov.transpose()));
      if (cov_llt.info() == Eigen::Success) {
        post.chol = cov_llt.matrixL();
        return post;
      }
    }
    jitter = jitter == 0.0 ? 1e-10 : jitter * 10.0;
  }
  fail(ErrorKind::Sampler, "coefficient posterior not positive definite");
}

namespace {

double log_normal_density(double x, double mean, double var) {
  double d = x - mean;
  return -0.5 * (std::log(2.0 * M_PI * var) + d * d / var);
}

// Log density of the current lag-coefficient draws under the Minnesota
// prior, restricted to own-lag terms (xi1) or cross-lag terms (xi2):
// the other block cancels in each Metropolis ratio.
double hyper_log_target(const Eigen::MatrixXd& a, const MinnesotaPrior& prior,
                        int n_var, int p, double xi1, double xi2,
                        bool own_block) {
  double total = 0.0;
  for (int k = 0; k < n_var; ++k) {
    for (int lag = 1; lag <= p; ++lag) {
      double r2 = static_cast<double>(lag) * lag;
      for (int j = 0; j < n_var; ++j) {
        bool own = (j == k);
        if (own != own_block) continue;
        Eigen::Index idx = static_cast<Eigen::Index>(lag - 1) * n_var + j;
        double mean =
            (own && lag == 1 && prior.nonstationary[static_cast<std::size_t>(k)])
                ? 1.0
                : 0.0;
        double var = own ? xi1 / r2 : xi2 * prior.sigma_hat(k) / (r2 * prior.sigma_hat(j));
        total += log_normal_density(a(k, idx), mean, var);
      }
    }
  }
  return total;
}

}  // namespace

BvarPosterior gibbs_sample(const VarData& data, const MinnesotaPrior& prior,
                           const SamplerOptions& options, std::uint64_t seed) {
  if (options.draws < 1 || options.burn < 1) {
    fail(ErrorKind::Parameter, "draws and burn must be >= 1");
  }
  const Eigen::Index n = data.x.rows();
  const int n_var = static_cast<int>(data.y.cols());
  const int p = data.p;
  const Eigen::Index m = data.x.cols();  // Kp + 1

  Rng rng = Rng(seed).substream("sampler");

  const Eigen::MatrixXd xtx = data.x.transpose() * data.x;
  const Eigen::MatrixXd xty = data.x.transpose() * data.y_eff;  // m×K

  // State.
  double xi1 = options.xi1_init;
  double xi2 = options.xi2_init;
  if (!(xi1 > 0.0) || !(xi2 > 0.0)) {
    fail(ErrorKind::Parameter, "xi initial values must be positive");
  }
  Eigen::MatrixXd a(n_var, m);
  for (int k = 0; k < n_var; ++k) {
    a.row(k) = prior_mean_vector(prior, k, n_var, p).transpose();
  }
  Eigen::MatrixXd a0 = Eigen::MatrixXd::Identity(n_var, n_var);
  Eigen::VectorXd sigma = prior.sigma_hat;

  double scale1 = 0.25 * xi1;
  double scale2 = 0.25 * xi2;
  int window1 = 0, window2 = 0, accepted1 = 0, accepted2 = 0;
  long post_accept1 = 0, post_accept2 = 0;

  BvarPosterior out;
  out.burn = options.burn;
  out.draws.reserve(static_cast<std::size_t>(options.draws));

  Eigen::MatrixXd fitted(n, n_var);  // X a_k' per equation, current sweep

  const int total_iters = options.burn + options.draws;
  for (int iter = 0; iter < total_iters; ++iter) {
    // Step 1: coefficients, equation by equation.
    for (int k = 0; k < n_var; ++k) {
      Eigen::Index mk = m + k;
      Eigen::MatrixXd xtx_k(mk, mk);
      Eigen::VectorXd xty_k(mk);
      xtx_k.topLeftCorner(m, m) = xtx;
      xty_k.head(m) = xty.col(k);

      // Columns (fitted_i - y_i) for the preceding equations.
      Eigen::MatrixXd g(n, k);
      for (int i = 0; i < k; ++i) g.col(i) = fitted.col(i) - data.y_eff.col(i);
      if (k > 0) {
        xtx_k.topRightCorner(m, k) = data.x.transpose() * g;
        xtx_k.bottomLeftCorner(k, m) = xtx_k.topRightCorner(m, k).transpose();
        xtx_k.bottomRightCorner(k, k) = g.transpose() * g;
        xty_k.tail(k) = g.transpose() * data.y_eff.col(k);
      }

      Eigen::VectorXd prior_mean(mk);
      Eigen::VectorXd prior_var(mk);
      prior_mean.head(m) = prior_mean_vector(prior, k, n_var, p);
      prior_var.head(m) = prior_variance_vector(prior, k, n_var, p, xi1, xi2);
      prior_mean.tail(k).setZero();
      prior_var.tail(k).setConstant(options.a0_prior_var);

      ConditionalPosterior post =
          conditional_posterior(xtx_k, xty_k, prior_mean, prior_var, sigma(k));
      Eigen::VectorXd z(mk);
      for (Eigen::Index i = 0; i < mk; ++i) z(i) = rng.normal();
      Eigen::VectorXd coef = post.mean + post.chol * z;

      a.row(k) = coef.head(m).transpose();
      for (int i = 0; i < k; ++i) a0(k, i) = coef(m + i);
      fitted.col(k) = data.x * coef.head(m);

      // Step 2: structural variance for this equation.
      Eigen::VectorXd resid = data.y_eff.col(k) - data.x * coef.head(m);
      if (k > 0) resid -= g * coef.tail(k);
      double e_k = static_cast<double>(n) / 2.0 + 0.005;
      double d_k = resid.squaredNorm() / 2.0 + 0.005;
      sigma(k) = rng.inverse_gamma(e_k, d_k);
      if (!(sigma(k) > 0.0) || !std::isfinite(sigma(k))) {
        fail(ErrorKind::Sampler,
             "structural variance diverged at iteration " +
                 std::to_string(iter));
      }
    }

    // Step 3: random-walk Metropolis on xi1 and xi2.
    if (options.sample_hyper) {
      double prop1 = xi1 + scale1 * rng.normal();
      if (prop1 > 0.0) {
        double ratio = hyper_log_target(a, prior, n_var, p, prop1, xi2, true) -
                       hyper_log_target(a, prior, n_var, p, xi1, xi2, true);
        if (std::log(rng.uniform() + 1e-300) < ratio) {
          xi1 = prop1;
          ++accepted1;
          if (iter >= options.burn) ++post_accept1;
        }
      }
      ++window1;

      double prop2 = xi2 + scale2 * rng.normal();
      if (prop2 > 0.0) {
        double ratio = hyper_log_target(a, prior, n_var, p, xi1, prop2, false) -
                       hyper_log_target(a, prior, n_var, p, xi1, xi2, false);
        if (std::log(rng.uniform() + 1e-300) < ratio) {
          xi2 = prop2;
          ++accepted2;
          if (iter >= options.burn) ++post_accept2;
        }
      }
      ++window2;

      // Adapt proposal scales toward the 15-30% acceptance band during
      // burn-in only; frozen afterwards to preserve detailed balance.
      if (iter < options.burn && window1 == 50) {
        double rate1 = accepted1 / 50.0;
        if (rate1 > 0.30) scale1 *= 1.1;
        if (rate1 < 0.15) scale1 *= 0.9;
        double rate2 = accepted2 / 50.0;
        if (rate2 > 0.30) scale2 *= 1.1;
        if (rate2 < 0.15) scale2 *= 0.9;
        window1 = window2 = 0;
        accepted1 = accepted2 = 0;
      }
    }

    if (iter >= options.burn) {
      BvarDraw draw;
      draw.a = a;
      draw.a0_tilde = a0;
      draw.sigma_tilde = sigma;
      draw.xi1 = xi1;
      draw.xi2 = xi2;
      out.draws.push_back(std::move(draw));
    }
  }

  out.accept_xi1 = static_cast<double>(post_accept1) / options.draws;
  out.accept_xi2 = static_cast<double>(post_accept2) / options.draws;
  out.scale_xi1 = scale1;
  out.scale_xi2 = scale2;
  return out;
}

Eigen::MatrixXd implied_covariance(const BvarDraw& draw) {
  Eigen::Index k = draw.a0_tilde.rows();
  Eigen::MatrixXd inv = draw.a0_tilde.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(k, k));
  Eigen::MatrixXd cov = inv * draw.sigma_tilde.asDiagonal() * inv.transpose();
  return 0.5 * (cov + cov.transpose());
}

}  // namespace favar
