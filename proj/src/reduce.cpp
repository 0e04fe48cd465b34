#include "favar/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "favar/errors.hpp"
#include "favar/stats.hpp"

namespace favar {

ReducerKind parse_reducer(const std::string& text) {
  if (text == "linear" || text == "pca") return ReducerKind::Pca;
  if (text == "lle") return ReducerKind::Lle;
  if (text == "ae" || text == "autoencoder") return ReducerKind::Autoencoder;
  fail(ErrorKind::Parameter, "unknown model '" + text + "'");
}

std::string reducer_name(ReducerKind kind) {
  switch (kind) {
    case ReducerKind::Pca:
      return "linear";
    case ReducerKind::Lle:
      return "lle";
    default:
      return "ae";
  }
}

Eigen::MatrixXd FactorSet::map_rows(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd raw;
  if (spec.kind == ReducerKind::Autoencoder) {
    raw = encoder.forward(rows);
  } else {
    raw = rows * linear_map;
  }
  raw.rowwise() -= map_shift;
  raw.array().rowwise() *= map_scale.array();
  return raw;
}

namespace {

void check_dims(const Eigen::MatrixXd& data, int q) {
  if (q < 1) fail(ErrorKind::Parameter, "q must be positive");
  if (q > std::min(data.rows(), data.cols())) {
    fail(ErrorKind::Dimension, "q exceeds min(T, N)");
  }
}

// Center columns and scale each to unit sample variance; bakes the
// adjustment into (shift, scale) so out-of-sample rows get the same map.
void center_and_scale(FactorSet& fs) {
  Eigen::Index q = fs.factors.cols();
  fs.map_shift = fs.factors.colwise().mean();
  fs.factors.rowwise() -= fs.map_shift;
  fs.map_scale = Eigen::RowVectorXd::Ones(q);
  for (Eigen::Index j = 0; j < q; ++j) {
    double sd = std::sqrt(fs.factors.col(j).squaredNorm() /
                          static_cast<double>(fs.factors.rows() - 1));
    if (sd > 1e-12) {
      fs.map_scale(j) = 1.0 / sd;
      fs.factors.col(j) *= fs.map_scale(j);
    }
  }
}

}  // namespace

FactorSet pca_reduce(const Eigen::MatrixXd& data, int q) {
  check_dims(data, q);
  Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  Eigen::MatrixXd gram = centered.transpose() * centered;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) {
    fail(ErrorKind::Dimension, "eigendecomposition failed");
  }

  Eigen::Index n = data.cols();
  Eigen::MatrixXd loadings(n, q);
  Eigen::VectorXd ev(q);
  double total = eig.eigenvalues().cwiseMax(0.0).sum();
  for (int j = 0; j < q; ++j) {
    Eigen::Index src = n - 1 - j;  // eigenvalues come back ascending
    Eigen::VectorXd v = eig.eigenvectors().col(src);
    Eigen::Index arg_max = 0;
    v.cwiseAbs().maxCoeff(&arg_max);
    if (v(arg_max) < 0.0) v = -v;
    loadings.col(j) = v;
    ev(j) = total > 0.0 ? std::max(eig.eigenvalues()(src), 0.0) / total : 0.0;
  }

  FactorSet fs;
  fs.spec.kind = ReducerKind::Pca;
  fs.spec.q = q;
  fs.linear_map = loadings;
  fs.factors = centered * loadings;
  fs.explained_variance = ev;
  // Out-of-sample rows must see the same column centering.
  fs.map_shift = data.colwise().mean() * loadings;
  fs.map_scale = Eigen::RowVectorXd::Ones(q);
  return fs;
}

Eigen::MatrixXd lle_weights(const Eigen::MatrixXd& data, int k) {
  Eigen::Index t = data.rows();
  if (k < 1 || k >= t) fail(ErrorKind::Parameter, "lle: need 1 <= k < T");

  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(t, t);
  for (Eigen::Index i = 0; i < t; ++i) {
    // k nearest rows by Euclidean distance, self excluded, distance
    // ties broken by index for determinism.
    std::vector<std::pair<double, Eigen::Index>> dist;
    dist.reserve(static_cast<std::size_t>(t - 1));
    for (Eigen::Index j = 0; j < t; ++j) {
      if (j == i) continue;
      dist.emplace_back((data.row(i) - data.row(j)).squaredNorm(), j);
    }
    std::sort(dist.begin(), dist.end());
    Eigen::MatrixXd diff(k, data.cols());
    std::vector<Eigen::Index> nbr(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) {
      nbr[static_cast<std::size_t>(m)] = dist[static_cast<std::size_t>(m)].second;
      diff.row(m) = data.row(i) - data.row(nbr[static_cast<std::size_t>(m)]);
    }
    Eigen::MatrixXd gram = diff * diff.transpose();
    double ridge = 1e-3 * gram.trace() / static_cast<double>(k) + 1e-12;
    gram.diagonal().array() += ridge;
    Eigen::VectorXd w = gram.ldlt().solve(Eigen::VectorXd::Ones(k));
    double sum = w.sum();
    if (sum == 0.0) fail(ErrorKind::Dimension, "lle: degenerate local weights");
    w /= sum;
    for (int m = 0; m < k; ++m) omega(i, nbr[static_cast<std::size_t>(m)]) = w(m);
  }
  return omega;
}

namespace {

// Bottom q+1 eigenvectors of M = (I - Omega)'(I - Omega); the constant
// bottom one is discarded.
Eigen::MatrixXd lle_embedding(const Eigen::MatrixXd& omega, int q) {
  Eigen::Index t = omega.rows();
  Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(t, t);
  Eigen::MatrixXd im = ident - omega;
  Eigen::MatrixXd m = im.transpose() * im;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) {
    fail(ErrorKind::Dimension, "lle: eigendecomposition failed");
  }
  Eigen::MatrixXd emb(t, q);
  for (int j = 0; j < q; ++j) emb.col(j) = eig.eigenvectors().col(j + 1);
  return emb;
}

}  // namespace

FactorSet lle_reduce(const Eigen::MatrixXd& data, int q, std::optional<int> k) {
  check_dims(data, q);
  int kk;
  if (k.has_value()) {
    kk = *k;
  } else {
    std::vector<int> candidates;
    for (int c : {6, 8, 10, 12, 16, 20}) {
      if (c > q && c < data.rows()) candidates.push_back(c);
    }
    if (candidates.empty()) candidates.push_back(q + 1);
    kk = select_lle_k(data, q, candidates);
  }
  if (kk <= q) fail(ErrorKind::Parameter, "lle: k must exceed q");
  if (kk >= data.rows()) fail(ErrorKind::Parameter, "lle: k must be < T");

  FactorSet fs;
  fs.spec.kind = ReducerKind::Lle;
  fs.spec.q = q;
  fs.spec.lle_k = kk;
  Eigen::MatrixXd omega = lle_weights(data, kk);
  fs.factors = lle_embedding(omega, q);
  center_and_scale(fs);
  // New rows are mapped through the least-squares fit of the finished
  // embedding on the training data, so the centering/scaling above is
  // already folded in.
  fs.linear_map = data.completeOrthogonalDecomposition().solve(fs.factors);
  fs.map_shift = Eigen::RowVectorXd::Zero(q);
  fs.map_scale = Eigen::RowVectorXd::Ones(q);
  return fs;
}

double lle_embedding_score(const Eigen::MatrixXd& data, int q, int k) {
  FactorSet fs = lle_reduce(data, q, k);
  Eigen::MatrixXd coef =
      fs.factors.completeOrthogonalDecomposition().solve(data);
  Eigen::MatrixXd resid = data - fs.factors * coef;
  return resid.squaredNorm() / static_cast<double>(data.rows() * data.cols());
}

int select_lle_k(const Eigen::MatrixXd& data, int q,
                 const std::vector<int>& candidates) {
  if (candidates.empty()) {
    fail(ErrorKind::Parameter, "select_lle_k: no candidates");
  }
  int best_k = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (int k : candidates) {
    double score = lle_embedding_score(data, q, k);
    if (score < best_score ||
        (score == best_score && k < best_k)) {
      best_score = score;
      best_k = k;
    }
  }
  return best_k;
}

FactorSet autoencoder_reduce(const Eigen::MatrixXd& data,
                             const AutoencoderSpec& spec, int q) {
  check_dims(data, q);
  for (std::size_t i = 0; i < spec.hidden_sizes.size(); ++i) {
    if (spec.hidden_sizes[i] <= q) {
      fail(ErrorKind::Parameter, "autoencoder hidden sizes must exceed q");
    }
    if (i > 0 && spec.hidden_sizes[i] >= spec.hidden_sizes[i - 1]) {
      fail(ErrorKind::Parameter,
           "autoencoder hidden sizes must be strictly decreasing");
    }
  }
  if (spec.epochs < 1 || spec.minibatch < 1) {
    fail(ErrorKind::Parameter, "autoencoder epochs/minibatch must be >= 1");
  }

  int n = static_cast<int>(data.cols());
  std::vector<int> sizes;
  sizes.push_back(n);
  for (int h : spec.hidden_sizes) sizes.push_back(h);
  sizes.push_back(q);
  for (auto it = spec.hidden_sizes.rbegin(); it != spec.hidden_sizes.rend();
       ++it) {
    sizes.push_back(*it);
  }
  sizes.push_back(n);

  Rng rng = Rng(spec.seed).substream("ae-init");
  Net net(sizes, spec.activation, rng);
  // The bottleneck layer stays linear so factors are two-sided.
  net.layers()[spec.hidden_sizes.size()].act = Activation::Identity;

  Adam adam(net);
  Rng shuffle_rng = Rng(spec.seed).substream("ae-shuffle");
  Eigen::Index t = data.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(spec.epochs));
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    // Fisher-Yates from the dedicated shuffle stream.
    for (Eigen::Index i = t - 1; i > 0; --i) {
      auto j = static_cast<Eigen::Index>(
          shuffle_rng.index(static_cast<std::uint64_t>(i) + 1));
      std::swap(order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(j)]);
    }
    double sse = 0.0;
    for (Eigen::Index start = 0; start < t; start += spec.minibatch) {
      Eigen::Index bsz = std::min<Eigen::Index>(spec.minibatch, t - start);
      Eigen::MatrixXd batch(bsz, n);
      for (Eigen::Index r = 0; r < bsz; ++r) {
        batch.row(r) = data.row(order[static_cast<std::size_t>(start + r)]);
      }
      Gradients g = net.gradient(batch, batch);
      adam.update(net, g);
      Eigen::MatrixXd out = net.forward(batch);
      double batch_sse = (out - batch).squaredNorm();
      if (!std::isfinite(batch_sse)) {
        fail(ErrorKind::Divergence,
             "autoencoder loss diverged at epoch " + std::to_string(epoch));
      }
      sse += batch_sse;
    }
    curve.push_back(sse / static_cast<double>(t * n));
  }

  FactorSet fs;
  fs.spec.kind = ReducerKind::Autoencoder;
  fs.spec.q = q;
  fs.spec.ae = spec;
  fs.training_loss_curve = curve;
  fs.encoder = Net();
  for (std::size_t l = 0; l <= spec.hidden_sizes.size(); ++l) {
    fs.encoder.layers().push_back(net.layers()[l]);
  }
  fs.factors = fs.encoder.forward(data);
  center_and_scale(fs);
  return fs;
}

FactorSet reduce(const Eigen::MatrixXd& data, const ReducerSpec& spec) {
  switch (spec.kind) {
    case ReducerKind::Pca:
      return pca_reduce(data, spec.q);
    case ReducerKind::Lle:
      return lle_reduce(data, spec.q, spec.lle_k);
    default:
      return autoencoder_reduce(data, spec.ae, spec.q);
  }
}

FactorSet reduce(const Panel& panel, const ReducerSpec& spec) {
  return reduce(panel.values, spec);
}

}  // namespace favar
