#include "favar/importance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "favar/errors.hpp"
#include "favar/stats.hpp"

namespace favar {

ImportanceTable pca_importance(const Eigen::MatrixXd& loadings) {
  ImportanceTable table;
  table.method = "pca";
  table.scores = loadings.cwiseAbs();
  return table;
}

NpeResult npe_importance(const Eigen::MatrixXd& data, int q, int k) {
  if (q < 1 || q > data.cols()) {
    fail(ErrorKind::Parameter, "npe: invalid factor count");
  }
  Eigen::MatrixXd omega = lle_weights(data, k);
  Eigen::Index t = data.rows();
  Eigen::MatrixXd im = Eigen::MatrixXd::Identity(t, t) - omega;
  Eigen::MatrixXd m = im.transpose() * im;

  Eigen::MatrixXd lhs = data.transpose() * m * data;
  Eigen::MatrixXd rhs = data.transpose() * data;
  // Ridge keeps the right-hand side positive definite for collinear
  // panels (duplicate columns are an advertised use).
  rhs.diagonal().array() += 1e-8 * rhs.trace();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (lhs + lhs.transpose()), 0.5 * (rhs + rhs.transpose()));
  if (eig.info() != Eigen::Success) {
    fail(ErrorKind::Dimension, "npe: generalized eigensolve failed");
  }

  NpeResult result;
  result.projection = eig.eigenvectors().leftCols(q);  // ascending: bottom q
  result.table.method = "npe";
  result.table.scores = result.projection.cwiseAbs();
  return result;
}

namespace {

double masked_prediction(const Predictor& predictor, const Eigen::VectorXd& row,
                         const Eigen::VectorXd& background,
                         std::uint64_t mask) {
  Eigen::VectorXd point = background;
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (mask & (1ULL << i)) point(i) = row(i);
  }
  return predictor(point);
}

}  // namespace

ShapleyResult shapley_exact(const Predictor& predictor,
                            const Eigen::VectorXd& row,
                            const Eigen::VectorXd& background) {
  const int n = static_cast<int>(row.size());
  if (n < 1 || n > 20) {
    fail(ErrorKind::Parameter, "exact mode handles 1..20 features");
  }
  if (background.size() != n) {
    fail(ErrorKind::Parameter, "background size mismatch");
  }

  const std::uint64_t n_masks = 1ULL << n;
  std::vector<double> payoff(n_masks);
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    payoff[mask] = masked_prediction(predictor, row, background, mask);
  }

  // Coalition weights |S|! (K-|S|-1)! / K!.
  std::vector<double> weight(static_cast<std::size_t>(n));
  double n_fact = std::tgamma(static_cast<double>(n) + 1.0);
  for (int s = 0; s < n; ++s) {
    weight[static_cast<std::size_t>(s)] =
        std::tgamma(static_cast<double>(s) + 1.0) *
        std::tgamma(static_cast<double>(n - s)) / n_fact;
  }

  ShapleyResult result;
  result.phi = Eigen::VectorXd::Zero(n);
  result.phi0 = payoff[0];
  result.standard_error = Eigen::VectorXd::Zero(n);
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    int size = static_cast<int>(__builtin_popcountll(mask));
    for (int k = 0; k < n; ++k) {
      if (mask & (1ULL << k)) continue;
      result.phi(k) += weight[static_cast<std::size_t>(size)] *
                       (payoff[mask | (1ULL << k)] - payoff[mask]);
    }
  }
  return result;
}

ShapleyResult shapley_sampled(const Predictor& predictor,
                              const Eigen::VectorXd& row,
                              const Eigen::VectorXd& background,
                              int permutations, Rng& rng) {
  const int n = static_cast<int>(row.size());
  if (n < 1 || n > 63) fail(ErrorKind::Parameter, "too many features");
  if (permutations < 100) {
    fail(ErrorKind::Parameter,
         "sampled mode needs >= 100 permutations per feature");
  }

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(n);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  long samples = 0;
  for (int rep = 0; rep < permutations; ++rep) {
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(rng.index(static_cast<std::uint64_t>(i) + 1));
      std::swap(order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(j)]);
    }
    // Walk the permutation forwards and reversed (antithetic pair).
    for (int pass = 0; pass < 2; ++pass) {
      std::uint64_t mask = 0;
      double prev = masked_prediction(predictor, row, background, 0);
      for (int pos = 0; pos < n; ++pos) {
        int feature = pass == 0 ? order[static_cast<std::size_t>(pos)]
                                : order[static_cast<std::size_t>(n - 1 - pos)];
        mask |= (1ULL << feature);
        double cur = masked_prediction(predictor, row, background, mask);
        double contribution = cur - prev;
        sum(feature) += contribution;
        sum_sq(feature) += contribution * contribution;
        prev = cur;
      }
      ++samples;
    }
  }

  ShapleyResult result;
  result.phi = sum / static_cast<double>(samples);
  result.phi0 = masked_prediction(predictor, row, background, 0);
  result.standard_error.resize(n);
  for (int k = 0; k < n; ++k) {
    double mean_sq = sum_sq(k) / static_cast<double>(samples);
    double var = std::max(0.0, mean_sq - result.phi(k) * result.phi(k));
    result.standard_error(k) =
        std::sqrt(var / static_cast<double>(samples));
  }
  return result;
}

FactorAlignment align_factors(const Eigen::MatrixXd& reference,
                              const Eigen::MatrixXd& other) {
  if (reference.rows() != other.rows() || reference.cols() != other.cols()) {
    fail(ErrorKind::Alignment, "factor sets must share T and Q");
  }
  const int q = static_cast<int>(reference.cols());
  FactorAlignment alignment;
  alignment.correlations.resize(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      alignment.correlations(i, j) =
          correlation(reference.col(i), other.col(j));
    }
  }
  std::vector<bool> taken(static_cast<std::size_t>(q), false);
  for (int i = 0; i < q; ++i) {
    int best = -1;
    double best_abs = -1.0;
    for (int j = 0; j < q; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      double a = std::abs(alignment.correlations(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = j;
      }
    }
    taken[static_cast<std::size_t>(best)] = true;
    alignment.permutation.push_back(best);
    alignment.signs.push_back(alignment.correlations(i, best) < 0.0 ? -1.0
                                                                    : 1.0);
  }
  return alignment;
}

Eigen::MatrixXd apply_alignment(const Eigen::MatrixXd& other,
                                const FactorAlignment& alignment) {
  Eigen::MatrixXd out(other.rows(), other.cols());
  for (std::size_t i = 0; i < alignment.permutation.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) =
        alignment.signs[i] *
        other.col(alignment.permutation[i]);
  }
  return out;
}

GroupSummary group_importance(const ImportanceTable& table,
                              const std::vector<std::string>& variable_groups) {
  const Eigen::Index n = table.scores.rows();
  const Eigen::Index q = table.scores.cols();
  if (static_cast<Eigen::Index>(variable_groups.size()) != n) {
    fail(ErrorKind::Metadata, "every variable needs a group label");
  }
  GroupSummary summary;
  for (const auto& g : variable_groups) {
    if (std::find(summary.groups.begin(), summary.groups.end(), g) ==
        summary.groups.end()) {
      summary.groups.push_back(g);
    }
  }
  summary.mean_scores.resize(
      static_cast<Eigen::Index>(summary.groups.size()), q);
  for (std::size_t gi = 0; gi < summary.groups.size(); ++gi) {
    for (Eigen::Index fq = 0; fq < q; ++fq) {
      double total = 0.0;
      long count = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (variable_groups[static_cast<std::size_t>(i)] !=
            summary.groups[gi]) {
          continue;
        }
        total += table.scores(i, fq);
        ++count;
      }
      summary.mean_scores(static_cast<Eigen::Index>(gi), fq) =
          count > 0 ? total / static_cast<double>(count)
                    : std::numeric_limits<double>::quiet_NaN();
    }
  }
  for (Eigen::Index fq = 0; fq < q; ++fq) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return table.scores(a, fq) > table.scores(b, fq);
    });
    if (idx.size() > 15) idx.resize(15);
    summary.top_variables.push_back(std::move(idx));
  }
  return summary;
}

}  // namespace favar
