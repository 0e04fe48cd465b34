#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "favar/reduce.hpp"
#include "favar/rng.hpp"

namespace favar {

struct ImportanceTable {
  std::string method;                 // "pca", "npe", "shapley"
  Eigen::MatrixXd scores;             // variables×factors, nonnegative
  std::vector<std::string> variables;
};

// score(i, q) = |loading|; loadings as produced by pca_reduce.
ImportanceTable pca_importance(const Eigen::MatrixXd& loadings);

// Neighborhood-preserving embedding: bottom-q solutions of the
// generalized eigenproblem (D' M D) p = lambda (D'D) p with the LLE
// weight matrix's M; scores are |P|, and D*P is the linear stand-in for
// the LLE embedding.
struct NpeResult {
  ImportanceTable table;
  Eigen::MatrixXd projection;  // N×q
};
NpeResult npe_importance(const Eigen::MatrixXd& data, int q, int k);

using Predictor = std::function<double(const Eigen::VectorXd&)>;

struct ShapleyResult {
  Eigen::VectorXd phi;  // per-feature attribution
  double phi0 = 0.0;    // prediction at the all-background point
  Eigen::VectorXd standard_error;  // zero in exact mode
};

// Exact Shapley attribution of predictor(row) against a mean-replacement
// baseline: coalition payoff f(S) evaluates the predictor with features
// outside S set to `background`. Enumerates all 2^K coalitions.
ShapleyResult shapley_exact(const Predictor& predictor,
                            const Eigen::VectorXd& row,
                            const Eigen::VectorXd& background);

// Antithetic permutation-sampling estimator of the same attribution;
// `permutations` forward/reverse pairs are drawn (>= 100 required).
ShapleyResult shapley_sampled(const Predictor& predictor,
                              const Eigen::VectorXd& row,
                              const Eigen::VectorXd& background,
                              int permutations, Rng& rng);

struct FactorAlignment {
  std::vector<int> permutation;  // reference index -> other index
  std::vector<double> signs;     // +1 / -1 per reference factor
  Eigen::MatrixXd correlations;  // reference×other
};

// Greedy match of `other` factors to `reference` ones by descending
// absolute correlation; ties resolved toward the lowest index.
FactorAlignment align_factors(const Eigen::MatrixXd& reference,
                              const Eigen::MatrixXd& other);
Eigen::MatrixXd apply_alignment(const Eigen::MatrixXd& other,
                                const FactorAlignment& alignment);

struct GroupSummary {
  std::vector<std::string> groups;
  Eigen::MatrixXd mean_scores;  // groups×factors; NaN for empty groups
  // Per factor: variable indices ranked by score, at most 15 entries.
  std::vector<std::vector<int>> top_variables;
};

GroupSummary group_importance(const ImportanceTable& table,
                              const std::vector<std::string>& variable_groups);

}  // namespace favar
