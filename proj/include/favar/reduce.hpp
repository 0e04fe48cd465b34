#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "favar/nnet.hpp"
#include "favar/panel.hpp"
#include "favar/rng.hpp"

namespace favar {

enum class ReducerKind { Pca, Lle, Autoencoder };

ReducerKind parse_reducer(const std::string& text);  // linear | lle | ae
std::string reducer_name(ReducerKind kind);

struct AutoencoderSpec {
  std::vector<int> hidden_sizes = {126, 86, 46};
  Activation activation = Activation::Relu;
  int epochs = 100;
  int minibatch = 24;
  std::uint64_t seed = 0;
};

struct ReducerSpec {
  ReducerKind kind = ReducerKind::Pca;
  int q = 5;
  std::optional<int> lle_k;  // selected automatically when absent
  AutoencoderSpec ae;
};

// T×Q factors plus everything needed to map new observations into the
// same factor space (loadings for PCA, a least-squares linear map for
// LLE, the trained encoder for the autoencoder).
struct FactorSet {
  Eigen::MatrixXd factors;
  ReducerSpec spec;
  std::optional<Eigen::VectorXd> explained_variance;  // PCA: share per factor
  std::optional<std::vector<double>> training_loss_curve;  // AE only

  Eigen::MatrixXd linear_map;  // N×Q (PCA loadings / LLE map); empty for AE
  Net encoder;                 // AE only
  Eigen::RowVectorXd map_shift;  // post-map centering offset
  Eigen::RowVectorXd map_scale;  // post-map column scaling

  // Factors for new standardized rows, using the frozen fitted map.
  Eigen::MatrixXd map_rows(const Eigen::MatrixXd& rows) const;
};

// Principal components: factors = D * (top-q eigenvectors of D'D); the
// sign of each loading column makes its largest-magnitude entry
// positive; explained_variance holds each component's share of total
// variance.
FactorSet pca_reduce(const Eigen::MatrixXd& data, int q);

// Locally linear embedding over the T rows of the panel. When k is
// absent it is chosen by select_lle_k over a default candidate grid.
FactorSet lle_reduce(const Eigen::MatrixXd& data, int q,
                     std::optional<int> k = std::nullopt);

// Reconstruction weights for the k-nearest-neighbor graph: row
// stochastic, zero outside each row's neighborhood.
Eigen::MatrixXd lle_weights(const Eigen::MatrixXd& data, int k);

// Embedding-quality score used by select_lle_k: mean squared residual
// of regressing the data on the embedding (lower is better).
double lle_embedding_score(const Eigen::MatrixXd& data, int q, int k);

// Candidate with the lowest embedding score; ties go to the smaller k.
int select_lle_k(const Eigen::MatrixXd& data, int q,
                 const std::vector<int>& candidates);

// Trains the mirrored autoencoder and returns the centered, unit-scaled
// encoder activations.
FactorSet autoencoder_reduce(const Eigen::MatrixXd& data,
                             const AutoencoderSpec& spec, int q);

// Dispatch on spec.kind; `data` must already be standardized.
FactorSet reduce(const Eigen::MatrixXd& data, const ReducerSpec& spec);
FactorSet reduce(const Panel& panel, const ReducerSpec& spec);

}  // namespace favar
