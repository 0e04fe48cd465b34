#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "favar/rng.hpp"

namespace favar {

enum class Activation { Relu, Tanh, Identity };

Activation parse_activation(const std::string& text);
std::string activation_name(Activation a);

// Plain fully-connected feed-forward net trained on mean squared error.
// Layer l maps in -> out via out = act(W x + b); the final layer is
// always Identity so reconstructions are unbounded.
struct Layer {
  Eigen::MatrixXd w;  // out x in
  Eigen::VectorXd b;
  Activation act = Activation::Identity;
};

struct Gradients {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;
};

class Net {
 public:
  Net() = default;
  // sizes = [n_in, hidden..., n_out]; hidden layers get `hidden_act`,
  // the output layer is linear. Scaled-uniform init with bound
  // sqrt(6/(fan_in+fan_out)) from `rng`; biases zero.
  Net(const std::vector<int>& sizes, Activation hidden_act, Rng& rng);

  // Forward pass over a batch (rows = samples).
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  // Activations of layer `upto` (0-based; upto = layers().size() means
  // the output). Used to read factor activations out of an autoencoder.
  Eigen::MatrixXd forward_to(const Eigen::MatrixXd& x, std::size_t upto) const;

  // MSE loss 0.5-free convention: mean over batch rows and output
  // dimensions of the squared error.
  double loss(const Eigen::MatrixXd& x, const Eigen::MatrixXd& target) const;

  // Backpropagated gradients of the MSE loss for one batch.
  Gradients gradient(const Eigen::MatrixXd& x,
                     const Eigen::MatrixXd& target) const;

  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }

 private:
  std::vector<Layer> layers_;
};

// Adam optimizer state for one Net (step size 1e-3, decay 0.9/0.999,
// epsilon 1e-8).
class Adam {
 public:
  Adam(const Net& net, double step = 1e-3, double beta1 = 0.9,
       double beta2 = 0.999, double eps = 1e-8);
  void update(Net& net, const Gradients& g);

 private:
  double step_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<Eigen::MatrixXd> mw_, vw_;
  std::vector<Eigen::VectorXd> mb_, vb_;
};

}  // namespace favar
