#include "favar/nnet.hpp"

#include <cmath>

#include "favar/errors.hpp"

namespace favar {

Activation parse_activation(const std::string& text) {
  if (text == "relu") return Activation::Relu;
  if (text == "tanh") return Activation::Tanh;
  if (text == "identity" || text == "linear") return Activation::Identity;
  fail(ErrorKind::Parameter, "unknown activation '" + text + "'");
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::Relu:
      return "relu";
    case Activation::Tanh:
      return "tanh";
    default:
      return "identity";
  }
}

namespace {

Eigen::MatrixXd apply_act(const Eigen::MatrixXd& z, Activation a) {
  switch (a) {
    case Activation::Relu:
      return z.cwiseMax(0.0);
    case Activation::Tanh:
      return z.array().tanh().matrix();
    default:
      return z;
  }
}

// Derivative in terms of the pre-activation z.
Eigen::MatrixXd act_deriv(const Eigen::MatrixXd& z, Activation a) {
  switch (a) {
    case Activation::Relu:
      return (z.array() > 0.0).cast<double>().matrix();
    case Activation::Tanh:
      return (1.0 - z.array().tanh().square()).matrix();
    default:
      return Eigen::MatrixXd::Ones(z.rows(), z.cols());
  }
}

}  // namespace

Net::Net(const std::vector<int>& sizes, Activation hidden_act, Rng& rng) {
  if (sizes.size() < 2) fail(ErrorKind::Parameter, "net needs >= 2 sizes");
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    int n_in = sizes[l];
    int n_out = sizes[l + 1];
    if (n_in <= 0 || n_out <= 0) {
      fail(ErrorKind::Parameter, "net layer sizes must be positive");
    }
    Layer layer;
    layer.w.resize(n_out, n_in);
    double bound = std::sqrt(6.0 / (n_in + n_out));
    for (int i = 0; i < n_out; ++i) {
      for (int j = 0; j < n_in; ++j) {
        layer.w(i, j) = rng.uniform(-bound, bound);
      }
    }
    layer.b = Eigen::VectorXd::Zero(n_out);
    layer.act =
        (l + 2 == sizes.size()) ? Activation::Identity : hidden_act;
    layers_.push_back(std::move(layer));
  }
}

Eigen::MatrixXd Net::forward(const Eigen::MatrixXd& x) const {
  return forward_to(x, layers_.size());
}

Eigen::MatrixXd Net::forward_to(const Eigen::MatrixXd& x,
                                std::size_t upto) const {
  Eigen::MatrixXd h = x;
  for (std::size_t l = 0; l < upto && l < layers_.size(); ++l) {
    Eigen::MatrixXd z = (h * layers_[l].w.transpose()).rowwise() +
                        layers_[l].b.transpose();
    h = apply_act(z, layers_[l].act);
  }
  return h;
}

double Net::loss(const Eigen::MatrixXd& x, const Eigen::MatrixXd& target) const {
  Eigen::MatrixXd out = forward(x);
  return (out - target).squaredNorm() /
         static_cast<double>(out.rows() * out.cols());
}

Gradients Net::gradient(const Eigen::MatrixXd& x,
                        const Eigen::MatrixXd& target) const {
  std::size_t n_layers = layers_.size();
  std::vector<Eigen::MatrixXd> inputs(n_layers);  // input to each layer
  std::vector<Eigen::MatrixXd> preacts(n_layers);
  Eigen::MatrixXd h = x;
  for (std::size_t l = 0; l < n_layers; ++l) {
    inputs[l] = h;
    preacts[l] = (h * layers_[l].w.transpose()).rowwise() +
                 layers_[l].b.transpose();
    h = apply_act(preacts[l], layers_[l].act);
  }

  double scale = 2.0 / static_cast<double>(h.rows() * h.cols());
  Eigen::MatrixXd delta = scale * (h - target);  // dL/d(output activation)

  Gradients g;
  g.w.resize(n_layers);
  g.b.resize(n_layers);
  for (std::size_t l = n_layers; l-- > 0;) {
    delta = delta.cwiseProduct(act_deriv(preacts[l], layers_[l].act));
    g.w[l] = delta.transpose() * inputs[l];
    g.b[l] = delta.colwise().sum().transpose();
    if (l > 0) delta = delta * layers_[l].w;
  }
  return g;
}

Adam::Adam(const Net& net, double step, double beta1, double beta2, double eps)
    : step_(step), beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (const auto& layer : net.layers()) {
    mw_.push_back(Eigen::MatrixXd::Zero(layer.w.rows(), layer.w.cols()));
    vw_.push_back(Eigen::MatrixXd::Zero(layer.w.rows(), layer.w.cols()));
    mb_.push_back(Eigen::VectorXd::Zero(layer.b.size()));
    vb_.push_back(Eigen::VectorXd::Zero(layer.b.size()));
  }
}

void Adam::update(Net& net, const Gradients& g) {
  ++t_;
  double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    auto& layer = net.layers()[l];
    mw_[l] = beta1_ * mw_[l] + (1.0 - beta1_) * g.w[l];
    vw_[l] = beta2_ * vw_[l] + (1.0 - beta2_) * g.w[l].cwiseProduct(g.w[l]);
    layer.w.array() -= step_ * (mw_[l] / c1).array() /
                       ((vw_[l] / c2).array().sqrt() + eps_);
    mb_[l] = beta1_ * mb_[l] + (1.0 - beta1_) * g.b[l];
    vb_[l] = beta2_ * vb_[l] + (1.0 - beta2_) * g.b[l].cwiseProduct(g.b[l]);
    layer.b.array() -= step_ * (mb_[l] / c1).array() /
                       ((vb_[l] / c2).array().sqrt() + eps_);
  }
}

}  // namespace favar
