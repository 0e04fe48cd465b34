#include "favar/stats.hpp"

#include <algorithm>
#include <cmath>

#include "favar/errors.hpp"

namespace favar {

double mean(const VectorXd& x) {
  if (x.size() == 0) fail(ErrorKind::Parameter, "mean: empty vector");
  return x.mean();
}

double variance(const VectorXd& x) {
  if (x.size() < 2) fail(ErrorKind::Parameter, "variance: need >= 2 values");
  double m = x.mean();
  return (x.array() - m).square().sum() / static_cast<double>(x.size() - 1);
}

double stddev(const VectorXd& x) { return std::sqrt(variance(x)); }

double quantile(std::vector<double> values, double p) {
  if (values.empty()) fail(ErrorKind::Parameter, "quantile: empty sample");
  if (p < 0.0 || p > 1.0) {
    fail(ErrorKind::Parameter, "quantile: p outside [0, 1]");
  }
  std::sort(values.begin(), values.end());
  double h = (static_cast<double>(values.size()) - 1.0) * p;
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = static_cast<std::size_t>(std::ceil(h));
  double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double quantile(const VectorXd& values, double p) {
  return quantile(
      std::vector<double>(values.data(), values.data() + values.size()), p);
}

double median(const VectorXd& values) { return quantile(values, 0.5); }

double iqr(const VectorXd& values) {
  return quantile(values, 0.75) - quantile(values, 0.25);
}

double correlation(const VectorXd& x, const VectorXd& y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorKind::Parameter, "correlation: mismatched or too-short inputs");
  }
  double mx = x.mean();
  double my = y.mean();
  VectorXd dx = x.array() - mx;
  VectorXd dy = y.array() - my;
  double sx = dx.norm();
  double sy = dy.norm();
  if (sx == 0.0 || sy == 0.0) {
    fail(ErrorKind::Alignment, "correlation: zero-variance input");
  }
  return dx.dot(dy) / (sx * sy);
}

VectorXd column_means(const MatrixXd& x) {
  if (x.rows() == 0) fail(ErrorKind::Parameter, "column_means: empty matrix");
  return x.colwise().mean();
}

VectorXd column_stddevs(const MatrixXd& x) {
  if (x.rows() < 2) {
    fail(ErrorKind::Parameter, "column_stddevs: need >= 2 rows");
  }
  VectorXd mu = x.colwise().mean();
  VectorXd out(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    out(j) = std::sqrt((x.col(j).array() - mu(j)).square().sum() /
                       static_cast<double>(x.rows() - 1));
  }
  return out;
}

}  // namespace favar
