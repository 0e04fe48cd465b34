#pragma once

#include <Eigen/Dense>
#include <vector>

namespace favar {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double mean(const VectorXd& x);
// Sample variance with the 1/(n-1) divisor.
double variance(const VectorXd& x);
double stddev(const VectorXd& x);

// Quantile of the sorted sample via linear interpolation at rank
// (n-1)*p (the common "type 7" rule).  p must lie in [0, 1].
double quantile(std::vector<double> values, double p);
double quantile(const VectorXd& values, double p);
double median(const VectorXd& values);
// Interquartile range, 25th to 75th percentile.
double iqr(const VectorXd& values);

// Pearson correlation; zero-variance inputs raise an error.
double correlation(const VectorXd& x, const VectorXd& y);

// Column means / sample standard deviations of a data matrix.
VectorXd column_means(const MatrixXd& x);
VectorXd column_stddevs(const MatrixXd& x);

}  // namespace favar
