#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace ordopt {

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

/// Real-valued function of one real variable (parent CDFs, densities).
using ScalarFn = std::function<double(double)>;

/// A probability together with how it was obtained and how far off it may be.
struct ProbabilityResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::string method;
};

}  // namespace ordopt
