#pragma once

#include <cstdint>

#include "ordopt/types.hpp"

namespace ordopt {

/// Pr(X <= upper) for X ~ N(mean, cov). Entries of upper may be +-inf.
struct MvnProblem {
  VectorXd mean;
  MatrixXd cov;
  VectorXd upper;
};

struct MvnResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t points_used = 0;
};

struct MvnOptions {
  double target_abs_error = 1e-4;
  std::uint64_t seed = 0;
  int shifts = 12;
  std::int64_t max_points = std::int64_t{1} << 22;
  int workers = 1;
};

/// Separation-of-variables quasi-Monte-Carlo after pivoted Cholesky.
/// The error estimate is three standard errors across randomly shifted
/// lattices; results are a pure function of (problem, options).
MvnResult mvn_cdf(const MvnProblem& problem, const MvnOptions& options);

inline MvnResult mvn_cdf(const MvnProblem& problem, double target_abs_error, std::uint64_t seed) {
  MvnOptions opt;
  opt.target_abs_error = target_abs_error;
  opt.seed = seed;
  return mvn_cdf(problem, opt);
}

}  // namespace ordopt
