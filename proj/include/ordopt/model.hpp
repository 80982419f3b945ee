#pragma once

#include <cstdint>

namespace ordopt {

/// An ordinal optimisation instance under the Gaussian copula model.
///
/// n candidates are sampled, the m with the smallest observed value are
/// selected, and the selection succeeds when one of them lies in the best
/// 100*alpha percent of the true values. rho is the copula correlation
/// between observed and true values.
struct ProblemSpec {
  std::int64_t n = 1;
  std::int64_t m = 1;
  double alpha = 0.5;
  double rho = 1.0;
};

/// The equivalent additive-noise description Z = X + Y with X ~ N(0,1) and
/// Y ~ N(0, xi2). x_star is the acceptability threshold on X.
struct AdditiveNoiseView {
  double xi2 = 0.0;
  double x_star = 0.0;
};

/// Validates and builds a ProblemSpec. Throws OutOfRange naming the field.
ProblemSpec make_problem(std::int64_t n, std::int64_t m, double alpha, double rho);

/// Throws OutOfRange if spec violates 1 <= m <= n, 0 < alpha <= 1, 0 < rho <= 1.
void validate(const ProblemSpec& spec);

/// xi^2 = 1/rho^2 - 1.
double copula_to_noise(double rho);

/// rho = 1/sqrt(1 + xi^2).
double noise_to_copula(double xi2);

AdditiveNoiseView additive_view(const ProblemSpec& spec);

}  // namespace ordopt
