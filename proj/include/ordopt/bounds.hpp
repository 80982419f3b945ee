#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ordopt/gaussfn.hpp"

namespace ordopt {

struct DistFreeBounds {
  double lower = 0.0;  ///< 1 - (1 - alpha)^m, blind pick
  double upper = 0.0;  ///< 1 - (1 - alpha)^n
};

/// Bounds that hold whatever the dependence between observed and true values.
/// alpha may be 0 here.
DistFreeBounds dist_free_bounds(std::int64_t n, std::int64_t m, double alpha);

/// Scalar Gaussian N(mu_n, sigma2_n) stochastically dominating the sample
/// minimum of n standard normals, once n >= n*(theta). Stored against log n
/// so astronomically large n stay representable.
struct DominatingSurrogate {
  double theta = 0.0;
  QBoundConstants constants;
  double log_n = 0.0;
  double mu_n = 0.0;
  double sigma2_n = 0.0;
};

/// Throws OutOfRange("n") when n c1 <= 1 and OutOfRange("theta") outside (0, pi/2).
DominatingSurrogate make_dominating_surrogate(double log_n, double theta);

/// Sufficient check that the surrogate for (n, theta) dominates: n c1 > 1, the
/// inequality Q(z)^n <= Q((z - mu_n)/sigma_n) on a 10001-point grid over
/// [mu_n, 0], and the quadratic condition covering [0, inf).
bool numerical_test(std::int64_t n, double theta);
/// Same test with n given by its natural log.
bool numerical_test_log(double log_n, double theta);

enum class BoundMethod { dist_free_lower, dist_free_upper, fixed_theta, optimised };

std::string_view to_string(BoundMethod method);

struct BoundResult {
  double value = 0.0;
  std::optional<double> theta_used;
  bool feasible = false;
  BoundMethod method = BoundMethod::fixed_theta;
};

/// Phi((Phi^{-1}(alpha) - rho mu_n) / sqrt(1 - rho^2 + rho^2 sigma2_n)).
double bound_value(const DominatingSurrogate& s, double alpha, double rho);

/// Lower bound on the success probability for any m >= 1 at a fixed theta;
/// value 0 and feasible = false when numerical_test fails.
BoundResult lower_bound(std::int64_t n, double alpha, double rho, double theta);
BoundResult lower_bound_log(double log_n, double alpha, double rho, double theta);

/// Best certified lower bound over theta. Never throws for valid inputs; no
/// feasible theta gives value 0.
BoundResult optimised_lower_bound(std::int64_t n, double alpha, double rho);

}  // namespace ordopt
