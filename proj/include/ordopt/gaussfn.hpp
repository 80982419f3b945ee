#pragma once

#include <cstdint>
#include <numbers>

namespace ordopt {

double std_pdf(double x);
double std_cdf(double x);
/// Upper tail Q(x) = 1 - Phi(x), computed without cancellation.
double std_q(double x);
/// Phi^{-1}(p); -inf at 0 and +inf at 1. Throws OutOfRange outside [0, 1].
double std_quantile(double p);

/// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

/// log Phi(x), accurate deep into the lower tail (x down to about -1e150).
double log_std_cdf(double x);
/// log Q(x).
double log_std_q(double x);
/// log(-log Q(x)). Lets n log Q(z) be compared for astronomically large n.
double log_neg_log_q(double x);

/// Constants of the exponential lower bound on Q for a given angle theta.
struct QBoundConstants {
  double theta = std::numbers::pi / 4;
  double c1 = 0.25;  ///< amplitude, 1/2 - theta/pi
  double c2 = 2.0 / std::numbers::pi;  ///< rate, cot(theta)/(pi - 2 theta)
};

/// Throws OutOfRange unless 0 < theta < pi/2.
QBoundConstants make_qbound_constants(double theta);

struct QBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// c1 exp(-c2 x^2) <= Q(x) <= exp(-x^2/2)/2 for x >= 0.
QBounds q_bounds(double x, double theta);

/// log[C(n, g) alpha^g (1 - alpha)^(n - g)], -inf where the pmf vanishes.
double log_binomial_pmf(std::int64_t n, std::int64_t g, double alpha);

}  // namespace ordopt
