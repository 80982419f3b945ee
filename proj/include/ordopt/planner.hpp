#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ordopt {

/// a4 u^4 + a3 u^3 + a2 u^2 + a1 u + a0 in u = sqrt(log(n c1)).
struct QuarticCoefficients {
  double a4 = 0.0;
  double a3 = 0.0;
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
};

/// Polynomial whose roots give the n at which the fixed-theta lower bound
/// equals 1 - delta.
QuarticCoefficients quartic_coefficients(double alpha, double rho, double delta, double theta);

/// Greatest real root u >= 0 (|imag| < 1e-9) from the companion matrix, with
/// one Newton step. Leading zero coefficients lower the degree. Throws
/// NoRealRoot if none qualifies, OutOfRange if all coefficients vanish.
double greatest_real_root(const QuarticCoefficients& c);

struct PlanResult {
  double log_n = 0.0;                  ///< natural log of the planned n
  std::optional<std::int64_t> n_exact;  ///< ceil(n) when log_n <= 62 log 2
  double theta_used = 0.0;
  bool certified = false;

  double log10_n() const;
  /// "8.144e47007": 4 significant figures, exponent of any size.
  std::string scientific() const;
};

/// Smallest sample size whose lower bound certifies success probability
/// >= 1 - delta for every m. Throws Infeasible if no theta certifies.
PlanResult plan_sample_size(double alpha, double rho, double delta);

}  // namespace ordopt
