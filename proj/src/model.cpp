#include "ordopt/model.hpp"

#include <cmath>
#include <string>

#include "ordopt/errors.hpp"
#include "ordopt/gaussfn.hpp"

namespace ordopt {

void validate(const ProblemSpec& spec) {
  if (spec.n < 1) throw OutOfRange("n", "must be at least 1, got " + std::to_string(spec.n));
  if (spec.m < 1) throw OutOfRange("m", "must be at least 1, got " + std::to_string(spec.m));
  if (spec.m > spec.n) throw OutOfRange("m", "m > n (" + std::to_string(spec.m) + " > " + std::to_string(spec.n) + ")");
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
    throw OutOfRange("alpha", "must lie in (0, 1], got " + std::to_string(spec.alpha));
  if (!(spec.rho > 0.0 && spec.rho <= 1.0))
    throw OutOfRange("rho", "must lie in (0, 1], got " + std::to_string(spec.rho));
}

ProblemSpec make_problem(std::int64_t n, std::int64_t m, double alpha, double rho) {
  ProblemSpec spec{n, m, alpha, rho};
  validate(spec);
  return spec;
}

double copula_to_noise(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw OutOfRange("rho", "must lie in (0, 1]");
  // (1 - rho^2)/rho^2 keeps xi2 exactly 0 at rho = 1
  return (1.0 - rho) * (1.0 + rho) / (rho * rho);
}

double noise_to_copula(double xi2) {
  if (!(xi2 >= 0.0) || std::isinf(xi2)) throw OutOfRange("xi2", "must be finite and >= 0");
  return 1.0 / std::sqrt(1.0 + xi2);
}

AdditiveNoiseView additive_view(const ProblemSpec& spec) {
  validate(spec);
  return {copula_to_noise(spec.rho), std_quantile(spec.alpha)};
}

}  // namespace ordopt
