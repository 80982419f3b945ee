#pragma once

#include <cstdint>

#include "ordopt/model.hpp"
#include "ordopt/quadrature.hpp"

namespace ordopt {

struct ExactResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t terms_evaluated = 0;  ///< number of g-terms actually integrated
};

/// Pr(the m-th smallest observation among the n - g unacceptable candidates
/// beats every acceptable one | g candidates are acceptable), for 1 <= g <= n - m.
double conditional_failure_probability(std::int64_t g, const ProblemSpec& spec,
                                       const QuadratureConfig& cfg = {});

/// Success probability by conditioning on the binomial number of acceptable
/// candidates. Terms whose binomial weight is below 1e-16 of the total are
/// skipped and their weight is charged to error_estimate. g-terms are spread
/// over `workers` threads (0 = all cores).
ExactResult exact_success_probability(const ProblemSpec& spec, const QuadratureConfig& cfg = {},
                                      int workers = 1);

}  // namespace ordopt
