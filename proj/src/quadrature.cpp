#include "ordopt/quadrature.hpp"

#include <string>

#include "ordopt/errors.hpp"

namespace ordopt {

void validate(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0)) throw OutOfRange("abs_tol", "must be > 0");
  if (!(cfg.rel_tol >= 0.0)) throw OutOfRange("rel_tol", "must be >= 0");
  if (cfg.max_subdivisions < 10) throw OutOfRange("max_subdivisions", "must be >= 10");
}

namespace detail {

void throw_quadrature_failure(double error, double tol, int intervals) {
  throw QuadratureFailure("adaptive quadrature did not converge: error estimate " +
                          std::to_string(error) + " > tolerance " + std::to_string(tol) +
                          " after " + std::to_string(intervals) + " panels");
}

}  // namespace detail
}  // namespace ordopt
