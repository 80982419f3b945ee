#pragma once

#include <cstdint>

#include "ordopt/errors.hpp"
#include "ordopt/model.hpp"
#include "ordopt/mvncdf.hpp"
#include "ordopt/types.hpp"

namespace ordopt {

enum class SurrogateKind {
  top_orderstats,  ///< the m largest observations Z_{n-m+1:n} .. Z_{n:n}
  conditioned_x,   ///< true values of those candidates, Z integrated out
};

/// How the density factor in the order-statistic covariance is read.
enum class DensityReading {
  standard,      ///< both factors use the standard normal phi(Phi^{-1}(p))
  noise_scaled,  ///< the first factor uses the N(0, 1 + xi2) parent
};

/// Gaussian stand-in for a vector of order statistics.
template <class Scalar>
struct GaussianSurrogate {
  Vector<Scalar> mean;
  Matrix<Scalar> cov;
  std::int64_t n = 0;
  SurrogateKind kind = SurrogateKind::top_orderstats;
};

/// Asymptotic normal law of the top m order statistics of n standard normals,
/// at levels p_i = (n - m + i - 1)/n. Throws Degenerate for m == n.
GaussianSurrogate<double> surrogate_top_orderstats(std::int64_t n, std::int64_t m,
                                                   DensityReading reading = DensityReading::standard,
                                                   double xi2 = 0.0);

/// X' | Z' = z ~ N(rho z, (1 - rho^2) I), marginalised over the surrogate Z'.
template <class Scalar>
GaussianSurrogate<Scalar> condition_and_marginalize(const GaussianSurrogate<Scalar>& surr,
                                                    Scalar rho) {
  if (surr.kind != SurrogateKind::top_orderstats)
    throw OutOfRange("kind", "expected an order-statistic surrogate");
  if (!(rho > Scalar(0) && rho <= Scalar(1))) throw OutOfRange("rho", "must lie in (0, 1]");
  const auto m = surr.mean.size();
  GaussianSurrogate<Scalar> out;
  out.mean = rho * surr.mean;
  out.cov = rho * rho * surr.cov + (Scalar(1) - rho * rho) * Matrix<Scalar>::Identity(m, m);
  out.n = surr.n;
  out.kind = SurrogateKind::conditioned_x;
  return out;
}

struct ApproxOptions {
  MvnOptions mvn;  ///< seed is overwritten by the seed argument
  DensityReading reading = DensityReading::standard;
};

/// 1 - Pr(X' <= Phi^{-1}(1 - alpha) 1) under the conditioned surrogate.
/// Throws Degenerate for m == n.
ProbabilityResult approx_success_probability(const ProblemSpec& spec, std::uint64_t seed,
                                             const ApproxOptions& options = {});

}  // namespace ordopt
