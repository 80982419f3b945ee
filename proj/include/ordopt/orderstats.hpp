#pragma once

#include <cstdint>
#include <span>

#include "ordopt/quadrature.hpp"
#include "ordopt/types.hpp"

namespace ordopt {

/// Which side of the cut carries the mass of a truncated standard normal.
enum class TruncSide {
  left_of,   ///< support x <= cut (the acceptable candidates)
  right_of,  ///< support x >= cut (the unacceptable candidates)
};

/// Standard normal X conditioned to one side of `cut`.
struct TruncatedGaussian {
  TruncSide side = TruncSide::left_of;
  double cut = 0.0;
  double total_mass = 0.5;  ///< Pr(X on the retained side): alpha or 1 - alpha

  double pdf(double x) const;
  double cdf(double x) const;
  /// Finite interval holding all but a negligible part of the mass.
  double support_lo() const;
  double support_hi() const;
};

/// X truncated to x <= Phi^{-1}(alpha).
TruncatedGaussian acceptable_part(double alpha);
/// X truncated to x >= Phi^{-1}(alpha).
TruncatedGaussian unacceptable_part(double alpha);

/// base + Y with Y ~ N(0, noise_xi2) independent of base.
struct TruncNoiseSum {
  TruncatedGaussian base;
  double noise_xi2 = 0.0;
};

/// Convolution integrals by adaptive quadrature; exact truncated CDF/PDF when
/// noise_xi2 == 0. The CDF is clamped to [0, 1].
double trunc_sum_cdf(const TruncNoiseSum& d, double z, const QuadratureConfig& cfg = {});
double trunc_sum_pdf(const TruncNoiseSum& d, double z, const QuadratureConfig& cfg = {});

/// CDF of the rank-th smallest of n i.i.d. draws from parent_cdf, via the
/// regularised incomplete beta function.
ScalarFn orderstat_cdf(std::int64_t rank, std::int64_t n, ScalarFn parent_cdf);

/// Density of the minimum of n i.i.d. draws.
ScalarFn first_orderstat_pdf(std::int64_t n, ScalarFn parent_pdf, ScalarFn parent_cdf);

/// Joint CDF Pr(X_{r1:n} <= x1, ..., X_{rk:n} <= xk) for ascending ranks and
/// k <= 4. Unordered points are first rectified to x*_i = min(x_i, x*_{i+1}).
double joint_orderstat_cdf(std::span<const std::int64_t> ranks, std::span<const double> points,
                           const ScalarFn& parent_cdf, std::int64_t n);

}  // namespace ordopt
