#pragma once

#include <functional>
#include <optional>

namespace ordopt::detail {

struct ThetaChoice {
  double theta = 0.0;
  double objective = 0.0;
};

/// Minimises objective(theta) over (0, pi/2) subject to certify(theta).
///
/// A coarse scan (64 uniform points on [0.01, pi/2 - 0.01] plus log-spaced
/// points towards both ends) locates the best bracket, golden-section search
/// refines it. certify is only called on candidates in increasing objective
/// order, so the expensive test runs a handful of times. Non-finite objective
/// values mark theta as unusable.
std::optional<ThetaChoice> search_theta(const std::function<double(double)>& objective,
                                        const std::function<bool(double)>& certify);

}  // namespace ordopt::detail
