#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ordopt/model.hpp"
#include "ordopt/rng.hpp"

namespace ordopt {

enum class McSampler {
  automatic,         ///< full below 1025 candidates, order_statistics above
  full,              ///< draw all n pairs, select the m smallest observations
  order_statistics,  ///< draw the m smallest observations directly, O(m)
};

struct McConfig {
  std::int64_t replications = 20000;
  std::uint64_t seed = 0;
  int workers = 1;  ///< 0 = all cores
  McSampler sampler = McSampler::automatic;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct McEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  Interval ci95;
  std::int64_t replications = 0;
  std::int64_t successes = 0;
};

/// One candidate: observed value z and true value x.
struct CopulaPair {
  double z = 0.0;
  double x = 0.0;
};

/// count i.i.d. pairs with x = g1, z = rho g1 + sqrt(1 - rho^2) g2.
std::vector<CopulaPair> sample_copula_pairs(const ProblemSpec& spec, std::int64_t count,
                                            PhiloxStream& stream);

/// Moves the m pairs with the smallest z to the front (unordered).
void select_smallest(std::span<CopulaPair> pairs, std::int64_t m);

/// Fraction of replications where one of the m lowest observations is truly
/// acceptable. Replication i draws from stream (seed, i), so the estimate
/// does not depend on the number of workers.
McEstimate mc_estimate(const ProblemSpec& spec, const McConfig& cfg);

}  // namespace ordopt
