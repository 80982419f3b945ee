#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ordopt/bounds.hpp"
#include "ordopt/errors.hpp"
#include "ordopt/exact.hpp"
#include "ordopt/mc.hpp"

using namespace ordopt;

namespace {

constexpr double kQuarter = std::numbers::pi / 4;

// Q(z)^n <= Q((z - mu)/sigma) with a relative slack.
bool dominates_at(double z, std::int64_t n, const DominatingSurrogate& s) {
  const double lhs = static_cast<double>(n) * oracle::log_sf(z);
  const double rhs = oracle::log_sf((z - s.mu_n) / std::sqrt(s.sigma2_n));
  return lhs <= rhs + 1e-9 * std::abs(rhs);
}

}  // namespace

TEST(DistFreeBounds, ClosedForms) {
  const auto eq = dist_free_bounds(7, 7, 0.3);
  EXPECT_EQ(eq.lower, eq.upper);
  const auto zero = dist_free_bounds(10, 3, 0.0);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_EQ(zero.upper, 0.0);
  const auto one = dist_free_bounds(10, 3, 1.0);
  EXPECT_EQ(one.lower, 1.0);
  EXPECT_EQ(one.upper, 1.0);
  const auto b = dist_free_bounds(100, 20, 0.05);
  EXPECT_NEAR(b.lower, 1 - std::pow(0.95, 20), 1e-15);
  EXPECT_NEAR(b.lower, 0.6415, 5e-5);
  EXPECT_LE(b.lower, b.upper);
  EXPECT_THROW(dist_free_bounds(10, 11, 0.1), OutOfRange);
  EXPECT_THROW(dist_free_bounds(10, 1, 1.1), OutOfRange);
}

TEST(DominatingSurrogate, Construction) {
  const auto s = make_dominating_surrogate(std::log(100.0), kQuarter);
  EXPECT_LT(s.mu_n, 0.0);
  EXPECT_GT(s.sigma2_n, 0.0);
  const double lognc1 = std::log(25.0);
  EXPECT_NEAR(s.mu_n, -std::sqrt(lognc1 / s.constants.c2), 1e-14);
  const double ll2 = std::log(std::log(2.0));
  EXPECT_NEAR(s.sigma2_n, -ll2 / (2 * s.constants.c2 * (lognc1 - ll2)), 1e-14);
  EXPECT_THROW(make_dominating_surrogate(std::log(4.0), kQuarter), OutOfRange);
  EXPECT_THROW(make_dominating_surrogate(std::log(100.0), 0.0), OutOfRange);
}

TEST(NumericalTest, Examples) {
  EXPECT_FALSE(numerical_test(3, kQuarter));
  EXPECT_TRUE(numerical_test(100, kQuarter));
  const auto s = make_dominating_surrogate(std::log(100.0), kQuarter);
  for (double z = -10.0; z <= 10.0; z += 0.001) ASSERT_TRUE(dominates_at(z, 100, s)) << z;
  EXPECT_THROW(numerical_test(100, 2.0), OutOfRange);
}

TEST(NumericalTest, ThresholdAtQuarterPi) {
  std::int64_t first = 0;
  for (std::int64_t n = 1; n <= 100; ++n)
    if (numerical_test(n, kQuarter)) {
      if (first == 0) first = n;
    } else {
      EXPECT_EQ(first, 0) << "test fails again at n = " << n;
    }
  EXPECT_GE(first, 5);
  EXPECT_LE(first, 8);
}

TEST(NumericalTest, PassImpliesDominanceAtRandomPoints) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> zs(-12.0, 12.0), ts(0.05, 1.5);
  std::uniform_int_distribution<std::int64_t> ns(2, 1000000);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const auto n = ns(gen);
    const double theta = ts(gen);
    if (!numerical_test(n, theta)) continue;
    ++checked;
    const auto s = make_dominating_surrogate(std::log(static_cast<double>(n)), theta);
    for (int i = 0; i < 10000; ++i) {
      const double z = zs(gen);
      ASSERT_TRUE(dominates_at(z, n, s)) << n << " " << theta << " " << z;
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(LowerBound, InfeasibleReturnsZero) {
  const auto r = lower_bound(3, 0.05, 0.5, kQuarter);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.method, BoundMethod::fixed_theta);
}

TEST(LowerBound, PerfectCorrelation) {
  const auto r = lower_bound(500, 0.05, 1.0, 0.9);
  ASSERT_TRUE(r.feasible);
  const auto s = make_dominating_surrogate(std::log(500.0), 0.9);
  EXPECT_NEAR(r.value, oracle::cdf((oracle::quantile(0.05) - s.mu_n) / std::sqrt(s.sigma2_n)), 1e-14);
}

TEST(LowerBound, BelowSimulation) {
  const auto r = lower_bound(1000, 0.05, 0.5, 0.7);
  ASSERT_TRUE(r.feasible);
  McConfig cfg;
  cfg.replications = 20000;
  cfg.seed = 1;
  const auto mc = mc_estimate(make_problem(1000, 1, 0.05, 0.5), cfg);
  EXPECT_LE(r.value, mc.p_hat + 3 * mc.std_err);
}

TEST(LowerBound, NondecreasingInNOnceFeasible) {
  for (double theta : {0.5, 0.9, 1.2}) {
    double prev = 0.0;
    for (std::int64_t n = 2; n < 2000000; n = n * 3 / 2 + 1) {
      const auto r = lower_bound(n, 0.05, 0.5, theta);
      if (!r.feasible) continue;
      EXPECT_GE(r.value, prev) << n << " " << theta;
      prev = r.value;
    }
  }
}

TEST(OptimisedLowerBound, TooSmallSample) {
  const auto r = optimised_lower_bound(1, 0.05, 0.5);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_FALSE(r.feasible);
  EXPECT_FALSE(r.theta_used.has_value());
}

TEST(OptimisedLowerBound, MonotoneAndValid) {
  const auto a = optimised_lower_bound(1000, 0.05, 0.5);
  const auto b = optimised_lower_bound(2000, 0.05, 0.5);
  EXPECT_GE(b.value, a.value);
  const auto c = optimised_lower_bound(10000, 0.05, 0.5);
  ASSERT_TRUE(c.feasible);
  EXPECT_GE(c.value, 0.0);
  EXPECT_LE(c.value, dist_free_bounds(10000, 1, 0.05).upper);
  McConfig cfg;
  cfg.replications = 20000;
  cfg.seed = 3;
  const auto mc = mc_estimate(make_problem(10000, 1, 0.05, 0.5), cfg);
  EXPECT_LE(c.value, mc.p_hat + 3 * mc.std_err);
}

TEST(OptimisedLowerBound, DominatesEveryProbedTheta) {
  for (std::int64_t n : {50, 1000, 100000}) {
    const auto best = optimised_lower_bound(n, 0.05, 0.5);
    ASSERT_TRUE(best.feasible);
    for (double theta = 0.01; theta < 1.5707; theta += 0.005) {
      const auto r = lower_bound(n, 0.05, 0.5, theta);
      EXPECT_LE(r.value, best.value + 1e-12) << n << " " << theta;
    }
  }
}

TEST(OptimisedLowerBound, BelowExactSingleSelection) {
  for (std::int64_t n : {20, 100, 400})
    for (double rho : {0.3, 0.6, 0.9}) {
      const auto b = optimised_lower_bound(n, 0.05, rho);
      const auto e = exact_success_probability(make_problem(n, 1, 0.05, rho));
      EXPECT_LE(b.value, e.value + e.error_estimate) << n << " " << rho;
      const auto e3 = exact_success_probability(make_problem(n, 3, 0.05, rho));
      EXPECT_LE(b.value, e3.value + e3.error_estimate) << n << " " << rho;
    }
}

TEST(BoundMethod, Names) {
  EXPECT_EQ(to_string(BoundMethod::dist_free_lower), "dist_free_lower");
  EXPECT_EQ(to_string(BoundMethod::optimised), "optimised");
}
