#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ordopt/bounds.hpp"
#include "ordopt/errors.hpp"
#include "ordopt/exact.hpp"
#include "ordopt/mc.hpp"

using namespace ordopt;

TEST(ConditionalFailure, NoiselessOrderingNeverMisranks) {
  const auto spec = make_problem(30, 3, 0.2, 1.0);
  for (std::int64_t g : {1, 5, 27}) EXPECT_EQ(conditional_failure_probability(g, spec), 0.0);
  const auto nearly = make_problem(30, 3, 0.2, 1.0 - 1e-9);
  EXPECT_LT(conditional_failure_probability(5, nearly), 1e-6);
}

TEST(ConditionalFailure, EdgeTermEvaluates) {
  const auto spec = make_problem(100, 5, 0.05, 1.0 / std::sqrt(2.0));
  const double p = conditional_failure_probability(95, spec);
  EXPECT_GE(p, 0.0);
  EXPECT_LE(p, 1.0);
  EXPECT_THROW(conditional_failure_probability(96, spec), OutOfRange);
  EXPECT_THROW(conditional_failure_probability(0, spec), OutOfRange);
}

TEST(ConditionalFailure, MatchesConditionalSimulation) {
  const auto spec = make_problem(20, 2, 0.2, noise_to_copula(1.0));
  const auto est = oracle::simulate_conditional_failure(20, 2, 0.2, 1.0, 3, 1000000, 99);
  EXPECT_NEAR(conditional_failure_probability(3, spec), est.p, 3 * est.se);
}

TEST(ExactSuccess, BaselineValue) {
  const auto r = exact_success_probability(make_problem(100, 5, 0.05, 1.0 / std::sqrt(2.0)));
  EXPECT_NEAR(r.value, 0.9031, 5e-4);
  EXPECT_LT(r.error_estimate, 1e-6);
  EXPECT_LE(r.terms_evaluated, 95);
}

TEST(ExactSuccess, FullSelectionIsTheUpperBound) {
  const auto r = exact_success_probability(make_problem(8, 8, 0.1, 0.4));
  EXPECT_DOUBLE_EQ(r.value, 1.0 - std::pow(0.9, 8));
  EXPECT_EQ(r.terms_evaluated, 0);
}

TEST(ExactSuccess, AlphaOneIsCertain) {
  const auto r = exact_success_probability(make_problem(8, 2, 1.0, 0.4));
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.error_estimate, 0.0);
}

TEST(ExactSuccess, AgreesWithLargeMonteCarlo) {
  const auto spec = make_problem(12, 3, 0.25, 0.6);
  McConfig cfg;
  cfg.replications = 10000000;
  cfg.seed = 2024;
  cfg.workers = 0;
  const auto mc = mc_estimate(spec, cfg);
  EXPECT_NEAR(exact_success_probability(spec).value, mc.p_hat, 3 * mc.std_err);
}

TEST(ExactSuccess, AgreesWithIndependentSimulationOnRandomGrid) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> nd(2, 25);
  std::uniform_real_distribution<double> ad(0.02, 0.5), rd(0.1, 0.99);
  for (int t = 0; t < 20; ++t) {
    const int n = nd(gen);
    const int m = std::uniform_int_distribution<int>(1, n)(gen);
    const double alpha = ad(gen), rho = rd(gen);
    const auto est = oracle::simulate_success(n, m, alpha, rho, 100000, 1000 + t);
    const double p = exact_success_probability(make_problem(n, m, alpha, rho)).value;
    EXPECT_NEAR(p, est.p, 3 * est.se + 1e-9) << n << " " << m << " " << alpha << " " << rho;
  }
}

TEST(ExactSuccess, SandwichedByDistributionFreeBounds) {
  for (int n : {3, 10, 40})
    for (int m : {1, 2, 3})
      for (double alpha : {0.01, 0.1, 0.5})
        for (double rho : {0.2, 0.7, 1.0}) {
          const auto r = exact_success_probability(make_problem(n, m, alpha, rho));
          const auto b = dist_free_bounds(n, m, alpha);
          EXPECT_GE(r.value, b.lower - 1e-9) << n << m << alpha << rho;
          EXPECT_LE(r.value, b.upper + 1e-9) << n << m << alpha << rho;
        }
}

TEST(ExactSuccess, MonotoneInSelectionAndSampleSize) {
  for (double rho : {0.3, 0.8}) {
    double prev = 0.0, prev_err = 0.0;
    for (int m = 1; m <= 12; ++m) {
      const auto r = exact_success_probability(make_problem(12, m, 0.1, rho));
      EXPECT_GE(r.value, prev - 2 * (r.error_estimate + prev_err) - 1e-12) << m;
      prev = r.value;
      prev_err = r.error_estimate;
    }
    prev = 0.0;
    prev_err = 0.0;
    for (int n : {3, 5, 10, 20, 50, 100, 200}) {
      const auto r = exact_success_probability(make_problem(n, 3, 0.05, rho));
      EXPECT_GE(r.value, prev - 2 * (r.error_estimate + prev_err) - 1e-12) << n;
      prev = r.value;
      prev_err = r.error_estimate;
    }
  }
}

TEST(ExactSuccess, SkipsNegligibleTermsAndChargesThem) {
  const auto r = exact_success_probability(make_problem(2000, 5, 0.05, 0.6));
  EXPECT_LT(r.terms_evaluated, 1995);
  EXPECT_GT(r.error_estimate, 0.0);
  EXPECT_LT(r.error_estimate, 1e-8);
}

TEST(ExactSuccess, IndependentOfWorkerCount) {
  const auto spec = make_problem(60, 4, 0.1, 0.5);
  const auto a = exact_success_probability(spec, {}, 1);
  const auto b = exact_success_probability(spec, {}, 3);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error_estimate, b.error_estimate);
}

TEST(ExactSuccess, RejectsBadConfig) {
  QuadratureConfig cfg;
  cfg.abs_tol = 0.0;
  EXPECT_THROW(exact_success_probability(make_problem(5, 2, 0.1, 0.5), cfg), OutOfRange);
}
