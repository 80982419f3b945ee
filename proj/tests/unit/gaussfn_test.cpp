#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ordopt/errors.hpp"
#include "ordopt/gaussfn.hpp"

using namespace ordopt;

TEST(StdCdf, Symmetry) {
  EXPECT_EQ(std_cdf(0.0), 0.5);
  EXPECT_EQ(std_quantile(0.5), 0.0);
  EXPECT_NEAR(std_cdf(std_quantile(0.05)), 0.05, 1e-14);
}

TEST(StdCdf, MatchesReferenceOnGrid) {
  for (double x = -38.0; x <= 9.0; x += 0.037) {
    const double ref = oracle::cdf(x);
    EXPECT_NEAR(std_cdf(x), ref, 1e-15) << x;
    // Long double keeps the argument rounding of erfc out of the tail reference.
    const double tail = static_cast<double>(0.5L * std::erfc(-static_cast<long double>(x) /
                                                             std::sqrt(2.0L)));
    if (x < 0 && tail > 1e-300) EXPECT_NEAR(std_cdf(x) / tail, 1.0, 1e-14) << x;
    EXPECT_NEAR(std_pdf(x), oracle::pdf(x), 1e-15) << x;
    EXPECT_NEAR(std_q(x), oracle::sf(x), 1e-15) << x;
  }
}

TEST(StdQuantile, RelativeAccuracyAcrossRange) {
  for (double lp = -300.0; lp < -0.31; lp += 0.173) {
    const double p = std::pow(10.0, lp);
    const double ref = oracle::quantile(p);
    EXPECT_NEAR(std_quantile(p), ref, 1e-14 * std::abs(ref)) << p;
  }
  for (double lq = -0.31; lq > -16.0; lq -= 0.173) {
    const double p = 1.0 - std::pow(10.0, lq);
    const double ref = oracle::quantile(p);
    EXPECT_NEAR(std_quantile(p), ref, 1e-14 * std::abs(ref) + 1e-300) << p;
  }
}

TEST(StdQuantile, EndpointsAndDomain) {
  EXPECT_EQ(std_quantile(0.0), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(std_quantile(1.0), std::numeric_limits<double>::infinity());
  EXPECT_THROW(std_quantile(-0.1), OutOfRange);
  EXPECT_THROW(std_quantile(1.1), OutOfRange);
  EXPECT_THROW(std_quantile(NAN), OutOfRange);
}

TEST(Erfcx, MatchesScaledErfc) {
  for (double x = -3.0; x < 25.0; x += 0.11) {
    const long double xl = x;
    const double ref = static_cast<double>(std::exp(xl * xl) * std::erfc(xl));
    EXPECT_NEAR(erfcx(x), ref, 2e-15 * ref) << x;
  }
  for (double x : {30.0, 1e3, 1e8}) {
    const double asym = 1.0 / (x * std::sqrt(std::numbers::pi)) * (1.0 - 0.5 / (x * x));
    EXPECT_NEAR(erfcx(x), asym, 1e-5 * asym) << x;
  }
}

TEST(LogStdCdf, AgreesWhereRepresentableAndDeepInTail) {
  for (double x = -37.0; x < 8.0; x += 0.09)
    EXPECT_NEAR(log_std_cdf(x), std::log(oracle::cdf(x)), 1e-13 * std::max(1.0, x * x)) << x;
  for (double x : {-50.0, -1e3, -1e6}) {
    const double ref = -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) +
                       std::log1p(-1.0 / (x * x) + 3.0 / (x * x * x * x));
    EXPECT_NEAR(log_std_cdf(x), ref, 1e-12 * std::abs(ref)) << x;
  }
  EXPECT_NEAR(log_std_q(2.0), std::log(oracle::sf(2.0)), 1e-14);
}

TEST(LogNegLogQ, MatchesDirectEvaluation) {
  for (double x = -8.0; x < 30.0; x += 0.13) {
    const double direct = x < 0 ? std::log(-std::log1p(-oracle::cdf(x)))
                                : std::log(-std::log(oracle::sf(x)));
    EXPECT_NEAR(log_neg_log_q(x), direct, 1e-12 * std::max(1.0, std::abs(direct))) << x;
  }
  // Far left, -log Q(x) ~ Phi(x).
  EXPECT_NEAR(log_neg_log_q(-40.0), log_std_cdf(-40.0), 1e-12 * 800);
  EXPECT_TRUE(std::isfinite(log_neg_log_q(-1e5)));
}

TEST(QBoundConstants, FollowFromTheta) {
  const auto k = make_qbound_constants(std::numbers::pi / 4);
  EXPECT_NEAR(k.c1, 0.25, 1e-15);
  EXPECT_NEAR(k.c2, 2.0 / std::numbers::pi, 1e-15);
  for (double t = 0.01; t < 1.57; t += 0.01) {
    const auto c = make_qbound_constants(t);
    EXPECT_GT(c.c1, 0.0);
    EXPECT_LT(c.c1, 0.5);
    EXPECT_GT(c.c2, 0.0);
  }
  EXPECT_THROW(make_qbound_constants(0.0), OutOfRange);
  EXPECT_THROW(make_qbound_constants(std::numbers::pi / 2), OutOfRange);
}

TEST(QBounds, Examples) {
  const auto b0 = q_bounds(0.0, std::numbers::pi / 4);
  EXPECT_NEAR(b0.lower, 0.25, 1e-15);
  EXPECT_NEAR(b0.upper, 0.5, 1e-15);
  const auto b1 = q_bounds(1.0, std::numbers::pi / 4);
  EXPECT_NEAR(b1.lower, 0.25 * std::exp(-2.0 / std::numbers::pi), 1e-15);
  EXPECT_NEAR(b1.upper, 0.5 * std::exp(-0.5), 1e-15);
  EXPECT_NEAR(b1.lower, 0.1324, 5e-4);
  EXPECT_NEAR(b1.upper, 0.3033, 5e-5);
  EXPECT_LE(b1.lower, oracle::sf(1.0));
  EXPECT_GE(b1.upper, oracle::sf(1.0));
  EXPECT_THROW(q_bounds(-1.0, 0.5), OutOfRange);
  EXPECT_THROW(q_bounds(1.0, 2.0), OutOfRange);
}

TEST(QBounds, SandwichOnGrid) {
  for (double theta = 0.1; theta < 1.55; theta += 0.1)
    for (double x = 0.0; x <= 8.0; x += 0.01) {
      const auto b = q_bounds(x, theta);
      const double q = oracle::sf(x);
      EXPECT_LE(b.lower, q * (1 + 1e-14)) << x << " " << theta;
      EXPECT_GE(b.upper, q * (1 - 1e-14)) << x << " " << theta;
    }
}

TEST(LogOneMinus, SandwichUsedByFeasibilityTest) {
  for (double p = 0.0; p <= 0.5; p += 0.001) {
    EXPECT_LE(-p * std::log(4.0), std::log1p(-p) + 1e-15);
    EXPECT_LE(std::log1p(-p), -p + 1e-15);
  }
}

TEST(LogBinomialPmf, Examples) {
  EXPECT_NEAR(log_binomial_pmf(2, 1, 0.5), std::log(0.5), 1e-15);
  EXPECT_NEAR(log_binomial_pmf(100, 0, 0.05), 100 * std::log(0.95), 1e-12);
  long double direct = 1.0L;
  for (int i = 0; i < 7; ++i) direct *= static_cast<long double>(100 - i) / (i + 1);
  direct *= std::pow(0.05L, 7) * std::pow(0.95L, 93);
  EXPECT_NEAR(log_binomial_pmf(100, 7, 0.05), std::log(static_cast<double>(direct)),
              1e-12 * std::abs(std::log(static_cast<double>(direct))));
  EXPECT_THROW(log_binomial_pmf(5, 6, 0.5), OutOfRange);
}

TEST(LogBinomialPmf, EdgesAndNormalisation) {
  EXPECT_EQ(log_binomial_pmf(10, 0, 0.0), 0.0);
  EXPECT_EQ(log_binomial_pmf(10, 3, 0.0), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(log_binomial_pmf(10, 10, 1.0), 0.0);
  EXPECT_EQ(log_binomial_pmf(10, 9, 1.0), -std::numeric_limits<double>::infinity());
  for (int n = 1; n <= 60; ++n)
    for (double a : {0.01, 0.3, 0.77}) {
      double s = 0.0;
      for (int g = 0; g <= n; ++g) s += std::exp(log_binomial_pmf(n, g, a));
      EXPECT_NEAR(s, 1.0, 1e-10) << n << " " << a;
    }
}
