#include "ordopt/exact.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ordopt/errors.hpp"
#include "ordopt/gaussfn.hpp"
#include "ordopt/orderstats.hpp"
#include "ordopt/parallel.hpp"

namespace ordopt {
namespace {

constexpr double kSkipRatio = 1e-16;
constexpr double kTailMass = 1e-15;
constexpr double kNoiseWidth = 9.0;

struct Term {
  double value = 0.0;
  double error = 0.0;
};

Term failure_term(std::int64_t g, const ProblemSpec& spec, const QuadratureConfig& cfg) {
  const double xi2 = copula_to_noise(spec.rho);
  const double xi = std::sqrt(xi2);
  const TruncNoiseSum upper{unacceptable_part(spec.alpha), xi2};
  const TruncNoiseSum lower{acceptable_part(spec.alpha), xi2};
  const double cut = lower.base.cut;

  QuadratureConfig inner = cfg;
  inner.abs_tol = cfg.abs_tol * 1e-2;
  inner.rel_tol = cfg.rel_tol * 1e-2;

  auto upper_cdf = [upper, inner](double z) { return trunc_sum_cdf(upper, z, inner); };
  auto lower_cdf = [lower, inner](double z) { return trunc_sum_cdf(lower, z, inner); };
  auto lower_pdf = [lower, inner](double z) { return trunc_sum_pdf(lower, z, inner); };

  const ScalarFn mth_unacceptable = orderstat_cdf(spec.m, spec.n - g, upper_cdf);
  const ScalarFn min_acceptable = first_orderstat_pdf(g, lower_pdf, lower_cdf);

  // Window holding all but ~1e-15 of the minimum's mass. Above: the noise
  // tail, Pr(Z > cut + t) <= Q(t / xi). Below: Pr(min < lo) <= g F(lo).
  const double gg = static_cast<double>(g);
  const double hi = cut + kNoiseWidth * xi;
  const double scale = std::sqrt(1.0 + xi2);
  double lo = cut - scale;
  double lo_mass = gg * lower_cdf(lo);
  for (int step = 0; step < 200 && lo_mass > kTailMass; ++step) {
    lo -= scale;
    lo_mass = gg * lower_cdf(lo);
  }
  const double hi_mass = xi > 0.0 ? std::pow(std_q(kNoiseWidth), gg) : 0.0;
  if (!(hi > lo)) return {0.0, lo_mass};

  std::vector<double> breaks{lo, hi};
  if (cut > lo && cut < hi) breaks.insert(breaks.begin() + 1, cut);
  auto integrand = [&](double z) { return mth_unacceptable(z) * min_acceptable(z); };
  const auto r = integrate(integrand, std::span<const double>(breaks), cfg);
  return {std::clamp(r.value, 0.0, 1.0), r.error + lo_mass + hi_mass};
}

}  // namespace

double conditional_failure_probability(std::int64_t g, const ProblemSpec& spec,
                                       const QuadratureConfig& cfg) {
  validate(spec);
  validate(cfg);
  if (g < 1 || g > spec.n - spec.m) throw OutOfRange("g", "must lie in [1, n - m]");
  if (spec.alpha == 1.0) throw OutOfRange("alpha", "alpha = 1 leaves no unacceptable candidates");
  return failure_term(g, spec, cfg).value;
}

ExactResult exact_success_probability(const ProblemSpec& spec, const QuadratureConfig& cfg,
                                      int workers) {
  validate(spec);
  validate(cfg);
  if (spec.alpha == 1.0) return {1.0, 0.0, 0};

  const double n = static_cast<double>(spec.n);
  const double any_acceptable = -std::expm1(n * std::log1p(-spec.alpha));

  std::vector<std::int64_t> terms;
  std::vector<double> weights;
  double skipped = 0.0;
  for (std::int64_t g = 1; g <= spec.n - spec.m; ++g) {
    const double w = std::exp(log_binomial_pmf(spec.n, g, spec.alpha));
    if (w < kSkipRatio * any_acceptable) {
      skipped += w;
      continue;
    }
    terms.push_back(g);
    weights.push_back(w);
  }

  std::vector<Term> results(terms.size());
  detail::parallel_for(terms.size(), detail::resolve_workers(workers),
                       [&](std::size_t begin, std::size_t end, int) {
                         for (std::size_t i = begin; i < end; ++i)
                           results[i] = failure_term(terms[i], spec, cfg);
                       });

  double failure = 0.0;
  double error = skipped;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    failure += weights[i] * results[i].value;
    error += weights[i] * results[i].error;
  }
  return {std::clamp(any_acceptable - failure, 0.0, 1.0), error,
          static_cast<std::int64_t>(terms.size())};
}

}  // namespace ordopt
