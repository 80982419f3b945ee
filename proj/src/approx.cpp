#include "ordopt/approx.hpp"

#include <algorithm>
#include <cmath>

#include "ordopt/gaussfn.hpp"

namespace ordopt {

GaussianSurrogate<double> surrogate_top_orderstats(std::int64_t n, std::int64_t m,
                                                   DensityReading reading, double xi2) {
  if (n < 1) throw OutOfRange("n", "must be at least 1");
  if (m < 1 || m > n) throw OutOfRange("m", "must lie in [1, n]");
  if (m == n) throw Degenerate("m == n: the lowest level p_1 = 0 has no quantile");
  if (!(xi2 >= 0.0) || !std::isfinite(xi2)) throw OutOfRange("xi2", "must be finite and >= 0");
  if (m > 64) throw OutOfRange("m", "at most 64 selected candidates are supported");

  const double nn = static_cast<double>(n);
  const auto k = static_cast<Eigen::Index>(m);
  VectorXd p(k), q(k), dens(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    p(i) = static_cast<double>(n - m + i) / nn;
    q(i) = std_quantile(p(i));
    dens(i) = std_pdf(q(i));
  }
  const double scale = reading == DensityReading::noise_scaled ? std::sqrt(1.0 + xi2) : 1.0;

  GaussianSurrogate<double> s;
  s.mean = q;
  s.cov.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      const double c = scale * p(i) * (1.0 - p(j)) / (nn * dens(i) * dens(j));
      s.cov(i, j) = c;
      s.cov(j, i) = c;
    }
  s.n = n;
  s.kind = SurrogateKind::top_orderstats;
  return s;
}

ProbabilityResult approx_success_probability(const ProblemSpec& spec, std::uint64_t seed,
                                             const ApproxOptions& options) {
  validate(spec);
  if (spec.m == spec.n) throw Degenerate("m == n: use the exact or bound methods");
  if (spec.alpha == 1.0) return {1.0, 0.0, "approx"};

  const double xi2 = copula_to_noise(spec.rho);
  const auto z = surrogate_top_orderstats(spec.n, spec.m, options.reading, xi2);
  const auto x = condition_and_marginalize(z, spec.rho);
  const double limit = std_quantile(1.0 - spec.alpha);

  if (spec.m == 1) {
    const double sd = std::sqrt(x.cov(0, 0));
    return {std_q((limit - x.mean(0)) / sd), 0.0, "approx"};
  }

  MvnProblem problem{x.mean, x.cov, VectorXd::Constant(x.mean.size(), limit)};
  MvnOptions mvn = options.mvn;
  mvn.seed = seed;
  const auto r = mvn_cdf(problem, mvn);
  const double value = std::clamp(1.0 - r.value, 0.0, 1.0);
  return {value, r.error_estimate, "approx"};
}

}  // namespace ordopt
