#include "ordopt/orderstats.hpp"

#include <algorithm>
#include <array>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "ordopt/errors.hpp"
#include "ordopt/gaussfn.hpp"

namespace ordopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Beyond 10 standard deviations the standard normal mass is below 1e-23.
constexpr double kTail = 10.0;
// Noise density is negligible beyond this many of its standard deviations.
constexpr double kNoiseWidth = 9.0;

double xlogy(double k, double y) {
  if (k == 0.0) return 0.0;
  return k * std::log(y);
}

}  // namespace

double TruncatedGaussian::pdf(double x) const {
  const bool inside = side == TruncSide::left_of ? x <= cut : x >= cut;
  return inside ? std_pdf(x) / total_mass : 0.0;
}

double TruncatedGaussian::cdf(double x) const {
  if (side == TruncSide::left_of) {
    if (x >= cut) return 1.0;
    return std::min(1.0, std_cdf(x) / total_mass);
  }
  if (x <= cut) return 0.0;
  // Difference of whichever tail is smaller, to avoid cancellation.
  const double mass = cut >= 0.0 ? std_q(cut) - std_q(x) : std_cdf(x) - std_cdf(cut);
  return std::clamp(mass / total_mass, 0.0, 1.0);
}

double TruncatedGaussian::support_lo() const {
  return side == TruncSide::left_of ? std::min(cut, 0.0) - kTail : std::max(cut, -kTail);
}

double TruncatedGaussian::support_hi() const {
  return side == TruncSide::left_of ? std::min(cut, kTail) : std::max(cut, 0.0) + kTail;
}

TruncatedGaussian acceptable_part(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw OutOfRange("alpha", "must lie in (0, 1]");
  const double cut = std_quantile(alpha);
  return {TruncSide::left_of, cut, cut == kInf ? 1.0 : std_cdf(cut)};
}

TruncatedGaussian unacceptable_part(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw OutOfRange("alpha", "must lie in [0, 1)");
  const double cut = std_quantile(alpha);
  return {TruncSide::right_of, cut, cut == -kInf ? 1.0 : std_q(cut)};
}

namespace {

template <class Kernel>
double convolve(const TruncNoiseSum& d, double z, const QuadratureConfig& cfg, Kernel&& kernel) {
  const double lo = d.base.support_lo();
  const double hi = d.base.support_hi();
  const double xi = std::sqrt(d.noise_xi2);
  std::vector<double> breaks{lo, hi};
  for (double b : {z - kNoiseWidth * xi, z, z + kNoiseWidth * xi})
    if (b > lo && b < hi) breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  auto integrand = [&](double x) { return kernel(z - x, xi) * d.base.pdf(x); };
  return integrate(integrand, std::span<const double>(breaks), cfg).value;
}

}  // namespace

double trunc_sum_cdf(const TruncNoiseSum& d, double z, const QuadratureConfig& cfg) {
  if (!(d.noise_xi2 >= 0.0)) throw OutOfRange("noise_xi2", "must be >= 0");
  if (d.noise_xi2 == 0.0) return d.base.cdf(z);
  if (z == kInf) return 1.0;
  if (z == -kInf) return 0.0;
  const double v = convolve(d, z, cfg, [](double t, double xi) { return std_cdf(t / xi); });
  return std::clamp(v, 0.0, 1.0);
}

double trunc_sum_pdf(const TruncNoiseSum& d, double z, const QuadratureConfig& cfg) {
  if (!(d.noise_xi2 >= 0.0)) throw OutOfRange("noise_xi2", "must be >= 0");
  if (d.noise_xi2 == 0.0) return d.base.pdf(z);
  if (std::isinf(z)) return 0.0;
  const double v = convolve(d, z, cfg, [](double t, double xi) { return std_pdf(t / xi) / xi; });
  return std::max(v, 0.0);
}

ScalarFn orderstat_cdf(std::int64_t rank, std::int64_t n, ScalarFn parent_cdf) {
  if (n < 1) throw OutOfRange("n", "must be >= 1");
  if (rank < 1 || rank > n) throw OutOfRange("rank", "must lie in [1, n]");
  const double a = static_cast<double>(rank);
  const double b = static_cast<double>(n - rank + 1);
  return [a, b, parent = std::move(parent_cdf)](double x) {
    const double p = std::clamp(parent(x), 0.0, 1.0);
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    return boost::math::ibeta(a, b, p);
  };
}

ScalarFn first_orderstat_pdf(std::int64_t n, ScalarFn parent_pdf, ScalarFn parent_cdf) {
  if (n < 1) throw OutOfRange("n", "must be >= 1");
  const double nn = static_cast<double>(n);
  return [nn, pdf = std::move(parent_pdf), cdf = std::move(parent_cdf)](double x) {
    const double f = pdf(x);
    if (f == 0.0) return 0.0;
    if (nn == 1.0) return f;
    const double F = std::clamp(cdf(x), 0.0, 1.0);
    return nn * std::exp((nn - 1.0) * std::log1p(-F)) * f;
  };
}

double joint_orderstat_cdf(std::span<const std::int64_t> ranks, std::span<const double> points,
                           const ScalarFn& parent_cdf, std::int64_t n) {
  const std::size_t k = ranks.size();
  if (k == 0 || k > 4) throw OutOfRange("ranks", "between 1 and 4 ranks are supported");
  if (points.size() != k) throw DimensionMismatch("ranks and points differ in length");
  if (ranks.front() < 1 || ranks.back() > n) throw OutOfRange("ranks", "must lie in [1, n]");
  for (std::size_t i = 1; i < k; ++i)
    if (ranks[i] <= ranks[i - 1]) throw OutOfRange("ranks", "must be strictly ascending");

  // Backward-minimum rectification.
  std::array<double, 4> x{};
  x[k - 1] = points[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) x[i] = std::min(points[i], x[i + 1]);

  std::array<double, 4> F{};
  for (std::size_t i = 0; i < k; ++i) F[i] = std::clamp(parent_cdf(x[i]), 0.0, 1.0);
  for (std::size_t i = 1; i < k; ++i) F[i] = std::max(F[i], F[i - 1]);

  const double nn = static_cast<double>(n);
  const double log_nfact = std::lgamma(nn + 1.0);
  std::array<std::int64_t, 4> idx{};
  double total = 0.0;

  // Nested sum over i_k >= n_k, i_{k-1} in [n_{k-1}, i_k], ..., i_1 in [n_1, i_2].
  auto recurse = [&](auto& self, std::size_t level, std::int64_t upper) -> void {
    for (std::int64_t i = ranks[level]; i <= upper; ++i) {
      idx[level] = i;
      if (level > 0) {
        self(self, level - 1, i);
        continue;
      }
      const double i1 = static_cast<double>(idx[0]);
      double log_term = log_nfact - std::lgamma(i1 + 1.0) + xlogy(i1, F[0]);
      for (std::size_t j = 1; j < k; ++j) {
        const double gap = static_cast<double>(idx[j] - idx[j - 1]);
        log_term += -std::lgamma(gap + 1.0) + xlogy(gap, F[j] - F[j - 1]);
      }
      const double rest = nn - static_cast<double>(idx[k - 1]);
      log_term += -std::lgamma(rest + 1.0) + xlogy(rest, 1.0 - F[k - 1]);
      total += std::exp(log_term);
    }
  };
  recurse(recurse, k - 1, n);
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace ordopt
