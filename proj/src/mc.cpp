#include "ordopt/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ordopt/errors.hpp"
#include "ordopt/gaussfn.hpp"
#include "ordopt/parallel.hpp"

namespace ordopt {
namespace {

constexpr std::int64_t kFullSamplerLimit = 1024;
constexpr double kZ95 = 1.959963984540054;

// Observed values of the m lowest candidates arrive in increasing order via
// exponential spacings of uniform order statistics; true values follow from
// X | Z = z ~ N(rho z, 1 - rho^2).
bool replicate_order_statistics(const ProblemSpec& spec, double x_star, PhiloxStream& stream) {
  const double rho = spec.rho;
  const double resid = std::sqrt((1.0 - rho) * (1.0 + rho));
  double log_survival = 0.0;
  for (std::int64_t k = 0; k < spec.m; ++k) {
    log_survival += std::log(stream.uniform()) / static_cast<double>(spec.n - k);
    const double z = std_quantile(-std::expm1(log_survival));
    const double x = rho * z + resid * stream.normal();
    if (x <= x_star) return true;
  }
  return false;
}

bool replicate_full(const ProblemSpec& spec, double x_star, PhiloxStream& stream,
                    std::vector<CopulaPair>& buffer) {
  const double rho = spec.rho;
  const double resid = std::sqrt((1.0 - rho) * (1.0 + rho));
  buffer.resize(static_cast<std::size_t>(spec.n));
  for (auto& p : buffer) {
    p.x = stream.normal();
    p.z = rho * p.x + resid * stream.normal();
  }
  select_smallest(buffer, spec.m);
  for (std::int64_t k = 0; k < spec.m; ++k)
    if (buffer[static_cast<std::size_t>(k)].x <= x_star) return true;
  return false;
}

Interval wilson(double p, double t) {
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace

std::vector<CopulaPair> sample_copula_pairs(const ProblemSpec& spec, std::int64_t count,
                                            PhiloxStream& stream) {
  validate(spec);
  if (count < 0) throw OutOfRange("count", "must be non-negative");
  const double rho = spec.rho;
  const double resid = std::sqrt((1.0 - rho) * (1.0 + rho));
  std::vector<CopulaPair> out(static_cast<std::size_t>(count));
  for (auto& p : out) {
    p.x = stream.normal();
    p.z = rho * p.x + resid * stream.normal();
  }
  return out;
}

void select_smallest(std::span<CopulaPair> pairs, std::int64_t m) {
  if (m < 1 || static_cast<std::size_t>(m) > pairs.size())
    throw OutOfRange("m", "must lie in [1, number of pairs]");
  if (static_cast<std::size_t>(m) == pairs.size()) return;
  std::nth_element(pairs.begin(), pairs.begin() + (m - 1), pairs.end(),
                   [](const CopulaPair& a, const CopulaPair& b) { return a.z < b.z; });
}

McEstimate mc_estimate(const ProblemSpec& spec, const McConfig& cfg) {
  validate(spec);
  if (cfg.replications < 1) throw OutOfRange("replications", "must be at least 1");
  if (cfg.workers < 0) throw OutOfRange("workers", "must be >= 0");

  const double x_star = std_quantile(spec.alpha);
  const bool full = cfg.sampler == McSampler::full ||
                    (cfg.sampler == McSampler::automatic && spec.n <= kFullSamplerLimit);
  const int workers = detail::resolve_workers(cfg.workers);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(workers), 0);

  detail::parallel_for(static_cast<std::size_t>(cfg.replications), workers,
                       [&](std::size_t begin, std::size_t end, int worker) {
                         std::vector<CopulaPair> buffer;
                         std::int64_t hits = 0;
                         for (std::size_t i = begin; i < end; ++i) {
                           PhiloxStream stream(cfg.seed, i);
                           const bool ok = full ? replicate_full(spec, x_star, stream, buffer)
                                                : replicate_order_statistics(spec, x_star, stream);
                           hits += ok ? 1 : 0;
                         }
                         counts[static_cast<std::size_t>(worker)] = hits;
                       });

  McEstimate e;
  e.replications = cfg.replications;
  for (auto c : counts) e.successes += c;
  const double t = static_cast<double>(cfg.replications);
  e.p_hat = static_cast<double>(e.successes) / t;
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / t);
  if (e.successes == 0 || e.successes == cfg.replications) {
    e.ci95 = wilson(e.p_hat, t);
  } else {
    e.ci95 = {std::max(0.0, e.p_hat - kZ95 * e.std_err), std::min(1.0, e.p_hat + kZ95 * e.std_err)};
  }
  return e;
}

}  // namespace ordopt
