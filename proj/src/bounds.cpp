#include "ordopt/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ordopt/errors.hpp"
#include "theta_search.hpp"

namespace ordopt {
namespace {

constexpr int kGridPoints = 10001;
constexpr double kMargin = 1e-12;

const double kLogLog2 = std::log(std::numbers::ln2);

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2))
    throw OutOfRange("theta", "must lie in (0, pi/2)");
}

void check_alpha_rho(double alpha, double rho) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw OutOfRange("alpha", "must lie in (0, 1]");
  if (!(rho > 0.0 && rho <= 1.0)) throw OutOfRange("rho", "must lie in (0, 1]");
}

double log_n_of(std::int64_t n) {
  if (n < 1) throw OutOfRange("n", "must be at least 1");
  return std::log(static_cast<double>(n));
}

// log(exp(a) + exp(b))
double log_add(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Q(z)^n <= Q((z - mu)/sigma) on [mu, 0], compared as
// log n + log(-log Q(z)) >= log(-log Q(w)).
bool grid_check(const DominatingSurrogate& s) {
  const double sigma = std::sqrt(s.sigma2_n);
  for (int i = 0; i < kGridPoints; ++i) {
    const double z = s.mu_n * (1.0 - static_cast<double>(i) / (kGridPoints - 1));
    const double lhs = s.log_n + log_neg_log_q(z);
    const double rhs = log_neg_log_q((z - s.mu_n) / sigma);
    if (!(lhs >= rhs + kMargin * std::max(1.0, std::abs(rhs)))) return false;
  }
  return true;
}

// (n/2 - c2/s2)(n log 2 + mu^2/s2 - log c1) >= c2^2 mu^2 / s2^2, in logs.
bool right_interval_check(const DominatingSurrogate& s) {
  const double c1 = s.constants.c1;
  const double c2 = s.constants.c2;
  const double ratio = std::log(c2 / s.sigma2_n) - s.log_n;  // log((c2/s2)/n)
  if (!(ratio < std::log(0.5))) return false;
  const double log_a = s.log_n + std::log(0.5 - std::exp(ratio));
  const double tail = s.mu_n * s.mu_n / s.sigma2_n - std::log(c1);
  const double log_b = log_add(s.log_n + std::log(std::numbers::ln2), std::log(tail));
  const double log_rhs = 2.0 * std::log(c2) + 2.0 * std::log(-s.mu_n) - 2.0 * std::log(s.sigma2_n);
  return log_a + log_b >= log_rhs;
}

}  // namespace

DistFreeBounds dist_free_bounds(std::int64_t n, std::int64_t m, double alpha) {
  if (n < 1) throw OutOfRange("n", "must be at least 1");
  if (m < 1 || m > n) throw OutOfRange("m", "must lie in [1, n]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw OutOfRange("alpha", "must lie in [0, 1]");
  if (alpha == 1.0) return {1.0, 1.0};
  const double l = std::log1p(-alpha);
  return {-std::expm1(static_cast<double>(m) * l), -std::expm1(static_cast<double>(n) * l)};
}

DominatingSurrogate make_dominating_surrogate(double log_n, double theta) {
  check_theta(theta);
  const auto k = make_qbound_constants(theta);
  const double log_nc1 = log_n + std::log(k.c1);
  if (!(log_nc1 > 0.0)) throw OutOfRange("n", "n c1 must exceed 1");
  DominatingSurrogate s;
  s.theta = theta;
  s.constants = k;
  s.log_n = log_n;
  s.mu_n = -std::sqrt(log_nc1 / k.c2);
  s.sigma2_n = -kLogLog2 / (2.0 * k.c2 * (log_nc1 - kLogLog2));
  return s;
}

bool numerical_test_log(double log_n, double theta) {
  check_theta(theta);
  const auto k = make_qbound_constants(theta);
  if (!(log_n + std::log(k.c1) > 0.0)) return false;
  const auto s = make_dominating_surrogate(log_n, theta);
  return grid_check(s) && right_interval_check(s);
}

bool numerical_test(std::int64_t n, double theta) { return numerical_test_log(log_n_of(n), theta); }

std::string_view to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::dist_free_lower: return "dist_free_lower";
    case BoundMethod::dist_free_upper: return "dist_free_upper";
    case BoundMethod::fixed_theta: return "fixed_theta";
    case BoundMethod::optimised: return "optimised";
  }
  return "unknown";
}

double bound_value(const DominatingSurrogate& s, double alpha, double rho) {
  if (alpha == 1.0) return 1.0;
  const double spread = std::sqrt((1.0 - rho) * (1.0 + rho) + rho * rho * s.sigma2_n);
  return std_cdf((std_quantile(alpha) - rho * s.mu_n) / spread);
}

BoundResult lower_bound_log(double log_n, double alpha, double rho, double theta) {
  check_alpha_rho(alpha, rho);
  check_theta(theta);
  BoundResult r;
  r.method = BoundMethod::fixed_theta;
  r.theta_used = theta;
  if (!numerical_test_log(log_n, theta)) return r;
  r.feasible = true;
  r.value = bound_value(make_dominating_surrogate(log_n, theta), alpha, rho);
  return r;
}

BoundResult lower_bound(std::int64_t n, double alpha, double rho, double theta) {
  return lower_bound_log(log_n_of(n), alpha, rho, theta);
}

BoundResult optimised_lower_bound(std::int64_t n, double alpha, double rho) {
  check_alpha_rho(alpha, rho);
  const double log_n = log_n_of(n);
  auto objective = [&](double theta) {
    const auto k = make_qbound_constants(theta);
    if (!(log_n + std::log(k.c1) > 0.0)) return std::numeric_limits<double>::infinity();
    return -bound_value(make_dominating_surrogate(log_n, theta), alpha, rho);
  };
  auto certify = [&](double theta) { return numerical_test_log(log_n, theta); };

  BoundResult r;
  r.method = BoundMethod::optimised;
  const auto best = detail::search_theta(objective, certify);
  if (!best) return r;
  r.feasible = true;
  r.theta_used = best->theta;
  r.value = -best->objective;
  return r;
}

}  // namespace ordopt
