#include "ordopt/planner.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <limits>
#include <cstdio>
#include <numbers>

#include "ordopt/bounds.hpp"
#include "ordopt/errors.hpp"
#include "ordopt/gaussfn.hpp"
#include "ordopt/types.hpp"
#include "theta_search.hpp"

namespace ordopt {
namespace {

const double kLogLog2 = std::log(std::numbers::ln2);
const double kMaxExactLog = 62.0 * std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(double alpha, double rho, double delta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw OutOfRange("alpha", "must lie in (0, 1)");
  if (!(rho > 0.0 && rho <= 1.0)) throw OutOfRange("rho", "must lie in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0)) throw OutOfRange("delta", "must lie in (0, 1)");
}

double horner(const std::array<double, 5>& a, double u) {
  return (((a[4] * u + a[3]) * u + a[2]) * u + a[1]) * u + a[0];
}

double horner_prime(const std::array<double, 5>& a, double u) {
  return ((4.0 * a[4] * u + 3.0 * a[3]) * u + 2.0 * a[2]) * u + a[1];
}

// log n at which the bound for theta reaches 1 - delta; inf if none.
double planned_log_n(double alpha, double rho, double delta, double theta) {
  double u;
  try {
    u = greatest_real_root(quartic_coefficients(alpha, rho, delta, theta));
  } catch (const NoRealRoot&) {
    return kInf;
  }
  if (!(u > 0.0)) return kInf;
  const auto k = make_qbound_constants(theta);
  const double log_n = u * u - std::log(k.c1);
  // Squaring can introduce spurious roots; keep only genuine solutions.
  const double got = bound_value(make_dominating_surrogate(log_n, theta), alpha, rho);
  const double want = 1.0 - delta;
  if (!(std::abs(got - want) <= 1e-6 * std::max(delta, 1e-300) + 1e-12)) return kInf;
  return log_n;
}

std::optional<std::int64_t> materialise(double log_n) {
  if (!(log_n <= kMaxExactLog)) return std::nullopt;
  const double n = std::ceil(std::exp(log_n) * (1.0 - 1e-15));
  return static_cast<std::int64_t>(std::max(1.0, n));
}

bool certify(double log_n, double theta) {
  if (const auto n = materialise(log_n)) return numerical_test(*n, theta);
  return numerical_test_log(log_n, theta);
}

}  // namespace

QuarticCoefficients quartic_coefficients(double alpha, double rho, double delta, double theta) {
  check_inputs(alpha, rho, delta);
  const auto k = make_qbound_constants(theta);
  const double a = std_quantile(alpha);
  const double q = std_quantile(1.0 - delta);
  const double rc2 = std::sqrt(k.c2);
  const double kk = a * a - q * q + rho * rho * q * q;
  QuarticCoefficients c;
  c.a4 = -2.0 * rho * rho / kLogLog2;
  c.a3 = -4.0 * a * rho * rc2 / kLogLog2;
  c.a2 = 2.0 * rho * rho - 2.0 * k.c2 * kk / kLogLog2;
  c.a1 = 4.0 * rc2 * a * rho;
  c.a0 = 2.0 * k.c2 * kk - rho * rho * q * q;
  return c;
}

double greatest_real_root(const QuarticCoefficients& c) {
  const std::array<double, 5> a{c.a0, c.a1, c.a2, c.a3, c.a4};
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (!(scale > 0.0)) throw OutOfRange("coefficients", "all coefficients are zero");

  int degree = 4;
  while (degree > 0 && std::abs(a[degree]) <= 1e-14 * scale) --degree;
  if (degree == 0) throw NoRealRoot("constant polynomial has no root");

  MatrixXd companion = MatrixXd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -a[i] / a[degree];
  const Eigen::EigenSolver<MatrixXd> solver(companion, false);
  const auto roots = solver.eigenvalues();

  std::array<double, 5> poly{};
  for (int i = 0; i <= degree; ++i) poly[i] = a[i];
  bool found = false;
  double best = 0.0;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (!(std::abs(roots(i).imag()) < 1e-9)) continue;
    double u = roots(i).real();
    const double d = horner_prime(poly, u);
    if (d != 0.0) u -= horner(poly, u) / d;
    if (u < 0.0) continue;
    if (!found || u > best) best = u;
    found = true;
  }
  if (!found) throw NoRealRoot("no real non-negative root");
  return best;
}

double PlanResult::log10_n() const { return log_n / std::numbers::ln10; }

std::string PlanResult::scientific() const {
  const double l = n_exact ? std::log10(static_cast<double>(*n_exact)) : log10_n();
  double exponent = std::floor(l);
  double mantissa = std::pow(10.0, l - exponent);
  if (std::round(mantissa * 1000.0) >= 10000.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3fe%.0f", mantissa, exponent);
  return buf;
}

PlanResult plan_sample_size(double alpha, double rho, double delta) {
  check_inputs(alpha, rho, delta);
  auto objective = [&](double theta) { return planned_log_n(alpha, rho, delta, theta); };
  auto certified = [&](double theta) { return certify(objective(theta), theta); };
  const auto best = detail::search_theta(objective, certified);
  if (!best) throw Infeasible("no theta certifies the requested guarantee");
  PlanResult r;
  r.log_n = best->objective;
  r.n_exact = materialise(r.log_n);
  r.theta_used = best->theta;
  r.certified = true;
  return r;
}

}  // namespace ordopt
