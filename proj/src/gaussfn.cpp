#include "ordopt/gaussfn.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "ordopt/errors.hpp"

namespace ordopt {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Wichura, AS241 (PPND16). Coefficients in ascending powers.
constexpr std::array<double, 8> kA = {
    3.3871328727963666080e0,  1.3314166789178437745e+2, 1.9715909503065514427e+3,
    1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
    3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr std::array<double, 8> kB = {
    1.0,                      4.2313330701600911252e+1, 6.8718700749205790830e+2,
    5.3941960214247511077e+3, 2.1213794301586595867e+4, 3.9307895800092710610e+4,
    2.8729085735721942674e+4, 5.2264952788528545610e+3};
constexpr std::array<double, 8> kC = {
    1.42343711074968357734e0,  4.63033784615654529590e0,  5.76949722146069140550e0,
    3.64784832476320460504e0,  1.27045825245236838258e0,  2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr std::array<double, 8> kD = {
    1.0,                       2.05319162663775882187e0,  1.67638483018380384940e0,
    6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9};
constexpr std::array<double, 8> kE = {
    6.65790464350110377720e0,  5.46378491116411436990e0,  1.78482653991729133580e0,
    2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr std::array<double, 8> kF = {
    1.0,                       5.99832206555887937690e-1, 1.36929880922735805310e-1,
    1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15};

// Quantile of a lower-tail probability r in (0, 0.5 - 0.425].
double lower_tail_quantile(double r) {
  double s = std::sqrt(-std::log(r));
  double x;
  if (s <= 5.0) {
    s -= 1.6;
    x = horner(kC, s) / horner(kD, s);
  } else {
    s -= 5.0;
    x = horner(kE, s) / horner(kF, s);
  }
  x = -x;
  // One Halley step against the erfc-based CDF.
  const double dens = std_pdf(x);
  if (dens > 0.0) {
    const double u = (std_cdf(x) - r) / dens;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace

double std_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_cdf(double x) { return std_q(-x); }

double std_q(double x) {
  if (x < 5.0) return 0.5 * std::erfc(x * kInvSqrt2);
  // Rounding x / sqrt(2) would cost ~x^2 ulps; split exp(-x^2/2) instead.
  const double hi = std::trunc(16.0 * x) / 16.0;
  const double lo = x - hi;
  const double gauss = std::exp(-0.5 * hi * hi) * std::exp(-0.5 * lo * (x + hi));
  return 0.5 * erfcx(x * kInvSqrt2) * gauss;
}

double std_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfRange("p", "probability must lie in [0, 1]");
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * horner(kA, r) / horner(kB, r);
  }
  // 1 - p is exact for p >= 1/2
  return q < 0.0 ? lower_tail_quantile(p) : -lower_tail_quantile(1.0 - p);
}

double erfcx(double x) {
  if (x < 5.0) return std::exp(x * x) * std::erfc(x);
  // Continued fraction erfcx(x) = 1/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
  // evaluated with the modified Lentz method.
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return kInvSqrtPi / f;
}

double log_std_cdf(double x) {
  if (std::isnan(x)) return x;
  if (x == -kInf) return -kInf;
  if (x >= 0.0) return std::log1p(-std_q(x));
  if (x > -20.0) return std::log(std_cdf(x));
  const double t = -x * kInvSqrt2;
  return std::log(0.5 * erfcx(t)) - t * t;
}

double log_std_q(double x) { return log_std_cdf(-x); }

double log_neg_log_q(double x) {
  if (x > 0.0) return std::log(-log_std_q(x));
  // Q(x) >= 1/2 here; -log Q = -log1p(-Phi(x)) and Phi(x) may be far below the
  // smallest double.
  const double log_p = log_std_cdf(x);
  if (log_p < -700.0) return log_p;
  const double p = std::exp(log_p);
  return std::log(-std::log1p(-p));
}

QBoundConstants make_qbound_constants(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2))
    throw OutOfRange("theta", "must lie in (0, pi/2)");
  QBoundConstants k;
  k.theta = theta;
  k.c1 = 0.5 - theta / std::numbers::pi;
  k.c2 = 1.0 / (std::tan(theta) * (std::numbers::pi - 2.0 * theta));
  return k;
}

QBounds q_bounds(double x, double theta) {
  if (!(x >= 0.0)) throw OutOfRange("x", "must be >= 0");
  const auto k = make_qbound_constants(theta);
  return {k.c1 * std::exp(-k.c2 * x * x), 0.5 * std::exp(-0.5 * x * x)};
}

double log_binomial_pmf(std::int64_t n, std::int64_t g, double alpha) {
  if (n < 0) throw OutOfRange("n", "must be >= 0");
  if (g < 0 || g > n) throw OutOfRange("g", "must lie in [0, n]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw OutOfRange("alpha", "must lie in [0, 1]");
  const auto nn = static_cast<double>(n);
  const auto gg = static_cast<double>(g);
  double log_terms = 0.0;
  if (g > 0) {
    if (alpha == 0.0) return -kInf;
    log_terms += gg * std::log(alpha);
  }
  if (g < n) {
    if (alpha == 1.0) return -kInf;
    log_terms += (nn - gg) * std::log1p(-alpha);
  }
  return std::lgamma(nn + 1.0) - std::lgamma(gg + 1.0) - std::lgamma(nn - gg + 1.0) + log_terms;
}

}  // namespace ordopt
