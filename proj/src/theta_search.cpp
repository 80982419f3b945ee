#include "theta_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace ordopt::detail {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr int kUniformPoints = 64;
constexpr int kUpperEdgePoints = 32;
constexpr int kLowerEdgePoints = 16;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Probe {
  double theta;
  double value;
};

std::vector<double> scan_points() {
  std::vector<double> pts;
  for (int i = 0; i < kUniformPoints; ++i)
    pts.push_back(0.01 + (kHalfPi - 0.02) * i / (kUniformPoints - 1));
  for (int i = 0; i < kUpperEdgePoints; ++i)
    pts.push_back(kHalfPi - std::pow(10.0, -9.0 + 7.0 * i / (kUpperEdgePoints - 1)));
  for (int i = 0; i < kLowerEdgePoints; ++i)
    pts.push_back(std::pow(10.0, -6.0 + 4.0 * i / (kLowerEdgePoints - 1)));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double tolerance_at(double theta) {
  return 1e-6 * std::min({1.0, theta, kHalfPi - theta});
}

/// Golden-section minimisation of f on [a, b]; returns the best point seen,
/// which is never worse than `seed`.
Probe golden(const std::function<double(double)>& f, double a, double b, Probe seed) {
  constexpr double r = 0.6180339887498949;
  Probe best = seed;
  auto eval = [&](double t) {
    const double v = f(t);
    if (v < best.value) best = {t, v};
    return v;
  };
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  for (int it = 0; it < 200 && (b - a) > tolerance_at(0.5 * (a + b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = eval(x2);
    }
  }
  return best;
}

Probe refine(const std::function<double(double)>& f, const std::vector<Probe>& probes,
             std::size_t i) {
  const double a = i > 0 ? probes[i - 1].theta : 0.5 * probes[i].theta;
  const double b = i + 1 < probes.size() ? probes[i + 1].theta
                                         : 0.5 * (probes[i].theta + kHalfPi);
  return golden(f, a, b, probes[i]);
}

}  // namespace

std::optional<ThetaChoice> search_theta(const std::function<double(double)>& objective,
                                        const std::function<bool(double)>& certify) {
  auto f = [&](double t) {
    const double v = objective(t);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<Probe> probes;
  for (double t : scan_points()) probes.push_back({t, f(t)});

  std::vector<std::size_t> order(probes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probes[a].value < probes[b].value; });
  if (!std::isfinite(probes[order.front()].value)) return std::nullopt;

  const Probe free_best = refine(f, probes, order.front());
  if (std::isfinite(free_best.value) && certify(free_best.theta))
    return ThetaChoice{free_best.theta, free_best.value};

  for (std::size_t idx : order) {
    if (!std::isfinite(probes[idx].value)) break;
    if (!certify(probes[idx].theta)) continue;
    auto constrained = [&](double t) {
      const double v = f(t);
      return std::isfinite(v) && certify(t) ? v : kInf;
    };
    const Probe best = refine(constrained, probes, idx);
    return ThetaChoice{best.theta, best.value};
  }
  return std::nullopt;
}

}  // namespace ordopt::detail
