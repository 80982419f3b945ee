#include "ordopt/mvncdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ordopt/errors.hpp"
#include "ordopt/gaussfn.hpp"
#include "ordopt/parallel.hpp"
#include "ordopt/rng.hpp"

namespace ordopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-10;
constexpr int kMaxDim = 64;

// Lower-triangular factor in integration order. A zero diagonal marks a row
// that is an exact linear combination of earlier ones.
struct Factor {
  MatrixXd lower;
  VectorXd limit;
  std::vector<bool> degenerate;
};

double truncated_mean(double b) {
  // E[Y | Y < b] for standard normal Y.
  if (b == kInf) return 0.0;
  if (b < -37.0) return b;
  return -std_pdf(b) / std_cdf(b);
}

Factor reorder_and_factor(MatrixXd cov, VectorXd limit) {
  const int d = static_cast<int>(cov.rows());
  Factor f{MatrixXd::Zero(d, d), std::move(limit), std::vector<bool>(d, false)};
  MatrixXd& L = f.lower;
  VectorXd y = VectorXd::Zero(d);

  for (int k = 0; k < d; ++k) {
    // Choose the remaining variable with the smallest conditional probability.
    int best = -1;
    double best_prob = kInf;
    double best_var = 0.0;
    for (int i = k; i < d; ++i) {
      const double var = cov(i, i) - L.row(i).head(k).squaredNorm();
      if (var < -kPivotTol * std::max(1.0, cov(i, i)))
        throw NotPSD("covariance is not positive semidefinite (pivot " + std::to_string(var) + ")");
      const double shift = L.row(i).head(k).dot(y.head(k));
      double prob;
      if (var <= kPivotTol * std::max(1.0, cov(i, i))) {
        prob = (f.limit(i) - shift >= 0.0) ? 1.0 : 0.0;
      } else {
        prob = std_cdf((f.limit(i) - shift) / std::sqrt(var));
      }
      if (best < 0 || prob < best_prob) {
        best = i;
        best_prob = prob;
        best_var = var;
      }
    }
    if (best != k) {
      std::swap(f.limit(k), f.limit(best));
      cov.row(k).swap(cov.row(best));
      cov.col(k).swap(cov.col(best));
      L.row(k).swap(L.row(best));
    }
    if (best_var <= kPivotTol * std::max(1.0, cov(k, k))) {
      f.degenerate[k] = true;
      L(k, k) = 0.0;
      y(k) = 0.0;
      continue;
    }
    const double pivot = std::sqrt(best_var);
    L(k, k) = pivot;
    for (int i = k + 1; i < d; ++i)
      L(i, k) = (cov(i, k) - L.row(i).head(k).dot(L.row(k).head(k))) / pivot;
    const double shift = L.row(k).head(k).dot(y.head(k));
    y(k) = truncated_mean((f.limit(k) - shift) / pivot);
  }
  return f;
}

std::vector<double> lattice_generator(int dims) {
  std::vector<double> gen;
  for (int p = 2; static_cast<int>(gen.size()) < dims; ++p) {
    bool prime = true;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) {
        prime = false;
        break;
      }
    if (prime) {
      const double r = std::sqrt(static_cast<double>(p));
      gen.push_back(r - std::floor(r));
    }
  }
  return gen;
}

class Integrand {
 public:
  explicit Integrand(const Factor& f) : f_(f), d_(static_cast<int>(f.limit.size())), y_(d_) {
    // A row's draw is needed only when some later row depends on it.
    for (int k = 0; k < d_; ++k) {
      if (f_.degenerate[k]) continue;
      if (k + 1 < d_) consumes_.push_back(k);
    }
  }

  int dims() const { return static_cast<int>(consumes_.size()); }

  double operator()(const double* w) {
    double prob = 1.0;
    int next_w = 0;
    for (int k = 0; k < d_; ++k) {
      double shift = 0.0;
      for (int j = 0; j < k; ++j) shift += f_.lower(k, j) * y_[j];
      if (f_.degenerate[k]) {
        if (shift > f_.limit(k)) return 0.0;
        y_[k] = 0.0;
        continue;
      }
      const double e = std_cdf((f_.limit(k) - shift) / f_.lower(k, k));
      prob *= e;
      if (prob == 0.0) return 0.0;
      if (next_w < dims() && consumes_[next_w] == k) {
        const double u = std::clamp(w[next_w] * e, 1e-300, 1.0 - 1e-16);
        y_[k] = std_quantile(u);
        ++next_w;
      } else {
        y_[k] = 0.0;
      }
    }
    return prob;
  }

 private:
  const Factor& f_;
  int d_;
  std::vector<double> y_;
  std::vector<int> consumes_;
};

struct ShiftState {
  std::vector<double> offset;
  double sum = 0.0;
};

}  // namespace

MvnResult mvn_cdf(const MvnProblem& problem, const MvnOptions& options) {
  const auto d = problem.mean.size();
  if (problem.cov.rows() != d || problem.cov.cols() != d || problem.upper.size() != d)
    throw DimensionMismatch("mean, cov and upper must have matching dimensions");
  if (d < 1 || d > kMaxDim) throw OutOfRange("dimension", "must lie in [1, 64]");
  if (!(options.target_abs_error > 0.0)) throw OutOfRange("target_abs_error", "must be > 0");
  if (options.shifts < 2) throw OutOfRange("shifts", "need at least two shifts");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!(problem.cov(i, i) > 0.0)) throw OutOfRange("cov", "diagonal must be strictly positive");
    for (Eigen::Index j = 0; j < i; ++j)
      if (std::abs(problem.cov(i, j) - problem.cov(j, i)) > 1e-12)
        throw OutOfRange("cov", "must be symmetric");
  }

  // Drop +inf limits (marginalise) and short-circuit -inf ones.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double b = problem.upper(i) - problem.mean(i);
    if (std::isnan(b)) throw OutOfRange("upper", "NaN limit");
    if (b == -kInf) return {0.0, 0.0, 0};
    if (b != kInf) keep.push_back(i);
  }
  if (keep.empty()) return {1.0, 0.0, 0};

  const auto k = static_cast<Eigen::Index>(keep.size());
  MatrixXd cov(k, k);
  VectorXd limit(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    limit(i) = problem.upper(keep[i]) - problem.mean(keep[i]);
    for (Eigen::Index j = 0; j < k; ++j) cov(i, j) = problem.cov(keep[i], keep[j]);
  }
  if (k == 1) return {std_cdf(limit(0) / std::sqrt(cov(0, 0))), 0.0, 1};

  const Factor factor = reorder_and_factor(std::move(cov), std::move(limit));
  const int dims = Integrand(factor).dims();
  if (dims == 0) {
    Integrand f(factor);
    return {std::clamp(f(nullptr), 0.0, 1.0), 0.0, 1};
  }

  const auto gen = lattice_generator(dims);
  const int shifts = options.shifts;
  std::vector<ShiftState> state(shifts);
  for (int s = 0; s < shifts; ++s) {
    PhiloxStream stream(options.seed, static_cast<std::uint64_t>(s));
    state[s].offset.resize(dims);
    for (auto& o : state[s].offset) o = stream.uniform();
  }

  // Each lattice point is evaluated with its antithetic partner.
  std::int64_t per_shift = 0;
  std::int64_t batch = 64;
  double mean = 0.0;
  double error = kInf;
  const int workers = detail::resolve_workers(options.workers);
  while (true) {
    const std::int64_t from = per_shift;
    const std::int64_t to = per_shift + batch;
    detail::parallel_for(static_cast<std::size_t>(shifts), workers,
                         [&](std::size_t begin, std::size_t end, int) {
                           Integrand f(factor);
                           std::vector<double> w(dims), anti(dims);
                           for (std::size_t s = begin; s < end; ++s) {
                             auto& st = state[s];
                             for (std::int64_t i = from + 1; i <= to; ++i) {
                               for (int j = 0; j < dims; ++j) {
                                 double x = static_cast<double>(i) * gen[j] + st.offset[j];
                                 x -= std::floor(x);
                                 w[j] = std::abs(2.0 * x - 1.0);
                                 anti[j] = 1.0 - w[j];
                               }
                               st.sum += 0.5 * (f(w.data()) + f(anti.data()));
                             }
                           }
                         });
    per_shift = to;

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& st : state) {
      const double est = st.sum / static_cast<double>(per_shift);
      sum += est;
      sum_sq += est * est;
    }
    mean = sum / shifts;
    const double var = std::max(0.0, (sum_sq - shifts * mean * mean) / (shifts - 1));
    error = 3.0 * std::sqrt(var / shifts);

    const std::int64_t used = 2 * per_shift * shifts;
    if (error <= options.target_abs_error || 2 * used > options.max_points) break;
    batch = per_shift;  // double the budget
  }
  return {std::clamp(mean, 0.0, 1.0), error, 2 * per_shift * shifts};
}

}  // namespace ordopt
