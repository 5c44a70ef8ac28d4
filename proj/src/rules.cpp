#include "sgbem/rules.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>

#include "sgbem/error.hpp"

namespace sgbem {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root on [-1,1]; map to (0,1) ascending.
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[n - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

namespace {

// Discretization of ln(1/x) dx on dyadic subintervals [2^-(j+1), 2^-j]; the
// remaining piece [0, 2^-96] carries mass below 1e-27.
struct DiscreteMeasure {
  std::vector<long double> x, w;
};

DiscreteMeasure log_measure() {
  const auto base = gauss_legendre(40);
  DiscreteMeasure m;
  for (int j = 0; j < 96; ++j) {
    const long double hi = std::ldexp(1.0L, -j), lo = hi / 2;
    for (int i = 0; i < base.size(); ++i) {
      const long double xi = lo + (hi - lo) * base.nodes[i];
      m.x.push_back(xi);
      m.w.push_back((hi - lo) * base.weights[i] * -std::log(xi));
    }
  }
  return m;
}

}  // namespace

QuadratureRule gauss_log(int n) {
  if (n < 1) throw ValidationError("gauss_log: n must be >= 1");
  static const DiscreteMeasure measure = log_measure();
  const std::size_t m = measure.x.size();

  // Stieltjes procedure for the recurrence coefficients of the monic
  // orthogonal polynomials of the discretized measure.
  std::vector<long double> alpha(n), beta(n);
  std::vector<long double> p_prev(m, 0.0L), p_cur(m, 1.0L);
  long double norm_prev = 1.0L;
  for (int k = 0; k < n; ++k) {
    long double norm = 0.0L, moment = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
      const long double wp = measure.w[i] * p_cur[i] * p_cur[i];
      norm += wp;
      moment += wp * measure.x[i];
    }
    alpha[k] = moment / norm;
    beta[k] = k == 0 ? norm : norm / norm_prev;
    for (std::size_t i = 0; i < m; ++i) {
      const long double next = (measure.x[i] - alpha[k]) * p_cur[i] - (k == 0 ? 0.0L : beta[k]) * p_prev[i];
      p_prev[i] = p_cur[i];
      p_cur[i] = next;
    }
    norm_prev = norm;
  }

  // Golub-Welsch.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) jacobi(k, k) = static_cast<double>(alpha[k]);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = static_cast<double>(std::sqrt(beta[k]));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  QuadratureRule rule;
  rule.weight_kind = WeightKind::Log;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mass = static_cast<double>(beta[0]);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights[i] = mass * v0 * v0;
  }
  return rule;
}

namespace {

template <QuadratureRule (*Make)(int)>
const QuadratureRule& memoized(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(Make(n));
  return *slot;
}

}  // namespace

const QuadratureRule& cached_gauss_legendre(int n) { return memoized<gauss_legendre>(n); }
const QuadratureRule& cached_gauss_log(int n) { return memoized<gauss_log>(n); }

}  // namespace sgbem
