#pragma once

// One-dimensional Gaussian rules on (0,1).

#include <vector>

namespace sgbem {

enum class WeightKind { Unit, Log };

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, in (0,1)
  std::vector<double> weights;  // positive, summing to 1
  WeightKind weight_kind = WeightKind::Unit;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// n-point Gauss rule for the weight ln(1/x) on (0,1): the sum of
/// w_i f(x_i) approximates the integral of ln(1/x) f(x), exactly for
/// polynomials of degree 2n-1.
QuadratureRule gauss_log(int n);

/// Memoized variants; safe to call concurrently.
const QuadratureRule& cached_gauss_legendre(int n);
const QuadratureRule& cached_gauss_log(int n);

}  // namespace sgbem
