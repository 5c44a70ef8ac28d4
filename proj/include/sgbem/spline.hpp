#pragma once

// Polynomial spline spaces in B-form.
//
// A KnotVector of order k (degree k-1) holds the extended knot sequence
// tau_0 <= ... <= tau_{N+k}; the basis B_{0,k} ... B_{N,k} spans a space of
// dimension N+1 on [a,b] = [tau_{k-1}, tau_{N+1}].

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sgbem {

class KnotVector {
 public:
  /// Validates monotonicity, multiplicities <= order and a non-empty domain.
  KnotVector(int order, std::vector<double> knots);

  /// Open knot vector: end knots repeated `order` times, interior breakpoint
  /// i (1-based, i = 1..n-1) repeated multiplicities[i-1] times.
  static KnotVector open(int order, std::span<const double> breakpoints,
                         std::span<const int> interior_multiplicities);

  /// Open knot vector on n uniform intervals of [a,b], every interior
  /// breakpoint with the same multiplicity.
  static KnotVector open_uniform(int order, double a, double b, int intervals,
                                 int multiplicity = 1);

  int order() const { return order_; }
  int degree() const { return order_ - 1; }
  int dimension() const { return static_cast<int>(knots_.size()) - order_; }
  double front() const { return knots_[order_ - 1]; }
  double back() const { return knots_[knots_.size() - order_]; }
  const std::vector<double>& knots() const { return knots_; }
  double operator[](int i) const { return knots_[i]; }

  bool is_open() const;

  /// Distinct knot values in [a,b], i.e. t_0 < t_1 < ... < t_n.
  std::vector<double> breakpoints() const;

  /// Multiplicities of t_1 ... t_{n-1}.
  std::vector<int> interior_multiplicities() const;

  /// Number of occurrences of t among the knots.
  int multiplicity(double t) const;

  /// Index mu with tau_mu <= t < tau_{mu+1}, k-1 <= mu <= N. At t = b the last
  /// non-empty span is returned.
  int span(double t) const;

 private:
  int order_;
  std::vector<double> knots_;
};

/// The at most k basis functions that do not vanish at a parameter, together
/// with their derivatives. values(r, d) holds the d-th derivative of
/// B_{first + r, k}.
struct BasisValues {
  int first = 0;
  Eigen::MatrixXd values;
};

/// Cox-de Boor evaluation with derivatives up to deriv_order. Throws
/// DomainError when t is outside [a,b].
BasisValues eval_basis(const KnotVector& knots, double t, int deriv_order = 0);

/// Same, evaluating the polynomial piece of a given non-empty span (also
/// outside that span, e.g. at its right end).
BasisValues eval_basis_in_span(const KnotVector& knots, int span, double t, int deriv_order = 0);

/// Evaluates a spline (coefficients one row per basis function, any number of
/// columns) and its derivatives up to deriv_order; row d of the result is the
/// d-th derivative.
Eigen::MatrixXd eval_spline(const KnotVector& knots, const Eigen::MatrixXd& coeffs, double t,
                            int deriv_order = 0);

/// Knot averages (tau_{i+1} + ... + tau_{i+k-1}) / (k-1). Requires order >= 2.
std::vector<double> greville(const KnotVector& knots);

struct SplineRepresentation {
  KnotVector knots;
  Eigen::MatrixXd coeffs;
};

/// Boehm knot insertion; the represented function is unchanged.
SplineRepresentation insert_knot(const KnotVector& knots, const Eigen::MatrixXd& coeffs,
                                 double t);

/// Inserts the midpoint of every pair of successive breakpoints once.
SplineRepresentation refine_midpoints(const KnotVector& knots, const Eigen::MatrixXd& coeffs);

/// Raises the order by one while increasing every breakpoint multiplicity by
/// one, so continuity classes are preserved.
SplineRepresentation elevate_degree(const KnotVector& knots, const Eigen::MatrixXd& coeffs);

/// Coefficients of the spline in `knots` that interpolates `values` at the
/// Greville abscissae.
Eigen::MatrixXd interpolate_at_greville(const KnotVector& knots, const Eigen::MatrixXd& values);

}  // namespace sgbem
