#pragma once

// Boundary solutions, the representation formula and error norms.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sgbem/problem.hpp"
#include "sgbem/quadrature.hpp"

namespace sgbem {

/// Solution coefficients together with the problem and its discretization
/// (both must outlive the solution).
struct BoundarySolution {
  const BvpProblem* problem = nullptr;
  const Discretization* disc = nullptr;
  Eigen::VectorXd coeffs;

  /// Discrete unknown of a part: q_h on Dirichlet parts, u_h on Neumann parts
  /// (the flux jump on open arcs).
  double unknown(int part, double t) const;
  /// u on the boundary: u_h or the datum.
  double trace(int part, double t) const;
  /// q on the boundary: q_h or the datum.
  double flux(int part, double t) const;
};

/// u(x) = int U q - int dU/dn_y u over the integration geometry. Throws
/// DomainError when x lies on the boundary.
double interior_value(const BoundarySolution& sol, const Vec2& x, const QuadratureOptions& options = {});

using ParamFunction = std::function<double(double)>;

/// Measure of the L2 norm: ds on the curve or dt on the parameter interval.
enum class L2Measure { Arclength, Parameter };

/// ||a - e|| / ||e|| in L2 of the chosen measure, composite Gauss with
/// `order` nodes inside every interval of `nodes`.
double relative_L2_error(const Geometry& g, const std::vector<double>& nodes, const ParamFunction& approx,
                         const ParamFunction& exact, int order, L2Measure measure = L2Measure::Arclength);

/// Max |a - e| over samples_per_element interior points (i + 1/2)/m of every
/// interval of `nodes`.
double max_error(const std::vector<double>& nodes, const ParamFunction& approx, const ParamFunction& exact,
                 int samples_per_element = 32);

/// log2(e[i-1] / e[i]). When mesh sizes are given they must halve.
std::vector<double> convergence_orders(const std::vector<double>& errors, const std::vector<double>& h = {});

}  // namespace sgbem
