#pragma once

// Galerkin and collocation systems.
//
// With q unknown on the Dirichlet part G1 and u unknown on the Neumann part
// G2, the symmetric system reads
//
//   [ V11   -K12 ] [q]   [ -V12 q* + (1/2 I + K11) u*  ]
//   [ -K'21  D22 ] [u] = [ (-1/2 I + K'22) q* - D21 u* ]
//
// where D is the second normal derivative of U (so D = -W with W the usual
// positive hypersingular operator). On open arcs only V[q] = u* remains.

#include <vector>

#include <Eigen/Dense>

#include "sgbem/kernels.hpp"
#include "sgbem/problem.hpp"
#include "sgbem/quadrature.hpp"
#include "sgbem/spaces.hpp"

namespace sgbem {

struct AssemblyOptions {
  QuadratureOptions quadrature;
  int workers = 0;               // 0: hardware concurrency
  bool exploit_symmetry = true;  // compute V/D diagonal blocks from one triangle
};

/// Integration panels: the union of the geometry breakpoints and the element
/// endpoints of the given spaces, split until a closed curve has >= 4 panels.
std::vector<double> panel_nodes(const Geometry& g, const std::vector<const DiscreteSpace*>& spaces);

/// Block (a, b) = <op phi_b, psi_a>, psi from the test space on gx, phi from
/// the trial space on gy. The hypersingular kind needs continuous spaces on
/// closed curves.
Eigen::MatrixXd assemble_block(KernelKind op, const Geometry& gx, const DiscreteSpace& test,
                               const Geometry& gy, const DiscreteSpace& trial,
                               const AssemblyOptions& options = {});

/// Vector a = <f, psi_a> with the arclength measure of g.
Eigen::VectorXd load_vector(const Geometry& g, const DiscreteSpace& test, const std::function<double(double)>& f,
                            int order = 0);

struct GalerkinSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<int> offsets;  // first dof of every part
};

GalerkinSystem assemble_system(const BvpProblem& problem, const Discretization& disc,
                               const AssemblyOptions& options = {});

struct CollocationSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<double> points;  // collocation parameters, one per dof
};

/// Single-layer collocation V[q](C(p_i)) = u*(C(p_i)) at the Greville points
/// of a single-arc or single-curve Dirichlet problem.
CollocationSystem assemble_collocation(const BvpProblem& problem, const Discretization& disc,
                                       const AssemblyOptions& options = {});

/// Bunch-Kaufman factorization (LAPACK dsysv) with a relative residual check
/// of 1e-10.
Eigen::VectorXd solve_symmetric(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs);

/// Partial-pivoting LU with the same residual check.
Eigen::VectorXd solve_general(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs);

/// |lambda|_max / |lambda|_min of a symmetric matrix (infinity when singular).
double spectral_condition(const Eigen::MatrixXd& matrix);

/// sigma_max / sigma_min.
double singular_value_condition(const Eigen::MatrixXd& matrix);

}  // namespace sgbem
