#pragma once

// Approximation spaces on a parameter interval:
//   BSpline              the B-form space (IGA), possibly with the end
//                        functions identified on closed curves;
//   LagrangeCurvilinear  piecewise Lagrange polynomials on the exact curve;
//   LagrangePolygonal    fully discontinuous Lagrange polynomials on the
//                        chords of a polygonal boundary.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sgbem/geometry.hpp"
#include "sgbem/spline.hpp"

namespace sgbem {

inline constexpr int kMaxShapes = 24;

enum class SpaceKind { BSpline, LagrangeCurvilinear, LagrangePolygonal };

const char* to_string(SpaceKind kind);

struct SpaceElement {
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<int> dofs;  // one per local shape; -1 where constrained away
  int span = -1;          // B-spline span index
};

class DiscreteSpace {
 public:
  /// B-spline space on a knot vector. identify_ends merges the first and
  /// last basis function into one degree of freedom.
  static DiscreteSpace bspline(KnotVector knots, bool identify_ends);

  /// Lagrange space with uniform nodes on every element (the midpoint for
  /// degree 0). jumps: element endpoints where the function may be
  /// discontinuous; closure_continuous shares the end value on closed meshes.
  static DiscreteSpace lagrange(const BoundaryMesh& mesh, int degree, std::span<const double> jumps,
                                bool closure_continuous, SpaceKind kind = SpaceKind::LagrangeCurvilinear);

  SpaceKind kind() const { return kind_; }
  int degree() const { return degree_; }
  int dof_count() const { return dof_count_; }
  double front() const { return elements_.front().t0; }
  double back() const { return elements_.back().t1; }
  int element_count() const { return static_cast<int>(elements_.size()); }
  const SpaceElement& element(int e) const { return elements_[e]; }
  int shape_count() const { return degree_ + 1; }
  const std::optional<KnotVector>& knots() const { return knots_; }
  bool closed() const { return closed_; }

  /// Local shape values and parametric derivatives on element e (polynomial
  /// extension, so t may equal an endpoint).
  void eval(int e, double t, double* values, double* derivs) const;

  /// Element containing t (the left one at interior element endpoints unless
  /// from_right).
  int locate(double t, bool from_right = false) const;

  /// Value of the function with the given coefficients.
  double evaluate(const Eigen::VectorXd& coeffs, double t) const;
  double evaluate_in(int e, const Eigen::VectorXd& coeffs, double t) const;

  /// Element endpoints, including both ends.
  std::vector<double> element_nodes() const;

  /// True when every function of the space is continuous on the whole
  /// boundary piece (including the closure point of closed curves).
  bool globally_continuous() const { return continuous_; }

  /// Interpolation / quasi-interpolation coefficients of f (parameter -> value):
  /// Greville interpolation for B-splines, nodal interpolation for Lagrange.
  template <class F>
  Eigen::VectorXd interpolate(F&& f) const;

  /// Interpolation points as (parameter, dof) pairs; dof is -1 for points of
  /// constrained functions.
  std::vector<std::pair<double, int>> interpolation_points() const;

  /// Remove the degrees of freedom whose functions do not vanish at the
  /// given parameters.
  DiscreteSpace constrained(std::span<const double> params) const;

 private:
  SpaceKind kind_ = SpaceKind::BSpline;
  int degree_ = 0;
  int dof_count_ = 0;
  bool closed_ = false;
  bool continuous_ = false;
  std::optional<KnotVector> knots_;
  std::vector<SpaceElement> elements_;
};

struct BSplineSpaceOptions {
  int degree = 2;
  int elements = 1;                 // uniform elements of the parameter interval
  std::optional<int> regularity;    // C^r at the uniform breakpoints; default degree - 1
  std::vector<std::pair<double, int>> multiplicity_overrides;  // (breakpoint, multiplicity)
  bool include_geometry_knots = true;
  bool closure_continuous = true;   // identify end functions on closed curves
};

/// Space knot vector: uniform breakpoints; at those that are also breakpoints
/// of the curve, at least the curve's multiplicity raised by the degree
/// difference (so the geometry space is contained when the meshes nest); then
/// the overrides.
KnotVector bspline_space_knots(const Geometry& g, const BSplineSpaceOptions& options);

DiscreteSpace build_bspline_space(const Geometry& g, const BSplineSpaceOptions& options);

struct ContinuityMap {
  std::vector<double> jumps;        // interior mesh nodes with a discontinuity
  bool closure_continuous = true;
  bool all_discontinuous = false;
};

DiscreteSpace build_lagrange_space(const BoundaryMesh& mesh, int degree, const ContinuityMap& continuity);

DiscreteSpace build_polygonal_space(const PolygonalBoundary& poly, const BoundaryMesh& mesh, int degree,
                                    bool continuous = false);

DiscreteSpace constrain_endpoints(const DiscreteSpace& space, std::span<const double> params);

// ---------------------------------------------------------------------------

template <class F>
Eigen::VectorXd DiscreteSpace::interpolate(F&& f) const {
  const auto pts = interpolation_points();
  // Collocation on the dofs; shared points appear once per dof.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dof_count_, dof_count_);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dof_count_);
  std::vector<bool> used(dof_count_, false);
  for (const auto& [t, dof] : pts) {
    if (dof < 0 || used[dof]) continue;
    used[dof] = true;
    const int e = locate(t);
    double v[kMaxShapes], dv[kMaxShapes];
    eval(e, t, v, dv);
    for (int i = 0; i < shape_count(); ++i) {
      const int d = elements_[e].dofs[i];
      if (d >= 0) a(dof, d) += v[i];
    }
    rhs(dof) = f(t);
  }
  return a.partialPivLu().solve(rhs);
}

}  // namespace sgbem
