#pragma once

// Parametric boundary curves, the mesh induced by a uniform partition of the
// parameter interval, and the polygonal approximation through the mesh points.

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "sgbem/spline.hpp"

namespace sgbem {

using Vec2 = Eigen::Vector2d;

struct CurvePoint {
  Vec2 point;
  Vec2 derivative;  // dC/dt
};

struct Frame {
  Vec2 point;
  Vec2 derivative;
  double jacobian = 0.0;  // |C'(t)|
  Vec2 normal;            // unit, domain-outward
};

enum class Orientation { CounterClockwise, ClockWise };

/// A boundary piece x = C(t), t in [front(), back()].
///
/// The domain-outward normal is outward_sign * (C2', -C1') / |C'|, so a
/// counterclockwise outer boundary and a clockwise hole both use +1.
class Geometry {
 public:
  virtual ~Geometry() = default;
  virtual double front() const = 0;
  virtual double back() const = 0;
  virtual bool closed() const = 0;
  virtual int outward_sign() const = 0;
  virtual CurvePoint eval(double t) const = 0;
  virtual Vec2 second_derivative(double t) const = 0;
  /// Parameters, ends included, between which the curve is a single smooth
  /// (polynomial or analytic) piece.
  virtual std::vector<double> breakpoints() const = 0;

  Vec2 point(double t) const { return eval(t).point; }
};

/// Point, derivative, jacobian and unit normal. Throws SingularParametrization
/// when C'(t) vanishes.
Frame frame(const Geometry& g, double t);

/// Signed curvature (x'y'' - y'x'') / |C'|^3.
double signed_curvature(const Geometry& g, double t);

/// Closed or open B-form curve with polynomial (non-rational) B-splines.
class BoundaryCurve final : public Geometry {
 public:
  /// control_points: one row per B-spline. Closed curves must satisfy
  /// C(a) = C(b) to 1e-14.
  BoundaryCurve(KnotVector knots, Eigen::MatrixX2d control_points, bool closed,
                int outward_sign = +1);

  double front() const override { return knots_.front(); }
  double back() const override { return knots_.back(); }
  bool closed() const override { return closed_; }
  int outward_sign() const override { return outward_sign_; }
  CurvePoint eval(double t) const override;
  Vec2 second_derivative(double t) const override;
  std::vector<double> breakpoints() const override { return knots_.breakpoints(); }

  const KnotVector& knots() const { return knots_; }
  const Eigen::MatrixX2d& control_points() const { return control_points_; }
  int degree() const { return knots_.degree(); }

  BoundaryCurve with_outward_sign(int sign) const;

 private:
  KnotVector knots_;
  Eigen::MatrixX2d control_points_;
  bool closed_;
  int outward_sign_;
};

/// Same curve with a midpoint knot inserted in every breakpoint interval.
BoundaryCurve refine_uniform(const BoundaryCurve& curve);

/// Same curve represented with order + 1.
BoundaryCurve elevate_degree(const BoundaryCurve& curve);

/// Circle of given center and radius parametrized by angle on [0, 2 pi],
/// counterclockwise.
class CircleCurve final : public Geometry {
 public:
  CircleCurve(Vec2 center, double radius, int outward_sign = +1);
  double front() const override { return 0.0; }
  double back() const override;
  bool closed() const override { return true; }
  int outward_sign() const override { return outward_sign_; }
  CurvePoint eval(double t) const override;
  Vec2 second_derivative(double t) const override;
  std::vector<double> breakpoints() const override { return {front(), back()}; }

 private:
  Vec2 center_;
  double radius_;
  int outward_sign_;
};

/// Uniform partition of the parameter interval into n elements.
struct BoundaryMesh {
  double front = 0.0;
  double back = 0.0;
  bool closed = false;
  std::vector<double> nodes;  // n + 1 element endpoints

  int size() const { return static_cast<int>(nodes.size()) - 1; }
  double h() const { return (back - front) / size(); }
  double left(int e) const { return nodes[e]; }
  double right(int e) const { return nodes[e + 1]; }
};

BoundaryMesh induced_mesh(const Geometry& g, int n_elements);

/// Piecewise linear interpolant of a curve through the mesh points,
/// parametrized on the same interval (linear in t on every element).
class PolygonalBoundary final : public Geometry {
 public:
  PolygonalBoundary(const Geometry& curve, const BoundaryMesh& mesh);

  double front() const override { return mesh_.front; }
  double back() const override { return mesh_.back; }
  bool closed() const override { return closed_; }
  int outward_sign() const override { return outward_sign_; }
  CurvePoint eval(double t) const override;
  Vec2 second_derivative(double) const override { return Vec2::Zero(); }
  std::vector<double> breakpoints() const override { return mesh_.nodes; }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  double length() const;

 private:
  int segment(double t) const;

  BoundaryMesh mesh_;
  std::vector<Vec2> vertices_;
  bool closed_;
  int outward_sign_;
};

/// Arclength by composite Gauss quadrature over the smooth pieces.
double arclength(const Geometry& g, int subdivisions = 64);

/// Sign of the enclosed area of a closed curve.
Orientation orientation(const Geometry& g);

/// Winding number of a closed curve around a point (sampled polygon, exact for
/// points farther than the sampling deviation from the curve).
int winding_number(const Geometry& g, const Vec2& x, int samples = 4096);

}  // namespace sgbem
