#include "sgbem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sgbem/error.hpp"
#include "sgbem/rules.hpp"

namespace sgbem {

Frame frame(const Geometry& g, double t) {
  const auto cp = g.eval(t);
  const double jac = cp.derivative.norm();
  if (!(jac > 0.0)) {
    std::ostringstream msg;
    msg << "curve derivative vanishes at t = " << t;
    throw SingularParametrization(msg.str());
  }
  Frame f;
  f.point = cp.point;
  f.derivative = cp.derivative;
  f.jacobian = jac;
  f.normal = g.outward_sign() * Vec2(cp.derivative.y(), -cp.derivative.x()) / jac;
  return f;
}

double signed_curvature(const Geometry& g, double t) {
  const auto d1 = g.eval(t).derivative;
  const auto d2 = g.second_derivative(t);
  const double speed = d1.norm();
  if (!(speed > 0.0)) throw SingularParametrization("curvature: vanishing derivative");
  return (d1.x() * d2.y() - d1.y() * d2.x()) / (speed * speed * speed);
}

// ---------------------------------------------------------------------------

BoundaryCurve::BoundaryCurve(KnotVector knots, Eigen::MatrixX2d control_points, bool closed,
                             int outward_sign)
    : knots_(std::move(knots)),
      control_points_(std::move(control_points)),
      closed_(closed),
      outward_sign_(outward_sign) {
  if (control_points_.rows() != knots_.dimension()) {
    std::ostringstream msg;
    msg << "curve: " << control_points_.rows() << " control points for a space of dimension "
        << knots_.dimension();
    throw ValidationError(msg.str());
  }
  if (outward_sign_ != 1 && outward_sign_ != -1)
    throw ValidationError("curve: outward_sign must be +1 or -1");
  const double gap = (point(front()) - point(back())).norm();
  const double scale = std::max(1.0, control_points_.cwiseAbs().maxCoeff());
  if (closed_ && gap > 1e-14 * scale) throw ValidationError("curve: flagged closed but C(a) != C(b)");
  if (!closed_ && gap <= 1e-14 * scale)
    throw ValidationError("curve: C(a) = C(b) but the curve is not flagged closed");
}

CurvePoint BoundaryCurve::eval(double t) const {
  const Eigen::MatrixXd v = eval_spline(knots_, control_points_, t, 1);
  return {Vec2(v(0, 0), v(0, 1)), Vec2(v(1, 0), v(1, 1))};
}

Vec2 BoundaryCurve::second_derivative(double t) const {
  const Eigen::MatrixXd v = eval_spline(knots_, control_points_, t, 2);
  return {v(2, 0), v(2, 1)};
}

BoundaryCurve BoundaryCurve::with_outward_sign(int sign) const {
  return BoundaryCurve(knots_, control_points_, closed_, sign);
}

BoundaryCurve refine_uniform(const BoundaryCurve& curve) {
  auto rep = refine_midpoints(curve.knots(), curve.control_points());
  return BoundaryCurve(rep.knots, rep.coeffs, curve.closed(), curve.outward_sign());
}

BoundaryCurve elevate_degree(const BoundaryCurve& curve) {
  auto rep = elevate_degree(curve.knots(), curve.control_points());
  Eigen::MatrixX2d ctrl = rep.coeffs;
  if (curve.closed()) ctrl.row(ctrl.rows() - 1) = ctrl.row(0);  // remove round-off in the closure
  return BoundaryCurve(rep.knots, ctrl, curve.closed(), curve.outward_sign());
}

// ---------------------------------------------------------------------------

CircleCurve::CircleCurve(Vec2 center, double radius, int outward_sign)
    : center_(std::move(center)), radius_(radius), outward_sign_(outward_sign) {
  if (!(radius_ > 0.0)) throw ValidationError("circle: radius must be positive");
}

double CircleCurve::back() const { return 2.0 * std::numbers::pi; }

CurvePoint CircleCurve::eval(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  return {center_ + radius_ * Vec2(c, s), radius_ * Vec2(-s, c)};
}

Vec2 CircleCurve::second_derivative(double t) const {
  return -radius_ * Vec2(std::cos(t), std::sin(t));
}

// ---------------------------------------------------------------------------

BoundaryMesh induced_mesh(const Geometry& g, int n_elements) {
  if (n_elements < 1) throw ValidationError("mesh: need at least one element");
  BoundaryMesh mesh;
  mesh.front = g.front();
  mesh.back = g.back();
  mesh.closed = g.closed();
  mesh.nodes.resize(n_elements + 1);
  for (int i = 0; i <= n_elements; ++i)
    mesh.nodes[i] = mesh.front + (mesh.back - mesh.front) * i / n_elements;
  mesh.nodes.back() = mesh.back;
  return mesh;
}

PolygonalBoundary::PolygonalBoundary(const Geometry& curve, const BoundaryMesh& mesh)
    : mesh_(mesh), closed_(curve.closed()), outward_sign_(curve.outward_sign()) {
  vertices_.reserve(mesh_.nodes.size());
  for (double t : mesh_.nodes) vertices_.push_back(curve.point(t));
  if (closed_) vertices_.back() = vertices_.front();
}

int PolygonalBoundary::segment(double t) const {
  if (!(t >= mesh_.front && t <= mesh_.back)) throw DomainError("polygon: parameter outside domain");
  const auto it = std::upper_bound(mesh_.nodes.begin(), mesh_.nodes.end(), t);
  return std::clamp(static_cast<int>(it - mesh_.nodes.begin()) - 1, 0, mesh_.size() - 1);
}

CurvePoint PolygonalBoundary::eval(double t) const {
  const int e = segment(t);
  const double t0 = mesh_.nodes[e], t1 = mesh_.nodes[e + 1];
  const Vec2 d = (vertices_[e + 1] - vertices_[e]) / (t1 - t0);
  return {vertices_[e] + (t - t0) * d, d};
}

double PolygonalBoundary::length() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) s += (vertices_[i + 1] - vertices_[i]).norm();
  return s;
}

// ---------------------------------------------------------------------------

double arclength(const Geometry& g, int subdivisions) {
  const auto rule = gauss_legendre(16);
  const auto bp = g.breakpoints();
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    for (int q = 0; q < subdivisions; ++q) {
      const double a = bp[p] + (bp[p + 1] - bp[p]) * q / subdivisions;
      const double b = bp[p] + (bp[p + 1] - bp[p]) * (q + 1) / subdivisions;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * (b - a) * g.eval(a + (b - a) * rule.nodes[i]).derivative.norm();
    }
  }
  return s;
}

Orientation orientation(const Geometry& g) {
  if (!g.closed()) throw Unsupported("orientation is defined for closed curves only");
  const auto rule = gauss_legendre(16);
  const auto bp = g.breakpoints();
  double area2 = 0.0;  // integral of x dy - y dx
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    const double a = bp[p], b = bp[p + 1];
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const auto cp = g.eval(a + (b - a) * rule.nodes[i]);
      area2 += rule.weights[i] * (b - a) *
               (cp.point.x() * cp.derivative.y() - cp.point.y() * cp.derivative.x());
    }
  }
  return area2 > 0.0 ? Orientation::CounterClockwise : Orientation::ClockWise;
}

int winding_number(const Geometry& g, const Vec2& x, int samples) {
  if (!g.closed()) throw Unsupported("winding number is defined for closed curves only");
  double angle = 0.0;
  Vec2 prev = g.point(g.front()) - x;
  for (int i = 1; i <= samples; ++i) {
    const double t = g.front() + (g.back() - g.front()) * i / samples;
    const Vec2 cur = g.point(std::min(t, g.back())) - x;
    angle += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
    prev = cur;
  }
  return static_cast<int>(std::lround(angle / (2.0 * std::numbers::pi)));
}

}  // namespace sgbem
