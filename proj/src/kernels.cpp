#include "sgbem/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sgbem/error.hpp"

namespace sgbem {

namespace {
constexpr double inv_2pi = 0.5 / std::numbers::pi;
}

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::SingleLayer: return "V";
    case KernelKind::DoubleLayer: return "K";
    case KernelKind::AdjointDoubleLayer: return "K'";
    case KernelKind::Hypersingular: return "D";
  }
  return "?";
}

double fundamental_solution(const Vec2& x, const Vec2& y) {
  const double r = (y - x).norm();
  if (r == 0.0) throw DomainError("fundamental solution evaluated at coincident points");
  return -inv_2pi * std::log(r);
}

double double_layer_kernel(const Vec2& x, const Vec2& y, const Vec2& n_y) {
  const Vec2 d = y - x;
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) throw DomainError("double-layer kernel evaluated at coincident points");
  return -inv_2pi * d.dot(n_y) / r2;
}

double adjoint_double_layer_kernel(const Vec2& x, const Vec2& y, const Vec2& n_x) {
  const Vec2 d = y - x;
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) throw DomainError("adjoint double-layer kernel evaluated at coincident points");
  return inv_2pi * d.dot(n_x) / r2;
}

double coincident_limit_double_layer(const Geometry& g, double t) {
  if (dynamic_cast<const CircleCurve*>(&g) == nullptr) {
    const auto bp = g.breakpoints();
    const bool at_end = t == g.front() || t == g.back();
    if (at_end && g.closed()) throw DomainError("coincident limit requested at the closure point");
    if (!at_end && std::find(bp.begin(), bp.end(), t) != bp.end()) {
      const auto* spline = dynamic_cast<const BoundaryCurve*>(&g);
      if (spline == nullptr || spline->degree() - spline->knots().multiplicity(t) < 2)
        throw DomainError("coincident limit requested at a breakpoint where the curve is not C^2");
    }
  }
  return -g.outward_sign() * signed_curvature(g, t) * 0.5 * inv_2pi;
}

}  // namespace sgbem
