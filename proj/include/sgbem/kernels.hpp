#pragma once

// Fundamental solution of the 2D Laplacian, U(x,y) = -ln|y-x| / (2 pi), and
// its normal derivatives. Kernels are purely geometric; parametric jacobians
// are applied by the quadrature layer.

#include "sgbem/geometry.hpp"

namespace sgbem {

enum class KernelKind {
  SingleLayer,         // V:  U(x,y)
  DoubleLayer,         // K:  dU/dn_y
  AdjointDoubleLayer,  // K': dU/dn_x
  Hypersingular,       // D:  d^2U/dn_x dn_y, Galerkin form only
};

const char* to_string(KernelKind kind);

double fundamental_solution(const Vec2& x, const Vec2& y);

/// -(1/2pi) (y-x).n_y / r^2
double double_layer_kernel(const Vec2& x, const Vec2& y, const Vec2& n_y);

/// +(1/2pi) (y-x).n_x / r^2
double adjoint_double_layer_kernel(const Vec2& x, const Vec2& y, const Vec2& n_x);

/// Limit of the double-layer kernel for y -> x along a C^2 curve,
/// -outward_sign * kappa / (4 pi). Throws DomainError at breakpoints where the
/// curve is not known to be C^2.
double coincident_limit_double_layer(const Geometry& g, double t);

}  // namespace sgbem
