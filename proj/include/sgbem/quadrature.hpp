#pragma once

// Double integration of kernel x shape-function products over pairs of
// integration panels, with singularity-aware transforms:
//
//   Disjoint     tensor Gauss-Legendre, panels subdivided while they are
//                close relative to their size;
//   Coincident   split at the diagonal, relative coordinates (d, tau), the
//                logarithmic part integrated with the ln(1/x) rule in d;
//   Adjacent     Duffy transform centred at the shared endpoint, the
//                logarithmic part integrated with the ln(1/x) rule in the
//                radial variable.
//
// The hypersingular kind is integrated in the integration-by-parts form
//   <D v, w> = - int int U(x,y) dv/dt(t) dw/ds(s) dt ds
// which holds for functions continuous on closed curves.

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "sgbem/geometry.hpp"
#include "sgbem/kernels.hpp"
#include "sgbem/rules.hpp"

namespace sgbem {

/// Upper bound on the number of functions active on one panel.
inline constexpr int kMaxPanelFunctions = 24;

/// Parameter sub-interval of one geometry on which the curve and every shape
/// function are smooth.
struct Panel {
  const Geometry* geometry = nullptr;
  double t0 = 0.0;
  double t1 = 0.0;

  double length() const { return t1 - t0; }
};

/// Functions living on a panel: eval(t, values, derivatives) fills `count`
/// values and parametric derivatives d/dt.
struct PanelFunctions {
  int count = 0;
  std::function<void(double, double*, double*)> eval;
};

enum class PairClass { Coincident, AdjacentSharedEndpoint, Disjoint };

struct PairConfiguration {
  PairClass kind = PairClass::Disjoint;
  bool x_touches_at_end = false;  // for adjacent pairs: shared point is t1 of x (else t0)
  bool y_touches_at_end = false;
};

/// Element-level classification on a uniform mesh (closure wraparound for
/// closed meshes).
PairConfiguration classify_pair(const BoundaryMesh& mesh, int i, int j);

/// Panel-level classification; panels on different geometries are disjoint.
PairConfiguration classify_panels(const Panel& x, const Panel& y);

struct QuadratureOptions {
  int order = 16;             // nodes per direction, all classes
  int coincident_order = 0;   // 0: use `order`
  int adjacent_order = 0;
  int disjoint_order = 0;
  double near_factor = 1.0;   // subdivide disjoint pairs closer than factor * size
  int max_depth = 10;

  int coincident() const { return coincident_order > 0 ? coincident_order : order; }
  int adjacent() const { return adjacent_order > 0 ? adjacent_order : order; }
  int disjoint() const { return disjoint_order > 0 ? disjoint_order : order; }
};

/// Local Galerkin matrix M(a,b) = int_x int_y fx_a(x) k(x,y) fy_b(y), both
/// arclength measures included (none for the hypersingular form, whose
/// tangential derivatives cancel them).
Eigen::MatrixXd integrate_pair(KernelKind kind, const Panel& x, const PanelFunctions& fx,
                               const Panel& y, const PanelFunctions& fy,
                               const QuadratureOptions& options = {});

/// Evaluation point for single integrals.
struct TargetPoint {
  Vec2 point;
  Vec2 normal = Vec2::Zero();           // needed by the adjoint double layer
  const Geometry* geometry = nullptr;   // set when the point lies on a boundary
  double parameter = 0.0;               // its parameter on that geometry
};

/// Vector v(b) = int_y k(x,y) fy_b(y) dgamma_y for a single point x. When the
/// point lies on the panel's geometry the panel is split there and the
/// logarithmic part is integrated with the ln(1/x) rule. Hypersingular kind
/// is not supported pointwise.
Eigen::VectorXd integrate_point(KernelKind kind, const TargetPoint& x, const Panel& y,
                                const PanelFunctions& fy, const QuadratureOptions& options = {});

}  // namespace sgbem
