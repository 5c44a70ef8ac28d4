#include "sgbem/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgbem/assembly.hpp"
#include "sgbem/error.hpp"
#include "sgbem/rules.hpp"

namespace sgbem {

double BoundarySolution::unknown(int part, double t) const {
  const auto& p = disc->parts.at(part);
  const int n = p.space.dof_count();
  const Eigen::VectorXd c = coeffs.segment(disc->offset(part), n);
  return p.space.evaluate(c, t);
}

double BoundarySolution::trace(int part, double t) const {
  const auto& piece = problem->pieces[disc->parts.at(part).piece];
  if (piece.bc == BcType::Neumann) return unknown(part, t);
  if (!piece.datum.value) throw Unsupported("trace: datum given only as a density");
  return piece.datum.value(t);
}

double BoundarySolution::flux(int part, double t) const {
  const auto& piece = problem->pieces[disc->parts.at(part).piece];
  return piece.bc == BcType::Dirichlet ? unknown(part, t) : piece.datum.value(t);
}

double interior_value(const BoundarySolution& sol, const Vec2& x, const QuadratureOptions& options) {
  const TargetPoint target{x};
  double u = 0.0;
  for (int p = 0; p < static_cast<int>(sol.disc->parts.size()); ++p) {
    const auto& part = sol.disc->parts[p];
    const Geometry& g = *part.geometry;
    const auto nodes = panel_nodes(g, {&part.space});
    const bool arc = !g.closed();
    PanelFunctions q{1, [&](double t, double* v, double* d) {
                       v[0] = sol.flux(p, t);
                       d[0] = 0.0;
                     }};
    PanelFunctions tr{1, [&](double t, double* v, double* d) {
                        v[0] = sol.trace(p, t);
                        d[0] = 0.0;
                      }};
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const Panel panel{&g, nodes[i], nodes[i + 1]};
      for (int k = 0; k <= 8; ++k) {
        if ((g.point(panel.t0 + panel.length() * k / 8.0) - x).norm() < 1e-12)
          throw DomainError("interior_value: point lies on the boundary");
      }
      u += integrate_point(KernelKind::SingleLayer, target, panel, q, options)(0);
      if (!arc) u -= integrate_point(KernelKind::DoubleLayer, target, panel, tr, options)(0);
    }
  }
  return u;
}

double relative_L2_error(const Geometry& g, const std::vector<double>& nodes, const ParamFunction& approx,
                         const ParamFunction& exact, int order, L2Measure measure) {
  const auto& gl = cached_gauss_legendre(order);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double len = nodes[i + 1] - nodes[i];
    for (int k = 0; k < gl.size(); ++k) {
      const double t = nodes[i] + len * gl.nodes[k];
      const double w =
          gl.weights[k] * len * (measure == L2Measure::Arclength ? frame(g, t).jacobian : 1.0);
      const double e = exact(t);
      const double diff = approx(t) - e;
      num += w * diff * diff;
      den += w * e * e;
    }
  }
  if (!(den > 0.0)) throw DomainError("relative error: exact solution has zero norm");
  return std::sqrt(num / den);
}

double max_error(const std::vector<double>& nodes, const ParamFunction& approx, const ParamFunction& exact,
                 int samples_per_element) {
  if (samples_per_element < 1) throw ValidationError("max_error: need at least one sample per element");
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double len = nodes[i + 1] - nodes[i];
    for (int k = 0; k < samples_per_element; ++k) {
      const double t = nodes[i] + len * (k + 0.5) / samples_per_element;
      m = std::max(m, std::abs(approx(t) - exact(t)));
    }
  }
  return m;
}

std::vector<double> convergence_orders(const std::vector<double>& errors, const std::vector<double>& h) {
  if (errors.size() < 2) throw ValidationError("convergence orders: need at least two errors");
  if (!h.empty()) {
    if (h.size() != errors.size()) throw ValidationError("convergence orders: one mesh size per error");
    for (std::size_t i = 1; i < h.size(); ++i)
      if (std::abs(h[i - 1] / h[i] - 2.0) > 1e-9) throw ValidationError("convergence orders: mesh sizes do not halve");
  }
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) out.push_back(std::log2(errors[i - 1] / errors[i]));
  return out;
}

}  // namespace sgbem
