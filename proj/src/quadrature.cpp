#include "sgbem/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sgbem/error.hpp"

namespace sgbem {

namespace {

constexpr double inv_2pi = 0.5 / std::numbers::pi;

struct Sample {
  Vec2 p;
  double jac = 0.0;
  Vec2 nu;  // outward_sign * (C2', -C1'), i.e. unit normal times jacobian
  std::array<double, kMaxPanelFunctions> f{};
  std::array<double, kMaxPanelFunctions> df{};
};

Sample sample_at(const Panel& panel, const PanelFunctions& fn, double t) {
  const auto cp = panel.geometry->eval(t);
  Sample s;
  s.p = cp.point;
  s.jac = cp.derivative.norm();
  if (!(s.jac > 0.0)) {
    std::ostringstream msg;
    msg << "vanishing curve derivative at t = " << t << " inside an integration panel";
    throw SingularParametrization(msg.str());
  }
  s.nu = panel.geometry->outward_sign() * Vec2(cp.derivative.y(), -cp.derivative.x());
  fn.eval(t, s.f.data(), s.df.data());
  return s;
}

bool is_log_kind(KernelKind kind) {
  return kind == KernelKind::SingleLayer || kind == KernelKind::Hypersingular;
}

// Kernel including the parametric measures (see header), at distinct points.
double kernel_value(KernelKind kind, const Sample& x, const Sample& y) {
  const Vec2 d = y.p - x.p;
  const double r2 = d.squaredNorm();
  switch (kind) {
    case KernelKind::SingleLayer: return -inv_2pi * 0.5 * std::log(r2) * x.jac * y.jac;
    case KernelKind::Hypersingular: return inv_2pi * 0.5 * std::log(r2);
    case KernelKind::DoubleLayer: return -inv_2pi * d.dot(y.nu) / r2 * x.jac;
    case KernelKind::AdjointDoubleLayer: return inv_2pi * d.dot(x.nu) / r2 * y.jac;
  }
  return 0.0;
}

// alpha such that the log kinds read alpha * ln r.
double log_coefficient(KernelKind kind, const Sample& x, const Sample& y) {
  return kind == KernelKind::SingleLayer ? -inv_2pi * x.jac * y.jac : inv_2pi;
}

void accumulate(KernelKind kind, Eigen::MatrixXd& m, double w, const Sample& x, const Sample& y) {
  const bool deriv = kind == KernelKind::Hypersingular;
  const double* a = deriv ? x.df.data() : x.f.data();
  const double* b = deriv ? y.df.data() : y.f.data();
  const auto nx = m.rows(), ny = m.cols();
  for (Eigen::Index j = 0; j < ny; ++j) {
    const double wb = w * b[j];
    for (Eigen::Index i = 0; i < nx; ++i) m(i, j) += wb * a[i];
  }
}

// Polyline length and sample points of a panel.
struct PanelOutline {
  std::array<Vec2, 9> points;
  double length = 0.0;
};

PanelOutline outline(const Panel& p) {
  PanelOutline o;
  for (int i = 0; i < 9; ++i) o.points[i] = p.geometry->point(p.t0 + p.length() * i / 8.0);
  for (int i = 0; i < 8; ++i) o.length += (o.points[i + 1] - o.points[i]).norm();
  return o;
}

double min_distance(const PanelOutline& a, const PanelOutline& b) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : a.points)
    for (const auto& q : b.points) d = std::min(d, (p - q).norm());
  return d;
}

std::pair<Panel, Panel> halves(const Panel& p) {
  const double mid = 0.5 * (p.t0 + p.t1);
  return {Panel{p.geometry, p.t0, mid}, Panel{p.geometry, mid, p.t1}};
}

Eigen::MatrixXd pair_impl(KernelKind kind, const Panel& x, const PanelFunctions& fx, const Panel& y,
                          const PanelFunctions& fy, const QuadratureOptions& opt, int depth);

Eigen::MatrixXd tensor_gauss(KernelKind kind, const Panel& x, const PanelFunctions& fx,
                             const Panel& y, const PanelFunctions& fy, int n) {
  const auto& gl = cached_gauss_legendre(n);
  std::vector<Sample> xs, ys;
  xs.reserve(n);
  ys.reserve(n);
  for (int i = 0; i < n; ++i) xs.push_back(sample_at(x, fx, x.t0 + x.length() * gl.nodes[i]));
  for (int j = 0; j < n; ++j) ys.push_back(sample_at(y, fy, y.t0 + y.length() * gl.nodes[j]));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(fx.count, fy.count);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      accumulate(kind, m, gl.weights[i] * gl.weights[j] * kernel_value(kind, xs[i], ys[j]), xs[i], ys[j]);
  return m * (x.length() * y.length());
}

Eigen::MatrixXd disjoint(KernelKind kind, const Panel& x, const PanelFunctions& fx, const Panel& y,
                         const PanelFunctions& fy, const QuadratureOptions& opt, int depth) {
  if (depth < opt.max_depth) {
    const auto ox = outline(x), oy = outline(y);
    const double size = std::max(ox.length, oy.length);
    if (min_distance(ox, oy) < opt.near_factor * size) {
      const bool split_x = ox.length >= oy.length * (1.0 - 1e-12);
      const bool split_y = oy.length >= ox.length * (1.0 - 1e-12);
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(fx.count, fy.count);
      if (split_x && split_y) {
        const auto [x1, x2] = halves(x);
        const auto [y1, y2] = halves(y);
        for (const auto& xp : {x1, x2})
          for (const auto& yp : {y1, y2}) m += pair_impl(kind, xp, fx, yp, fy, opt, depth + 1);
      } else if (split_x) {
        const auto [x1, x2] = halves(x);
        m += pair_impl(kind, x1, fx, y, fy, opt, depth + 1);
        m += pair_impl(kind, x2, fx, y, fy, opt, depth + 1);
      } else {
        const auto [y1, y2] = halves(y);
        m += pair_impl(kind, x, fx, y1, fy, opt, depth + 1);
        m += pair_impl(kind, x, fx, y2, fy, opt, depth + 1);
      }
      return m;
    }
  }
  return tensor_gauss(kind, x, fx, y, fy, opt.disjoint());
}

Eigen::MatrixXd coincident(KernelKind kind, const Panel& x, const PanelFunctions& fx,
                           const Panel& y, const PanelFunctions& fy, int n) {
  const auto& gl = cached_gauss_legendre(n);
  const auto& lg = cached_gauss_log(n);
  const double len = x.length();
  const bool log_kind = is_log_kind(kind);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(fx.count, fy.count);

  auto sweep = [&](double d, double wd, bool singular) {
    for (int j = 0; j < n; ++j) {
      const double tau = (1.0 - d) * gl.nodes[j];
      const double w = wd * gl.weights[j] * (1.0 - d);
      for (int side = 0; side < 2; ++side) {
        const double sx = side == 0 ? tau + d : tau;
        const double sy = side == 0 ? tau : tau + d;
        const Sample a = sample_at(x, fx, x.t0 + len * sx);
        const Sample b = sample_at(y, fy, y.t0 + len * sy);
        double val;
        if (singular) {
          // int_0^1 ln(d) G(d) dd = - sum w_log G
          val = -log_coefficient(kind, a, b);
        } else if (log_kind) {
          val = log_coefficient(kind, a, b) * std::log((b.p - a.p).norm() / d);
        } else {
          val = kernel_value(kind, a, b);
        }
        accumulate(kind, m, w * val, a, b);
      }
    }
  };
  for (int k = 0; k < n; ++k) sweep(gl.nodes[k], gl.weights[k], false);
  if (log_kind)
    for (int k = 0; k < n; ++k) sweep(lg.nodes[k], lg.weights[k], true);
  return m * (len * len);
}

Eigen::MatrixXd adjacent(KernelKind kind, const Panel& x, const PanelFunctions& fx, const Panel& y,
                         const PanelFunctions& fy, const PairConfiguration& cfg, int n) {
  const auto& gl = cached_gauss_legendre(n);
  const auto& lg = cached_gauss_log(n);
  const bool log_kind = is_log_kind(kind);
  auto tx = [&](double u) { return cfg.x_touches_at_end ? x.t1 - x.length() * u : x.t0 + x.length() * u; };
  auto ty = [&](double v) { return cfg.y_touches_at_end ? y.t1 - y.length() * v : y.t0 + y.length() * v; };
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(fx.count, fy.count);

  auto sweep = [&](double rho, double wr, bool singular) {
    for (int j = 0; j < n; ++j) {
      const double w = wr * gl.weights[j] * rho;
      for (int tri = 0; tri < 2; ++tri) {
        const double u = tri == 0 ? rho : rho * gl.nodes[j];
        const double v = tri == 0 ? rho * gl.nodes[j] : rho;
        const Sample a = sample_at(x, fx, tx(u));
        const Sample b = sample_at(y, fy, ty(v));
        double val;
        if (singular) {
          val = -log_coefficient(kind, a, b);
        } else if (log_kind) {
          val = log_coefficient(kind, a, b) * std::log((b.p - a.p).norm() / rho);
        } else {
          val = kernel_value(kind, a, b);
        }
        accumulate(kind, m, w * val, a, b);
      }
    }
  };
  for (int k = 0; k < n; ++k) sweep(gl.nodes[k], gl.weights[k], false);
  if (log_kind)
    for (int k = 0; k < n; ++k) sweep(lg.nodes[k], lg.weights[k], true);
  return m * (x.length() * y.length());
}

Eigen::MatrixXd pair_impl(KernelKind kind, const Panel& x, const PanelFunctions& fx, const Panel& y,
                          const PanelFunctions& fy, const QuadratureOptions& opt, int depth) {
  const auto cfg = classify_panels(x, y);
  switch (cfg.kind) {
    case PairClass::Coincident: return coincident(kind, x, fx, y, fy, opt.coincident());
    case PairClass::Disjoint: return disjoint(kind, x, fx, y, fy, opt, depth);
    case PairClass::AdjacentSharedEndpoint: break;
  }
  // Keep the Duffy transform well balanced: cut the longer panel so that the
  // piece touching the shared point has about the size of the shorter one.
  const double lx = outline(x).length, ly = outline(y).length;
  if (depth < opt.max_depth && std::max(lx, ly) > 2.0 * std::min(lx, ly)) {
    const bool cut_x = lx > ly;
    const Panel& big = cut_x ? x : y;
    const bool at_end = cut_x ? cfg.x_touches_at_end : cfg.y_touches_at_end;
    const double piece = big.length() * std::min(lx, ly) / std::max(lx, ly);
    const double cut = at_end ? big.t1 - piece : big.t0 + piece;
    const Panel lo{big.geometry, big.t0, cut}, hi{big.geometry, cut, big.t1};
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(fx.count, fy.count);
    for (const auto& part : {lo, hi}) {
      m += cut_x ? pair_impl(kind, part, fx, y, fy, opt, depth + 1)
                 : pair_impl(kind, x, fx, part, fy, opt, depth + 1);
    }
    return m;
  }
  return adjacent(kind, x, fx, y, fy, cfg, opt.adjacent());
}

}  // namespace

PairConfiguration classify_pair(const BoundaryMesh& mesh, int i, int j) {
  const int n = mesh.size();
  if (i < 0 || j < 0 || i >= n || j >= n) throw DomainError("classify_pair: element index out of range");
  PairConfiguration cfg;
  if (i == j) {
    cfg.kind = PairClass::Coincident;
  } else if (j == i + 1) {
    cfg = {PairClass::AdjacentSharedEndpoint, true, false};
  } else if (i == j + 1) {
    cfg = {PairClass::AdjacentSharedEndpoint, false, true};
  } else if (mesh.closed && i == n - 1 && j == 0) {
    cfg = {PairClass::AdjacentSharedEndpoint, true, false};
  } else if (mesh.closed && i == 0 && j == n - 1) {
    cfg = {PairClass::AdjacentSharedEndpoint, false, true};
  }
  return cfg;
}

PairConfiguration classify_panels(const Panel& x, const Panel& y) {
  PairConfiguration cfg;
  if (x.geometry != y.geometry) return cfg;
  if (x.t0 == y.t0 && x.t1 == y.t1) {
    cfg.kind = PairClass::Coincident;
    return cfg;
  }
  const Geometry& g = *x.geometry;
  if (x.t1 == y.t0) return {PairClass::AdjacentSharedEndpoint, true, false};
  if (x.t0 == y.t1) return {PairClass::AdjacentSharedEndpoint, false, true};
  if (g.closed()) {
    if (x.t1 == g.back() && y.t0 == g.front()) return {PairClass::AdjacentSharedEndpoint, true, false};
    if (x.t0 == g.front() && y.t1 == g.back()) return {PairClass::AdjacentSharedEndpoint, false, true};
  }
  return cfg;
}

Eigen::MatrixXd integrate_pair(KernelKind kind, const Panel& x, const PanelFunctions& fx,
                               const Panel& y, const PanelFunctions& fy,
                               const QuadratureOptions& options) {
  if (fx.count > kMaxPanelFunctions || fy.count > kMaxPanelFunctions)
    throw Unsupported("integrate_pair: too many functions on one panel");
  if (!(x.length() > 0.0) || !(y.length() > 0.0)) throw DomainError("integrate_pair: empty panel");
  return pair_impl(kind, x, fx, y, fy, options, 0);
}

// ---------------------------------------------------------------------------

namespace {

Sample target_sample(const TargetPoint& x) {
  Sample s;
  s.p = x.point;
  s.jac = 1.0;
  s.nu = x.normal;
  return s;
}

double point_kernel(KernelKind kind, const Sample& x, const Sample& y) {
  const Vec2 d = y.p - x.p;
  const double r2 = d.squaredNorm();
  switch (kind) {
    case KernelKind::SingleLayer: return -inv_2pi * 0.5 * std::log(r2) * y.jac;
    case KernelKind::DoubleLayer: return -inv_2pi * d.dot(y.nu) / r2;
    case KernelKind::AdjointDoubleLayer: return inv_2pi * d.dot(x.nu) / r2 * y.jac;
    case KernelKind::Hypersingular: break;
  }
  throw Unsupported("hypersingular kernel has no pointwise evaluation");
}

void accumulate_vec(Eigen::VectorXd& v, double w, const Sample& y) {
  for (Eigen::Index j = 0; j < v.size(); ++j) v(j) += w * y.f[j];
}

Eigen::VectorXd point_regular(KernelKind kind, const Sample& x, const Panel& y,
                              const PanelFunctions& fy, const QuadratureOptions& opt, int depth) {
  if (depth < opt.max_depth) {
    const auto oy = outline(y);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : oy.points) d = std::min(d, (q - x.p).norm());
    if (d < opt.near_factor * oy.length) {
      const auto [y1, y2] = halves(y);
      return point_regular(kind, x, y1, fy, opt, depth + 1) +
             point_regular(kind, x, y2, fy, opt, depth + 1);
    }
  }
  const auto& gl = cached_gauss_legendre(opt.disjoint());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(fy.count);
  for (int j = 0; j < gl.size(); ++j) {
    const Sample b = sample_at(y, fy, y.t0 + y.length() * gl.nodes[j]);
    accumulate_vec(v, gl.weights[j] * point_kernel(kind, x, b), b);
  }
  return v * y.length();
}

// Panel piece with the target at one end: t(u) = ts + dir * len * u.
Eigen::VectorXd point_singular(KernelKind kind, const Sample& x, const Panel& y,
                               const PanelFunctions& fy, double ts, double dir, double len,
                               int n) {
  const auto& gl = cached_gauss_legendre(n);
  const auto& lg = cached_gauss_log(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(fy.count);
  for (int k = 0; k < n; ++k) {
    const double u = gl.nodes[k];
    const Sample b = sample_at(y, fy, ts + dir * len * u);
    double val;
    if (kind == KernelKind::SingleLayer) {
      val = -inv_2pi * b.jac * std::log((b.p - x.p).norm() / u);
    } else {
      val = point_kernel(kind, x, b);
    }
    accumulate_vec(v, gl.weights[k] * val, b);
  }
  if (kind == KernelKind::SingleLayer) {
    for (int k = 0; k < n; ++k) {
      const Sample b = sample_at(y, fy, ts + dir * len * lg.nodes[k]);
      accumulate_vec(v, lg.weights[k] * inv_2pi * b.jac, b);  // -(1/2pi) J ln u, ln u = -ln(1/u)
    }
  }
  return v * len;
}

}  // namespace

Eigen::VectorXd integrate_point(KernelKind kind, const TargetPoint& x, const Panel& y,
                                const PanelFunctions& fy, const QuadratureOptions& options) {
  if (kind == KernelKind::Hypersingular) throw Unsupported("hypersingular kernel has no pointwise evaluation");
  if (fy.count > kMaxPanelFunctions) throw Unsupported("integrate_point: too many functions on one panel");
  const Sample xs = target_sample(x);

  std::optional<double> ts;
  if (x.geometry == y.geometry && x.geometry != nullptr) {
    const Geometry& g = *y.geometry;
    const double t = x.parameter;
    if (t >= y.t0 && t <= y.t1) {
      ts = t;
    } else if (g.closed() && t == g.front() && y.t1 == g.back()) {
      ts = g.back();
    } else if (g.closed() && t == g.back() && y.t0 == g.front()) {
      ts = g.front();
    }
  }
  if (!ts) return point_regular(kind, xs, y, fy, options, 0);

  const int n = options.coincident();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(fy.count);
  if (*ts > y.t0) v += point_singular(kind, xs, y, fy, *ts, -1.0, *ts - y.t0, n);
  if (*ts < y.t1) v += point_singular(kind, xs, y, fy, *ts, +1.0, y.t1 - *ts, n);
  return v;
}

}  // namespace sgbem
