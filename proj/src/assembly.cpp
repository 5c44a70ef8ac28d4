#include "sgbem/assembly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <lapacke.h>

#include "sgbem/error.hpp"
#include "sgbem/rules.hpp"

namespace sgbem {

namespace {

template <class F>
void parallel_for(int count, int workers, F&& body) {
  int w = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  w = std::min(w, count);
  if (w <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  auto run = [&] {
    try {
      for (int i; (i = next++) < count;) body(i);
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> threads;
  for (int t = 1; t < w; ++t) threads.emplace_back(run);
  run();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct PanelSet {
  const Geometry* geometry = nullptr;
  std::vector<Panel> panels;
  std::vector<int> element;  // element of the space on every panel
};

PanelSet make_panels(const Geometry& g, const DiscreteSpace* space, const std::vector<double>& nodes) {
  PanelSet set;
  set.geometry = &g;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    set.panels.push_back(Panel{&g, nodes[i], nodes[i + 1]});
    set.element.push_back(space ? space->locate(0.5 * (nodes[i] + nodes[i + 1])) : -1);
  }
  return set;
}

PanelSet make_panels(const Geometry& g, const DiscreteSpace& space) {
  return make_panels(g, &space, panel_nodes(g, {&space}));
}

PanelFunctions shapes(const DiscreteSpace& s, int e) {
  return {s.shape_count(), [&s, e](double t, double* v, double* d) { s.eval(e, t, v, d); }};
}

PanelFunctions datum_functions(const std::function<double(double)>& value,
                               const std::function<double(double)>& derivative) {
  return {1, [value, derivative](double t, double* v, double* d) {
            v[0] = value(t);
            d[0] = derivative ? derivative(t) : 0.0;
          }};
}

void check_hypersingular(const Geometry& g, const DiscreteSpace& s) {
  if (!g.closed() || !s.globally_continuous())
    throw Unsupported("hypersingular form needs continuous functions on a closed curve");
}

void check_domain(const Geometry& g, const DiscreteSpace& s) {
  if (s.front() != g.front() || s.back() != g.back())
    throw ValidationError("space and geometry have different parameter intervals");
}

// Block on given panel sets; symmetric: same set on both sides and only the
// upper triangle of panel pairs is integrated.
Eigen::MatrixXd block(KernelKind op, const PanelSet& x, const DiscreteSpace& sx, const PanelSet& y,
                      const DiscreteSpace& sy, bool symmetric, const AssemblyOptions& opt) {
  std::vector<std::pair<int, int>> pairs;
  const int nx = static_cast<int>(x.panels.size());
  const int ny = static_cast<int>(y.panels.size());
  for (int i = 0; i < nx; ++i)
    for (int j = symmetric ? i : 0; j < ny; ++j) pairs.emplace_back(i, j);
  std::vector<Eigen::MatrixXd> local(pairs.size());
  parallel_for(static_cast<int>(pairs.size()), opt.workers, [&](int p) {
    const auto [i, j] = pairs[p];
    local[p] = integrate_pair(op, x.panels[i], shapes(sx, x.element[i]), y.panels[j], shapes(sy, y.element[j]),
                              opt.quadrature);
  });
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sx.dof_count(), sy.dof_count());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const auto& dx = sx.element(x.element[i]).dofs;
    const auto& dy = sy.element(y.element[j]).dofs;
    for (int a = 0; a < sx.shape_count(); ++a) {
      if (dx[a] < 0) continue;
      for (int b = 0; b < sy.shape_count(); ++b) {
        if (dy[b] < 0) continue;
        m(dx[a], dy[b]) += local[p](a, b);
        if (symmetric && i != j) m(dy[b], dx[a]) += local[p](a, b);
      }
    }
  }
  if (symmetric) m = 0.5 * (m + m.transpose()).eval();
  return m;
}

// Vector v(a) = <op f, psi_a> for a datum f on the panels y.
Eigen::VectorXd data_block(KernelKind op, const PanelSet& x, const DiscreteSpace& sx, const PanelSet& y,
                           const PanelFunctions& f, const AssemblyOptions& opt) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < static_cast<int>(x.panels.size()); ++i)
    for (int j = 0; j < static_cast<int>(y.panels.size()); ++j) pairs.emplace_back(i, j);
  std::vector<Eigen::MatrixXd> local(pairs.size());
  parallel_for(static_cast<int>(pairs.size()), opt.workers, [&](int p) {
    const auto [i, j] = pairs[p];
    local[p] = integrate_pair(op, x.panels[i], shapes(sx, x.element[i]), y.panels[j], f, opt.quadrature);
  });
  Eigen::VectorXd v = Eigen::VectorXd::Zero(sx.dof_count());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& dx = sx.element(x.element[pairs[p].first]).dofs;
    for (int a = 0; a < sx.shape_count(); ++a)
      if (dx[a] >= 0) v(dx[a]) += local[p](a, 0);
  }
  return v;
}

Eigen::VectorXd load_on_panels(const PanelSet& x, const DiscreteSpace& sx, const std::function<double(double)>& f,
                               int order) {
  const auto& gl = cached_gauss_legendre(std::max(order, 2 * sx.degree() + 4));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(sx.dof_count());
  double vals[kMaxShapes], ders[kMaxShapes];
  for (std::size_t i = 0; i < x.panels.size(); ++i) {
    const auto& p = x.panels[i];
    const auto& dofs = sx.element(x.element[i]).dofs;
    for (int k = 0; k < gl.size(); ++k) {
      const double t = p.t0 + p.length() * gl.nodes[k];
      const double w = gl.weights[k] * p.length() * frame(*p.geometry, t).jacobian * f(t);
      sx.eval(x.element[i], t, vals, ders);
      for (int a = 0; a < sx.shape_count(); ++a)
        if (dofs[a] >= 0) v(dofs[a]) += w * vals[a];
    }
  }
  return v;
}

// Single-layer potential of a density on the panels, evaluated at C(t) of
// the same geometry.
double potential_at(const Geometry& g, double t, const PanelSet& y, const PanelFunctions& density,
                    const QuadratureOptions& q) {
  const auto fr = frame(g, t);
  TargetPoint target{fr.point, fr.normal, &g, t};
  double s = 0.0;
  for (const auto& panel : y.panels) s += integrate_point(KernelKind::SingleLayer, target, panel, density, q)(0);
  return s;
}

Eigen::VectorXd residual_checked(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, Eigen::VectorXd x) {
  const double nb = b.norm();
  if (nb == 0.0) return x;
  const double res = (a * x - b).norm() / nb;
  if (!(res <= 1e-10)) {
    std::ostringstream msg;
    msg << "linear solve: relative residual " << res << " exceeds 1e-10";
    throw SolveError(msg.str());
  }
  return x;
}

}  // namespace

std::vector<double> panel_nodes(const Geometry& g, const std::vector<const DiscreteSpace*>& spaces) {
  std::vector<double> nodes = g.breakpoints();
  for (const auto* s : spaces) {
    check_domain(g, *s);
    const auto en = s->element_nodes();
    nodes.insert(nodes.end(), en.begin(), en.end());
  }
  std::sort(nodes.begin(), nodes.end());
  const double tol = 1e-13 * std::max(1.0, std::abs(g.back() - g.front()));
  std::vector<double> out;
  for (double t : nodes) {
    if (t < g.front() || t > g.back()) continue;
    if (out.empty() || t - out.back() > tol) out.push_back(t);
  }
  out.front() = g.front();
  if (out.size() < 2) throw ValidationError("panel_nodes: degenerate parameter interval");
  if (g.back() - out.back() <= tol) out.back() = g.back();
  else out.push_back(g.back());
  while (g.closed() && out.size() < 5) {
    std::vector<double> finer;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      finer.push_back(out[i]);
      finer.push_back(0.5 * (out[i] + out[i + 1]));
    }
    finer.push_back(out.back());
    out = std::move(finer);
  }
  return out;
}

Eigen::MatrixXd assemble_block(KernelKind op, const Geometry& gx, const DiscreteSpace& test,
                               const Geometry& gy, const DiscreteSpace& trial, const AssemblyOptions& options) {
  check_domain(gx, test);
  check_domain(gy, trial);
  if (op == KernelKind::Hypersingular) {
    check_hypersingular(gx, test);
    check_hypersingular(gy, trial);
  }
  if (&gx == &gy) {
    const auto nodes = panel_nodes(gx, {&test, &trial});
    const auto x = make_panels(gx, &test, nodes);
    const auto y = make_panels(gy, &trial, nodes);
    const bool sym = options.exploit_symmetry && &test == &trial &&
                     (op == KernelKind::SingleLayer || op == KernelKind::Hypersingular);
    return block(op, x, test, y, trial, sym, options);
  }
  return block(op, make_panels(gx, test), test, make_panels(gy, trial), trial, false, options);
}

Eigen::VectorXd load_vector(const Geometry& g, const DiscreteSpace& test, const std::function<double(double)>& f,
                            int order) {
  return load_on_panels(make_panels(g, test), test, f, order > 0 ? order : 16);
}

GalerkinSystem assemble_system(const BvpProblem& problem, const Discretization& disc,
                               const AssemblyOptions& opt) {
  problem.validate();
  const int np = static_cast<int>(disc.parts.size());
  if (np != static_cast<int>(problem.pieces.size()))
    throw ValidationError("discretization: one part per boundary piece expected");
  std::vector<bool> seen(problem.pieces.size(), false);
  for (const auto& part : disc.parts) {
    if (part.piece < 0 || part.piece >= np || seen[part.piece])
      throw ValidationError("discretization: parts must map one-to-one onto pieces");
    seen[part.piece] = true;
    check_domain(*part.geometry, part.space);
  }

  std::vector<PanelSet> panels;
  for (const auto& part : disc.parts) panels.push_back(make_panels(*part.geometry, part.space));
  auto piece_of = [&](int p) -> const BoundaryPiece& { return problem.pieces[disc.parts[p].piece]; };
  auto dirichlet = [&](int p) { return piece_of(p).bc == BcType::Dirichlet; };
  for (int p = 0; p < np; ++p) {
    if (!dirichlet(p)) check_hypersingular(*disc.parts[p].geometry, disc.parts[p].space);
    if (!dirichlet(p) && !piece_of(p).datum.value)
      throw ValidationError("problem: Neumann piece without datum");
  }

  GalerkinSystem sys;
  const int n = disc.size();
  sys.matrix = Eigen::MatrixXd::Zero(n, n);
  sys.rhs = Eigen::VectorXd::Zero(n);
  for (int p = 0; p < np; ++p) sys.offsets.push_back(disc.offset(p));

  // Matrix: upper block triangle, mirrored.
  for (int j = 0; j < np; ++j) {
    for (int k = j; k < np; ++k) {
      const auto& sj = disc.parts[j].space;
      const auto& sk = disc.parts[k].space;
      Eigen::MatrixXd b;
      if (dirichlet(j) && dirichlet(k)) {
        b = block(KernelKind::SingleLayer, panels[j], sj, panels[k], sk, j == k && opt.exploit_symmetry, opt);
      } else if (!dirichlet(j) && !dirichlet(k)) {
        b = block(KernelKind::Hypersingular, panels[j], sj, panels[k], sk, j == k && opt.exploit_symmetry, opt);
      } else if (dirichlet(j)) {
        b = -block(KernelKind::DoubleLayer, panels[j], sj, panels[k], sk, false, opt);
      } else {
        b = -block(KernelKind::AdjointDoubleLayer, panels[j], sj, panels[k], sk, false, opt);
      }
      sys.matrix.block(sys.offsets[j], sys.offsets[k], sj.dof_count(), sk.dof_count()) = b;
      if (k != j) sys.matrix.block(sys.offsets[k], sys.offsets[j], sk.dof_count(), sj.dof_count()) = b.transpose();
    }
  }

  // Right-hand side.
  const int load_order = std::max(opt.quadrature.order, 16);
  for (int j = 0; j < np; ++j) {
    const auto& sj = disc.parts[j].space;
    const auto& pj = piece_of(j);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(sj.dof_count());
    if (problem.arcs()) {
      if (pj.density) {
        const auto density = datum_functions(pj.density, {});
        if (disc.parts[j].geometry.get() == pj.geometry.get()) {
          b = data_block(KernelKind::SingleLayer, panels[j], sj, panels[j], density, opt);
        } else {
          // Data on the exact arc, transferred to the integration geometry by parameter.
          const auto exact = make_panels(*pj.geometry, &sj, panel_nodes(*pj.geometry, {&sj}));
          const Geometry& g = *pj.geometry;
          const QuadratureOptions q = opt.quadrature;
          b = load_on_panels(panels[j], sj, [&](double t) { return potential_at(g, t, exact, density, q); },
                             load_order);
        }
      } else {
        b = load_on_panels(panels[j], sj, pj.datum.value, load_order);
      }
      sys.rhs.segment(sys.offsets[j], sj.dof_count()) = b;
      continue;
    }
    if (dirichlet(j)) {
      b += 0.5 * load_on_panels(panels[j], sj, pj.datum.value, load_order);
    } else {
      b -= 0.5 * load_on_panels(panels[j], sj, pj.datum.value, load_order);
    }
    for (int k = 0; k < np; ++k) {
      const auto& pk = piece_of(k);
      const auto f = datum_functions(pk.datum.value, pk.datum.derivative);
      if (dirichlet(j) && dirichlet(k)) {
        b += data_block(KernelKind::DoubleLayer, panels[j], sj, panels[k], f, opt);
      } else if (dirichlet(j)) {
        b -= data_block(KernelKind::SingleLayer, panels[j], sj, panels[k], f, opt);
      } else if (!dirichlet(k)) {
        b += data_block(KernelKind::AdjointDoubleLayer, panels[j], sj, panels[k], f, opt);
      } else {
        if (!pk.datum.derivative)
          throw ValidationError("problem: Dirichlet datum of '" + pk.name + "' needs a derivative");
        b -= data_block(KernelKind::Hypersingular, panels[j], sj, panels[k], f, opt);
      }
    }
    sys.rhs.segment(sys.offsets[j], sj.dof_count()) = b;
  }
  return sys;
}

CollocationSystem assemble_collocation(const BvpProblem& problem, const Discretization& disc,
                                       const AssemblyOptions& opt) {
  problem.validate();
  if (problem.pieces.size() != 1 || disc.parts.size() != 1 || problem.pieces[0].bc != BcType::Dirichlet)
    throw Unsupported("collocation: single-piece Dirichlet problems only");
  const auto& piece = problem.pieces[0];
  const auto& part = disc.parts[0];
  const Geometry& g = *part.geometry;
  const auto& space = part.space;
  const auto set = make_panels(g, space);

  CollocationSystem sys;
  std::vector<bool> used(space.dof_count(), false);
  for (const auto& [t, dof] : space.interpolation_points()) {
    if (dof < 0 || used[dof]) continue;
    used[dof] = true;
    sys.points.push_back(t);
  }
  if (static_cast<int>(sys.points.size()) != space.dof_count())
    throw ValidationError("collocation: not one point per degree of freedom");
  if (const auto* curve = dynamic_cast<const BoundaryCurve*>(&g)) {
    const auto& kv = curve->knots();
    for (double t : sys.points)
      if (t > kv.front() && t < kv.back() && kv.multiplicity(t) >= kv.degree())
        throw DomainError("collocation: point coincides with a corner of the curve");
  }

  const int n = space.dof_count();
  sys.matrix = Eigen::MatrixXd::Zero(n, n);
  sys.rhs = Eigen::VectorXd::Zero(n);
  const auto density = piece.density ? datum_functions(piece.density, {}) : PanelFunctions{};
  const auto udata = piece.datum.value ? datum_functions(piece.datum.value, {}) : PanelFunctions{};
  std::vector<Eigen::RowVectorXd> rows(n);
  std::vector<double> rhs(n);
  parallel_for(n, opt.workers, [&](int i) {
    const double t = sys.points[i];
    const auto fr = frame(g, t);
    const TargetPoint target{fr.point, fr.normal, &g, t};
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
    double r = 0.0;
    for (std::size_t p = 0; p < set.panels.size(); ++p) {
      const int e = set.element[p];
      const Eigen::VectorXd v =
          integrate_point(KernelKind::SingleLayer, target, set.panels[p], shapes(space, e), opt.quadrature);
      const auto& dofs = space.element(e).dofs;
      for (int a = 0; a < space.shape_count(); ++a)
        if (dofs[a] >= 0) row(dofs[a]) += v(a);
      if (piece.density) {
        r += integrate_point(KernelKind::SingleLayer, target, set.panels[p], density, opt.quadrature)(0);
      } else if (g.closed()) {
        r += integrate_point(KernelKind::DoubleLayer, target, set.panels[p], udata, opt.quadrature)(0);
      }
    }
    if (!piece.density) r += (g.closed() ? 0.5 : 1.0) * piece.datum.value(t);
    rows[i] = row;
    rhs[i] = r;
  });
  for (int i = 0; i < n; ++i) {
    sys.matrix.row(i) = rows[i];
    sys.rhs(i) = rhs[i];
  }
  return sys;
}

Eigen::VectorXd solve_symmetric(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs) {
  const lapack_int n = static_cast<lapack_int>(matrix.rows());
  if (matrix.cols() != n || rhs.size() != n) throw ValidationError("solve: dimension mismatch");
  if (n == 0) return {};
  Eigen::MatrixXd a = matrix;
  Eigen::VectorXd x = rhs;
  std::vector<lapack_int> ipiv(n);
  const lapack_int info = LAPACKE_dsysv(LAPACK_COL_MAJOR, 'U', n, 1, a.data(), n, ipiv.data(), x.data(), n);
  if (info != 0) {
    std::ostringstream msg;
    if (info > 0) msg << "symmetric factorization: zero pivot D(" << info << "," << info << ")";
    else msg << "symmetric factorization: invalid argument " << -info;
    throw SolveError(msg.str());
  }
  return residual_checked(matrix, rhs, std::move(x));
}

Eigen::VectorXd solve_general(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& rhs) {
  if (matrix.rows() != matrix.cols() || rhs.size() != matrix.rows())
    throw ValidationError("solve: dimension mismatch");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(matrix);
  if (!lu.isInvertible()) throw SolveError("solve: singular matrix");
  return residual_checked(matrix, rhs, lu.solve(rhs));
}

double spectral_condition(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolveError("eigenvalue computation failed");
  const Eigen::VectorXd ev = es.eigenvalues().cwiseAbs();
  const double lo = ev.minCoeff();
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return ev.maxCoeff() / lo;
}

double singular_value_condition(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  const auto& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / lo;
}

}  // namespace sgbem
