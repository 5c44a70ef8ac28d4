#include "sgbem/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sgbem/error.hpp"

namespace sgbem {

namespace {

bool near(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * scale; }

// Lagrange basis on uniform nodes of [0,1] (node 1/2 for degree 0).
void lagrange_shapes(int degree, double s, double* values, double* derivs) {
  if (degree == 0) {
    values[0] = 1.0;
    derivs[0] = 0.0;
    return;
  }
  const int n = degree + 1;
  for (int i = 0; i < n; ++i) {
    const double si = static_cast<double>(i) / degree;
    double den = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) den *= si - static_cast<double>(j) / degree;
    double v = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) v *= s - static_cast<double>(j) / degree;
    double d = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m == i) continue;
      double p = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i && j != m) p *= s - static_cast<double>(j) / degree;
      d += p;
    }
    values[i] = v / den;
    derivs[i] = d / den;
  }
}

}  // namespace

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::BSpline: return "bspline";
    case SpaceKind::LagrangeCurvilinear: return "lagrange";
    case SpaceKind::LagrangePolygonal: return "lagrange-polygonal";
  }
  return "?";
}

DiscreteSpace DiscreteSpace::bspline(KnotVector knots, bool identify_ends) {
  if (!knots.is_open()) throw ValidationError("space: B-spline spaces need an open knot vector");
  DiscreteSpace s;
  s.kind_ = SpaceKind::BSpline;
  s.degree_ = knots.degree();
  s.closed_ = identify_ends;
  const int k = knots.order();
  const int n = knots.dimension();
  if (identify_ends && n < 2) throw ValidationError("space: too few functions to identify ends");
  const auto& tau = knots.knots();
  for (int mu = k - 1; mu < n; ++mu) {
    if (!(tau[mu] < tau[mu + 1])) continue;
    SpaceElement el;
    el.t0 = tau[mu];
    el.t1 = tau[mu + 1];
    el.span = mu;
    for (int i = mu - k + 1; i <= mu; ++i) el.dofs.push_back(identify_ends && i == n - 1 ? 0 : i);
    s.elements_.push_back(std::move(el));
  }
  s.dof_count_ = identify_ends ? n - 1 : n;
  bool cont = k >= 2;
  for (int m : knots.interior_multiplicities()) cont = cont && m < k;
  s.continuous_ = cont;
  s.knots_ = std::move(knots);
  return s;
}

DiscreteSpace DiscreteSpace::lagrange(const BoundaryMesh& mesh, int degree, std::span<const double> jumps,
                                      bool closure_continuous, SpaceKind kind) {
  if (degree < 0) throw ValidationError("space: negative degree");
  if (mesh.size() < 1) throw ValidationError("space: empty mesh");
  DiscreteSpace s;
  s.kind_ = kind;
  s.degree_ = degree;
  s.closed_ = mesh.closed && closure_continuous && degree > 0;
  const double scale = std::max(1.0, std::abs(mesh.back - mesh.front));
  auto jumps_at = [&](double t) {
    return std::any_of(jumps.begin(), jumps.end(), [&](double j) { return near(j, t, scale); });
  };
  int next = 0;
  int first_dof = -1;
  int shared = -1;  // dof of the left endpoint of the current element
  for (int e = 0; e < mesh.size(); ++e) {
    SpaceElement el;
    el.t0 = mesh.left(e);
    el.t1 = mesh.right(e);
    if (degree == 0) {
      el.dofs.push_back(next++);
    } else {
      const int left = (e > 0 && shared >= 0) ? shared : next++;
      if (e == 0) first_dof = left;
      el.dofs.push_back(left);
      for (int i = 1; i < degree; ++i) el.dofs.push_back(next++);
      const bool last = e + 1 == mesh.size();
      int right;
      if (last && s.closed_) {
        right = first_dof;
      } else {
        right = next++;
      }
      el.dofs.push_back(right);
      shared = (!last && !jumps_at(mesh.right(e))) ? right : -1;
    }
    s.elements_.push_back(std::move(el));
  }
  s.dof_count_ = next;
  bool cont = degree > 0;
  for (int e = 1; e < mesh.size(); ++e) cont = cont && !jumps_at(mesh.left(e));
  if (mesh.closed) cont = cont && s.closed_;
  s.continuous_ = cont;
  return s;
}

void DiscreteSpace::eval(int e, double t, double* values, double* derivs) const {
  const auto& el = elements_[e];
  if (kind_ == SpaceKind::BSpline) {
    const auto b = eval_basis_in_span(*knots_, el.span, t, 1);
    for (int r = 0; r <= degree_; ++r) {
      values[r] = b.values(r, 0);
      derivs[r] = b.values(r, 1);
    }
    return;
  }
  const double len = el.t1 - el.t0;
  lagrange_shapes(degree_, (t - el.t0) / len, values, derivs);
  for (int r = 0; r <= degree_; ++r) derivs[r] /= len;
}

int DiscreteSpace::locate(double t, bool from_right) const {
  if (!(t >= front() && t <= back())) throw DomainError("space: parameter outside the interval");
  auto it = from_right
                ? std::upper_bound(elements_.begin(), elements_.end(), t,
                                   [](double v, const SpaceElement& el) { return v < el.t1; })
                : std::lower_bound(elements_.begin(), elements_.end(), t,
                                   [](const SpaceElement& el, double v) { return el.t1 < v; });
  if (it == elements_.end()) --it;
  return static_cast<int>(it - elements_.begin());
}

double DiscreteSpace::evaluate_in(int e, const Eigen::VectorXd& coeffs, double t) const {
  double v[kMaxShapes], d[kMaxShapes];
  eval(e, t, v, d);
  double out = 0.0;
  const auto& dofs = elements_[e].dofs;
  for (int i = 0; i < shape_count(); ++i)
    if (dofs[i] >= 0) out += coeffs(dofs[i]) * v[i];
  return out;
}

double DiscreteSpace::evaluate(const Eigen::VectorXd& coeffs, double t) const {
  if (coeffs.size() != dof_count_) throw ValidationError("space: coefficient count mismatch");
  return evaluate_in(locate(t), coeffs, t);
}

std::vector<double> DiscreteSpace::element_nodes() const {
  std::vector<double> out;
  for (const auto& el : elements_) out.push_back(el.t0);
  out.push_back(elements_.back().t1);
  return out;
}

std::vector<std::pair<double, int>> DiscreteSpace::interpolation_points() const {
  std::vector<std::pair<double, int>> out;
  if (kind_ == SpaceKind::BSpline) {
    // Map raw function index to dof through the elements.
    std::map<int, int> dof_of;
    for (const auto& el : elements_)
      for (int r = 0; r <= degree_; ++r) dof_of[el.span - degree_ + r] = el.dofs[r];
    std::vector<double> pts;
    if (degree_ == 0) {
      for (const auto& el : elements_) pts.push_back(0.5 * (el.t0 + el.t1));
      for (std::size_t i = 0; i < elements_.size(); ++i) out.emplace_back(pts[i], elements_[i].dofs[0]);
      return out;
    }
    pts = greville(*knots_);
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) out.emplace_back(pts[i], dof_of.at(i));
    return out;
  }
  for (const auto& el : elements_) {
    for (int r = 0; r <= degree_; ++r) {
      const double s = degree_ == 0 ? 0.5 : static_cast<double>(r) / degree_;
      out.emplace_back(el.t0 + s * (el.t1 - el.t0), el.dofs[r]);
    }
  }
  return out;
}

DiscreteSpace DiscreteSpace::constrained(std::span<const double> params) const {
  std::vector<bool> drop(dof_count_, false);
  double v[kMaxShapes], d[kMaxShapes];
  for (double t : params) {
    for (int e : {locate(t, false), locate(t, true)}) {
      eval(e, t, v, d);
      for (int r = 0; r <= degree_; ++r) {
        const int dof = elements_[e].dofs[r];
        if (dof >= 0 && std::abs(v[r]) > 1e-12) drop[dof] = true;
      }
    }
  }
  std::vector<int> renumber(dof_count_, -1);
  int next = 0;
  for (int i = 0; i < dof_count_; ++i)
    if (!drop[i]) renumber[i] = next++;
  DiscreteSpace out = *this;
  for (auto& el : out.elements_)
    for (auto& dof : el.dofs) dof = dof >= 0 ? renumber[dof] : -1;
  out.dof_count_ = next;
  return out;
}

// ---------------------------------------------------------------------------

KnotVector bspline_space_knots(const Geometry& g, const BSplineSpaceOptions& o) {
  if (o.degree < 0) throw ValidationError("space: negative degree");
  if (o.elements < 1) throw ValidationError("space: need at least one element");
  const int k = o.degree + 1;
  const int r = o.regularity.value_or(o.degree - 1);
  if (r < -1 || r > o.degree - 1) throw ValidationError("space: regularity outside [-1, degree-1]");
  const double a = g.front(), b = g.back();
  const double scale = std::max(1.0, std::abs(b - a));

  std::vector<std::pair<double, int>> bp;  // sorted breakpoint, multiplicity
  auto merge = [&](double t, int m, bool overwrite) {
    m = std::clamp(m, 1, k);
    for (auto& [u, mu] : bp) {
      if (near(u, t, scale)) {
        mu = overwrite ? m : std::max(mu, m);
        return;
      }
    }
    bp.emplace_back(t, m);
    std::sort(bp.begin(), bp.end());
  };
  for (int i = 0; i <= o.elements; ++i) merge(a + (b - a) * i / o.elements, o.degree - r, false);
  bp.front().first = a;
  bp.back().first = b;
  if (o.include_geometry_knots) {
    if (const auto* curve = dynamic_cast<const BoundaryCurve*>(&g)) {
      const auto& kv = curve->knots();
      const auto gb = kv.breakpoints();
      // Only breakpoints that are mesh nodes; elsewhere the space is not
      // refined (panels are still split there).
      for (std::size_t i = 1; i + 1 < gb.size(); ++i) {
        const bool on_mesh = std::any_of(bp.begin(), bp.end(), [&](const auto& u) { return near(u.first, gb[i], scale); });
        if (on_mesh) merge(gb[i], kv.multiplicity(gb[i]) + (o.degree - kv.degree()), false);
      }
    }
  }
  for (const auto& [t, m] : o.multiplicity_overrides) {
    if (!(t > a && t < b)) throw ValidationError("space: multiplicity override not interior");
    merge(t, m, true);
  }
  std::vector<double> pts;
  std::vector<int> mult;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    pts.push_back(bp[i].first);
    if (i > 0 && i + 1 < bp.size()) mult.push_back(bp[i].second);
  }
  return KnotVector::open(k, pts, mult);
}

DiscreteSpace build_bspline_space(const Geometry& g, const BSplineSpaceOptions& o) {
  auto kv = bspline_space_knots(g, o);
  const bool identify = g.closed() && o.closure_continuous && o.degree > 0;
  auto s = DiscreteSpace::bspline(std::move(kv), identify);
  if (s.shape_count() > kMaxShapes) throw Unsupported("space: degree too high");
  return s;
}

DiscreteSpace build_lagrange_space(const BoundaryMesh& mesh, int degree, const ContinuityMap& c) {
  if (degree + 1 > kMaxShapes) throw Unsupported("space: degree too high");
  if (c.all_discontinuous) {
    std::vector<double> all(mesh.nodes.begin() + 1, mesh.nodes.end() - 1);
    return DiscreteSpace::lagrange(mesh, degree, all, false);
  }
  return DiscreteSpace::lagrange(mesh, degree, c.jumps, c.closure_continuous);
}

DiscreteSpace build_polygonal_space(const PolygonalBoundary& poly, const BoundaryMesh& mesh, int degree,
                                    bool continuous) {
  if (std::abs(poly.front() - mesh.front) > 0 || std::abs(poly.back() - mesh.back) > 0)
    throw ValidationError("space: mesh does not match the polygon");
  std::vector<double> all;
  if (!continuous) all.assign(mesh.nodes.begin() + 1, mesh.nodes.end() - 1);
  return DiscreteSpace::lagrange(mesh, degree, all, continuous, SpaceKind::LagrangePolygonal);
}

DiscreteSpace constrain_endpoints(const DiscreteSpace& space, std::span<const double> params) {
  return space.constrained(params);
}

}  // namespace sgbem
