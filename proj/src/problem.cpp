#include "sgbem/problem.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "sgbem/error.hpp"

namespace sgbem {

const char* to_string(BcType type) { return type == BcType::Dirichlet ? "dirichlet" : "neumann"; }

HarmonicField constant_field(double c) {
  return {[c](const Vec2&) { return c; }, [](const Vec2&) { return Vec2(0.0, 0.0); }};
}

HarmonicField linear_field(double c0, double c1, double c2) {
  return {[=](const Vec2& x) { return c0 + c1 * x.x() + c2 * x.y(); },
          [=](const Vec2&) { return Vec2(c1, c2); }};
}

HarmonicField harmonic_polynomial(std::vector<double> re, std::vector<double> im) {
  if (im.size() < re.size()) im.resize(re.size(), 0.0);
  if (re.size() < im.size()) re.resize(im.size(), 0.0);
  // f = Re(sum (a_k - i b_k) z^k); f' = sum k (a_k - i b_k) z^{k-1} gives
  // grad f = (Re f', -Im f').
  auto coeff = [re, im](std::size_t k) { return std::complex<double>(re[k], -im[k]); };
  const std::size_t n = re.size();
  auto value = [coeff, n](const Vec2& x) {
    const std::complex<double> z(x.x(), x.y());
    std::complex<double> s = 0.0;
    for (std::size_t k = n; k-- > 0;) s = s * z + coeff(k);
    return s.real();
  };
  auto gradient = [coeff, n](const Vec2& x) {
    const std::complex<double> z(x.x(), x.y());
    std::complex<double> s = 0.0;
    for (std::size_t k = n; k-- > 1;) s = s * z + static_cast<double>(k) * coeff(k);
    return Vec2(s.real(), -s.imag());
  };
  return {value, gradient};
}

BoundaryDatum dirichlet_trace(std::shared_ptr<const Geometry> g, HarmonicField f) {
  BoundaryDatum d;
  d.value = [g, f](double t) { return f.value(g->point(t)); };
  d.derivative = [g, f](double t) {
    const auto cp = g->eval(t);
    return f.gradient(cp.point).dot(cp.derivative);
  };
  return d;
}

BoundaryDatum neumann_trace(std::shared_ptr<const Geometry> g, HarmonicField f) {
  BoundaryDatum d;
  d.value = [g, f](double t) {
    const auto fr = frame(*g, t);
    return f.gradient(fr.point).dot(fr.normal);
  };
  return d;
}

namespace {

double extent(const Geometry& g) {
  double m = 0.0;
  const Vec2 p0 = g.point(g.front());
  for (int k = 1; k <= 64; ++k) m = std::max(m, (g.point(g.front() + (g.back() - g.front()) * k / 64.0) - p0).norm());
  return m;
}

// Closest pair of sample points, refined by alternating golden-section
// searches in the neighbouring sample intervals.
double min_distance(const Geometry& a, const Geometry& b) {
  constexpr int n = 512;
  const double ha = (a.back() - a.front()) / n, hb = (b.back() - b.front()) / n;
  std::vector<Vec2> pb(n + 1);
  for (int k = 0; k <= n; ++k) pb[k] = b.point(b.front() + hb * k);
  double best = std::numeric_limits<double>::infinity(), s = a.front(), t = b.front();
  for (int i = 0; i <= n; ++i) {
    const Vec2 x = a.point(a.front() + ha * i);
    for (int k = 0; k <= n; ++k) {
      const double d = (x - pb[k]).norm();
      if (d < best) best = d, s = a.front() + ha * i, t = b.front() + hb * k;
    }
  }
  auto golden = [](auto f, double lo, double hi) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo), f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) hi = x2, x2 = x1, f2 = f1, x1 = hi - r * (hi - lo), f1 = f(x1);
      else lo = x1, x1 = x2, f1 = f2, x2 = lo + r * (hi - lo), f2 = f(x2);
    }
    return 0.5 * (lo + hi);
  };
  for (int round = 0; round < 4; ++round) {
    s = golden([&](double u) { return (a.point(u) - b.point(t)).norm(); }, std::max(a.front(), s - ha),
               std::min(a.back(), s + ha));
    t = golden([&](double u) { return (a.point(s) - b.point(u)).norm(); }, std::max(b.front(), t - hb),
               std::min(b.back(), t + hb));
  }
  return std::min(best, (a.point(s) - b.point(t)).norm());
}

}  // namespace

bool BvpProblem::arcs() const {
  return !pieces.empty() && !pieces.front().geometry->closed();
}

void BvpProblem::validate() const {
  if (pieces.empty()) throw ValidationError("problem: no boundary pieces");
  const bool open = arcs();
  bool dirichlet = false;
  for (const auto& p : pieces) {
    if (!p.geometry) throw ValidationError("problem: piece '" + p.name + "' has no geometry");
    if (p.geometry->closed() == open)
      throw Unsupported("problem: closed curves and open arcs cannot be mixed");
    if (open && p.bc != BcType::Dirichlet)
      throw Unsupported("problem: open arcs support Dirichlet data only");
    if (p.density && !open) throw Unsupported("problem: density data is only defined on open arcs");
    if (!p.datum.value && !p.density)
      throw ValidationError("problem: piece '" + p.name + "' has no boundary datum");
    dirichlet = dirichlet || p.bc == BcType::Dirichlet;
  }
  if (!dirichlet) throw ValidationError("problem: the Dirichlet part must have positive measure");
  // Pieces must not touch: the quadrature treats different curves as disjoint.
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (min_distance(*pieces[i].geometry, *pieces[j].geometry) < 1e-10 * std::max(1.0, extent(*pieces[i].geometry)))
        throw Unsupported("problem: boundary pieces '" + pieces[i].name + "' and '" + pieces[j].name + "' touch");
    }
  }
}

int Discretization::size() const {
  int n = 0;
  for (const auto& p : parts) n += p.space.dof_count();
  return n;
}

int Discretization::offset(int part) const {
  int n = 0;
  for (int i = 0; i < part; ++i) n += parts[i].space.dof_count();
  return n;
}

}  // namespace sgbem
