#include "sgbem/spline.hpp"

#include <algorithm>
#include <sstream>

#include "sgbem/error.hpp"

namespace sgbem {

KnotVector::KnotVector(int order, std::vector<double> knots)
    : order_(order), knots_(std::move(knots)) {
  if (order_ < 1) throw ValidationError("knot vector: order must be >= 1");
  if (static_cast<int>(knots_.size()) < 2 * order_)
    throw ValidationError("knot vector: need at least 2*order knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] >= knots_[i - 1])) {
      std::ostringstream msg;
      msg << "knot vector: knots not non-decreasing at index " << i << " (" << knots_[i - 1]
          << " > " << knots_[i] << ")";
      throw ValidationError(msg.str());
    }
  }
  for (std::size_t i = 0; i < knots_.size();) {
    std::size_t j = i;
    while (j < knots_.size() && knots_[j] == knots_[i]) ++j;
    if (static_cast<int>(j - i) > order_) {
      std::ostringstream msg;
      msg << "knot vector: knot " << knots_[i] << " has multiplicity " << (j - i)
          << " > order " << order_;
      throw ValidationError(msg.str());
    }
    i = j;
  }
  if (!(front() < back())) throw ValidationError("knot vector: empty parameter domain");
}

KnotVector KnotVector::open(int order, std::span<const double> breakpoints,
                            std::span<const int> interior_multiplicities) {
  if (breakpoints.size() < 2) throw ValidationError("knot vector: need at least two breakpoints");
  if (interior_multiplicities.size() + 2 != breakpoints.size())
    throw ValidationError("knot vector: one multiplicity per interior breakpoint expected");
  std::vector<double> knots(order, breakpoints.front());
  for (std::size_t i = 1; i + 1 < breakpoints.size(); ++i) {
    const int m = interior_multiplicities[i - 1];
    if (m < 1 || m > order) throw ValidationError("knot vector: multiplicity outside [1, order]");
    knots.insert(knots.end(), m, breakpoints[i]);
  }
  knots.insert(knots.end(), order, breakpoints.back());
  return KnotVector(order, std::move(knots));
}

KnotVector KnotVector::open_uniform(int order, double a, double b, int intervals,
                                    int multiplicity) {
  if (intervals < 1) throw ValidationError("knot vector: need at least one interval");
  std::vector<double> bp(intervals + 1);
  for (int i = 0; i <= intervals; ++i) bp[i] = a + (b - a) * i / intervals;
  bp.back() = b;
  std::vector<int> mult(intervals - 1, multiplicity);
  return open(order, bp, mult);
}

bool KnotVector::is_open() const {
  for (int i = 0; i < order_; ++i) {
    if (knots_[i] != front()) return false;
    if (knots_[knots_.size() - 1 - i] != back()) return false;
  }
  return true;
}

std::vector<double> KnotVector::breakpoints() const {
  std::vector<double> out;
  for (double t : knots_) {
    if (t < front() || t > back()) continue;
    if (out.empty() || out.back() != t) out.push_back(t);
  }
  return out;
}

std::vector<int> KnotVector::interior_multiplicities() const {
  const auto bp = breakpoints();
  std::vector<int> out;
  for (std::size_t i = 1; i + 1 < bp.size(); ++i) out.push_back(multiplicity(bp[i]));
  return out;
}

int KnotVector::multiplicity(double t) const {
  return static_cast<int>(std::count(knots_.begin(), knots_.end(), t));
}

int KnotVector::span(double t) const {
  if (!(t >= front() && t <= back())) {
    std::ostringstream msg;
    msg << "parameter " << t << " outside [" << front() << ", " << back() << "]";
    throw DomainError(msg.str());
  }
  const int last = dimension() - 1;  // N
  if (t == back()) {
    int mu = last;
    while (mu > order_ - 1 && !(knots_[mu] < knots_[mu + 1])) --mu;
    return mu;
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  int mu = static_cast<int>(it - knots_.begin()) - 1;
  return std::min(mu, last);
}

BasisValues eval_basis(const KnotVector& kv, double t, int deriv_order) {
  return eval_basis_in_span(kv, kv.span(t), t, deriv_order);
}

BasisValues eval_basis_in_span(const KnotVector& kv, int mu, double t, int deriv_order) {
  const int k = kv.order();
  const auto& tau = kv.knots();
  if (mu < k - 1 || mu >= kv.dimension() || !(tau[mu] < tau[mu + 1]))
    throw DomainError("eval_basis: invalid span index");

  // table[j-1] holds B_{mu-j+1, j} ... B_{mu, j}
  std::vector<std::vector<double>> table(k);
  table[0] = {1.0};
  auto omega = [&](int i, int j) {
    const double den = tau[i + j - 1] - tau[i];
    return tau[i] < tau[i + j - 1] ? (t - tau[i]) / den : 0.0;
  };
  for (int j = 2; j <= k; ++j) {
    const auto& prev = table[j - 2];
    std::vector<double> cur(j, 0.0);
    for (int r = 0; r < j; ++r) {
      const int i = mu - j + 1 + r;
      // prev holds functions mu-j+2 .. mu; B_{i,j-1} is prev[r-1], B_{i+1,j-1} is prev[r]
      const double left = r >= 1 ? prev[r - 1] : 0.0;
      const double right = r < j - 1 ? prev[r] : 0.0;
      cur[r] = omega(i, j) * left + (1.0 - omega(i + 1, j)) * right;
    }
    table[j - 1] = std::move(cur);
  }

  BasisValues out;
  out.first = mu - k + 1;
  out.values = Eigen::MatrixXd::Zero(k, deriv_order + 1);
  for (int r = 0; r < k; ++r) out.values(r, 0) = table[k - 1][r];
  if (deriv_order == 0) return out;

  // deriv[j-1][d] holds the d-th derivatives of the order-j functions.
  std::vector<std::vector<std::vector<double>>> deriv(k);
  for (int j = 1; j <= k; ++j) {
    deriv[j - 1].resize(deriv_order + 1);
    deriv[j - 1][0] = table[j - 1];
    for (int d = 1; d <= deriv_order; ++d) {
      std::vector<double> cur(j, 0.0);
      if (d < j) {
        const auto& lower = deriv[j - 2][d - 1];
        for (int r = 0; r < j; ++r) {
          const int i = mu - j + 1 + r;
          const double left = r >= 1 ? lower[r - 1] : 0.0;
          const double right = r < j - 1 ? lower[r] : 0.0;
          const double den_l = tau[i + j - 1] - tau[i];
          const double den_r = tau[i + j] - tau[i + 1];
          double v = 0.0;
          if (den_l > 0.0) v += left / den_l;
          if (den_r > 0.0) v -= right / den_r;
          cur[r] = (j - 1) * v;
        }
      }
      deriv[j - 1][d] = std::move(cur);
    }
  }
  for (int d = 1; d <= deriv_order; ++d)
    for (int r = 0; r < k; ++r) out.values(r, d) = deriv[k - 1][d][r];
  return out;
}

Eigen::MatrixXd eval_spline(const KnotVector& kv, const Eigen::MatrixXd& coeffs, double t,
                            int deriv_order) {
  if (coeffs.rows() != kv.dimension())
    throw ValidationError("spline: coefficient count does not match space dimension");
  const auto basis = eval_basis(kv, t, deriv_order);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(deriv_order + 1, coeffs.cols());
  for (int r = 0; r < kv.order(); ++r)
    for (int d = 0; d <= deriv_order; ++d)
      out.row(d) += basis.values(r, d) * coeffs.row(basis.first + r);
  return out;
}

std::vector<double> greville(const KnotVector& kv) {
  const int k = kv.order();
  if (k < 2) throw Unsupported("greville abscissae need order >= 2");
  const auto& tau = kv.knots();
  std::vector<double> out(kv.dimension());
  for (int i = 0; i < kv.dimension(); ++i) {
    double s = 0.0;
    for (int j = 1; j <= k - 1; ++j) s += tau[i + j];
    out[i] = std::clamp(s / (k - 1), kv.front(), kv.back());
  }
  return out;
}

SplineRepresentation insert_knot(const KnotVector& kv, const Eigen::MatrixXd& coeffs, double t) {
  if (!(t > kv.front() && t < kv.back())) throw DomainError("insert_knot: parameter not interior");
  const int k = kv.order();
  if (kv.multiplicity(t) + 1 > k) throw ValidationError("insert_knot: multiplicity would exceed order");
  const auto& tau = kv.knots();
  const int mu = kv.span(t);
  const int n = kv.dimension();

  Eigen::MatrixXd out(n + 1, coeffs.cols());
  for (int i = 0; i <= n; ++i) {
    if (i <= mu - k + 1) {
      out.row(i) = coeffs.row(i);
    } else if (i > mu) {
      out.row(i) = coeffs.row(i - 1);
    } else {
      const double alpha = (t - tau[i]) / (tau[i + k - 1] - tau[i]);
      out.row(i) = alpha * coeffs.row(i) + (1.0 - alpha) * coeffs.row(i - 1);
    }
  }
  std::vector<double> knots = tau;
  knots.insert(std::upper_bound(knots.begin(), knots.end(), t), t);
  return {KnotVector(k, std::move(knots)), std::move(out)};
}

SplineRepresentation refine_midpoints(const KnotVector& kv, const Eigen::MatrixXd& coeffs) {
  const auto bp = kv.breakpoints();
  SplineRepresentation rep{kv, coeffs};
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    rep = insert_knot(rep.knots, rep.coeffs, 0.5 * (bp[i] + bp[i + 1]));
  return rep;
}

Eigen::MatrixXd interpolate_at_greville(const KnotVector& kv, const Eigen::MatrixXd& values) {
  const auto g = greville(kv);
  const int n = kv.dimension();
  if (values.rows() != n) throw ValidationError("interpolation: one value row per abscissa expected");
  Eigen::MatrixXd colloc = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto b = eval_basis(kv, g[i]);
    for (int r = 0; r < kv.order(); ++r) colloc(i, b.first + r) = b.values(r, 0);
  }
  return colloc.partialPivLu().solve(values);
}

SplineRepresentation elevate_degree(const KnotVector& kv, const Eigen::MatrixXd& coeffs) {
  const int k = kv.order();
  const auto bp = kv.breakpoints();
  const auto mult = kv.interior_multiplicities();
  std::vector<int> raised(mult.size());
  for (std::size_t i = 0; i < mult.size(); ++i) raised[i] = mult[i] + 1;

  // Auxiliary knots of a non-open vector are not preserved; the elevated space
  // always uses the open convention.
  KnotVector elevated = KnotVector::open(k + 1, bp, raised);
  const auto g = greville(elevated);
  Eigen::MatrixXd values(elevated.dimension(), coeffs.cols());
  for (int i = 0; i < elevated.dimension(); ++i) values.row(i) = eval_spline(kv, coeffs, g[i]).row(0);
  return {elevated, interpolate_at_greville(elevated, values)};
}

}  // namespace sgbem
