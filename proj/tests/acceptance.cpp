// Acceptance checks against the published tables. Prints one line per
// criterion and exits non-zero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sgbem/assembly.hpp"
#include "sgbem/experiments.hpp"
#include "sgbem/postprocess.hpp"
#include "sgbem/spline.hpp"

using namespace sgbem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool within_factor(double value, double reference, double factor) {
  return value <= reference * factor && value >= reference / factor;
}

std::vector<int> dofs(const ExperimentResult& r) {
  std::vector<int> d;
  for (const auto& row : r.rows) d.push_back(row.dof);
  return d;
}

ExperimentSpec spec_for(Method m, int degree, int elements, int levels) {
  ExperimentSpec s;
  s.method = m;
  s.degree = degree;
  s.elements = elements;
  s.levels = levels;
  return s;
}

// Compares a column against reference values and records the worst ratio.
void compare_column(Outcome& o, const std::string& label, const std::vector<double>& values,
                    const std::vector<double>& reference, double factor) {
  double worst = 1.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double r = values[i] / reference[i];
    if (std::abs(std::log(r)) > std::abs(std::log(worst))) worst = r;
    o.require(within_factor(values[i], reference[i], factor), label + " row " + std::to_string(i) + " = " +
                                                                 sci(values[i]) + " vs " + sci(reference[i]));
  }
  o.detail << ' ' << label << " worst ratio " << sci(worst) << ';';
}

std::vector<double> column(const ExperimentResult& r, double ResultRow::*field) {
  std::vector<double> v;
  for (const auto& row : r.rows) v.push_back(row.*field);
  return v;
}

Outcome criterion1() {
  Outcome o;
  auto s = spec_for(Method::IgaSgbem, 2, 20, 3);
  s.max_sampling = MaxSampling::Nodes;
  const auto r = run_builtin(4, "", s);
  compare_column(o, "E_M", column(r, &ResultRow::error), {2.11e-5, 1.27e-6, 1.48e-7}, 3.0);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    o.detail << " order " << sci(r.rows[i].order) << ';';
    o.require(r.rows[i].order >= 2.9, "order " + sci(r.rows[i].order) + " < 2.9");
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto s = spec_for(Method::IgaCollocation, 2, 10, 5);
  s.max_sampling = MaxSampling::Dense;
  const auto r = run_builtin(4, "", s);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    o.detail << " order " << sci(r.rows[i].order) << ';';
    o.require(std::abs(r.rows[i].order - 3.0) <= 0.2, "order " + sci(r.rows[i].order));
  }
  compare_column(o, "cond", column(r, &ResultRow::cond), {17.3, 36.3, 77.0, 158, 320}, 3.0);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto r = run_builtin(2, "", spec_for(Method::IgaSgbem, 3, 8, 4));
  o.require(dofs(r) == std::vector<int>{10, 18, 34, 66}, "DoF column");
  compare_column(o, "E", column(r, &ResultRow::error), {3.37e-1, 1.28e-1, 4.11e-2, 8.29e-3}, 2.0);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto r = run_builtin(2, "", spec_for(Method::CSgbem, 3, 8, 4));
  o.require(dofs(r) == std::vector<int>{24, 48, 96, 192}, "DoF column");
  compare_column(o, "E", column(r, &ResultRow::error), {4.69e-2, 1.85e-2, 5.38e-3, 4.92e-4}, 2.0);
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const char* v : {"A", "B"}) {
    const auto r = run_builtin(3, v, ExperimentSpec{});
    const auto& row = r.rows[0];
    o.require(row.dof == 16, std::string("order of domain ") + v);
    for (const auto& [part, e] : row.part_errors) {
      if (part.find(":dense") == std::string::npos) continue;
      o.detail << ' ' << v << ' ' << part.substr(0, part.rfind(':')) << " E_M " << sci(e) << ';';
      o.require(e <= 1e-4, std::string(v) + " " + part);
    }
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t1 = run_builtin(1, "t1", ExperimentSpec{});
  o.require(dofs(t1) == std::vector<int>{13, 22, 40, 76}, "T1 DoF column");
  compare_column(o, "T1 E", column(t1, &ResultRow::error), {3.32e-1, 1.61e-1, 1.08e-1, 7.62e-2}, 2.0);
  const auto t2 = run_builtin(1, "t2", ExperimentSpec{});
  const double e4 = t2.rows[2].error, e8 = t2.rows[3].error;
  o.detail << " T2 E(1/4) " << sci(e4) << " E(1/8) " << sci(e8) << ';';
  o.require(e8 >= e4, "T2 error keeps decreasing from h = 1/4 to h = 1/8 (no stagnation)");
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  double pu = 0.0;
  for (const auto& kv : {KnotVector::open_uniform(3, 0, 9, 9, 2), KnotVector::open_uniform(6, 0, 1, 7),
                         KnotVector::open_uniform(10, -1, 1, 3, 4)})
    for (int s = 0; s < 500; ++s)
      pu = std::max(pu, std::abs(eval_basis(kv, kv.front() + (kv.back() - kv.front()) * u(rng)).values.sum() - 1.0));
  o.detail << " partition of unity " << sci(pu) << ';';
  o.require(pu <= 1e-13, "partition of unity");

  const auto curve = std::dynamic_pointer_cast<const BoundaryCurve>(builtin_case(2).curves[0].piece.geometry);
  const auto refined = refine_midpoints(curve->knots(), curve->control_points());
  auto elevated = elevate_degree(curve->knots(), curve->control_points());
  elevated = elevate_degree(elevated.knots, elevated.coeffs);
  double inv = 0.0;
  for (int s = 0; s < 500; ++s) {
    const double t = u(rng);
    const Eigen::MatrixXd c = eval_spline(curve->knots(), curve->control_points(), t);
    inv = std::max(inv, (c - eval_spline(refined.knots, refined.coeffs, t)).norm());
    inv = std::max(inv, (c - eval_spline(elevated.knots, elevated.coeffs, t)).norm());
  }
  o.detail << " refinement invariance " << sci(inv) << ';';
  o.require(inv <= 1e-12, "knot insertion / degree elevation invariance");

  const auto c3 = builtin_case(3, "A");
  const auto p3 = c3.problem();
  AssemblyOptions full;
  full.exploit_symmetry = false;
  const auto sys = assemble_system(p3, discretize(c3, p3, {Method::IgaSgbem, 3, 6, {}, true}), full);
  const double asym = (sys.matrix - sys.matrix.transpose()).norm() / sys.matrix.norm();
  o.detail << " symmetry " << sci(asym) << ';';
  o.require(asym <= 1e-12, "matrix symmetry");

  const CircleCurve circle(Vec2(0, 0), 1.0);
  const auto lag = build_lagrange_space(induced_mesh(circle, 32), 6, {});
  const auto v = assemble_block(KernelKind::SingleLayer, circle, lag, circle, lag);
  const auto d = assemble_block(KernelKind::Hypersingular, circle, lag, circle, lag);
  double fourier = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto x = lag.interpolate([n](double t) { return std::cos(n * t); });
    fourier = std::max(fourier, std::abs(x.dot(v * x) / (std::numbers::pi / (2 * n)) - 1.0));
    fourier = std::max(fourier, std::abs(x.dot(d * x) / (-n * std::numbers::pi / 2) - 1.0));
  }
  o.detail << " circle Fourier " << sci(fourier) << ';';
  o.require(fourier <= 1e-6, "circle Fourier oracle");

  BSplineSpaceOptions bo;
  bo.degree = 2;
  bo.elements = 12;
  const auto bs = build_bspline_space(circle, bo);
  const double v1 =
      (assemble_block(KernelKind::SingleLayer, circle, bs, circle, bs) * Eigen::VectorXd::Ones(bs.dof_count()))
          .cwiseAbs()
          .maxCoeff();
  o.detail << " V1 " << sci(v1) << ';';
  o.require(v1 <= 1e-8, "V annihilates constants");

  auto disk = std::make_shared<CircleCurve>(Vec2(0, 0), 0.5);
  Case dc;
  CaseCurve cc;
  cc.piece = {"disk", disk, BcType::Dirichlet, dirichlet_trace(disk, constant_field(3.0)), {}};
  dc.curves.push_back(cc);
  const auto dp = dc.problem();
  const auto dd = discretize(dc, dp, {Method::IgaSgbem, 2, 8, {}, true});
  const auto ds = assemble_system(dp, dd);
  const BoundarySolution sol{&dp, &dd, solve_symmetric(ds.matrix, ds.rhs)};
  const double mv = std::abs(interior_value(sol, Vec2(0, 0)) - 3.0);
  o.detail << " mean value " << sci(mv) << ';';
  o.require(mv <= 1e-6, "mean value");
  return o;
}

struct CondTable {
  std::string label;
  int example;
  std::string variant;
  ExperimentSpec spec;
  std::vector<double> reference;
};

Outcome criterion8() {
  Outcome o;
  std::vector<CondTable> tables;
  tables.push_back({"T1", 1, "t1", spec_for(Method::IgaSgbem, 2, 9, 4), {2.53e2, 3.05e2, 5.82e2, 1.23e3}});
  tables.push_back({"T2 IGA", 1, "t2", spec_for(Method::IgaSgbem, 2, 9, 4), {4.23e2, 3.55e2, 5.68e2, 1.21e3}});
  tables.push_back({"T2 C", 1, "t2", spec_for(Method::CSgbem, 2, 9, 4), {1.68e2, 2.68e2, 5.38e2, 1.09e3}});
  const double iga[3][7] = {{6.61e2, 4.07e3, 1.89e4, 9.19e4, 4.40e5, 2.08e6, 9.84e6},
                            {1.18e3, 7.78e3, 3.72e4, 1.90e5, 9.69e5, 4.98e6, 2.51e7},
                            {2.44e3, 2.21e4, 1.13e5, 5.90e5, 3.08e6, 1.59e7, 8.08e7}};
  const double lag[3][7] = {{5.47e2, 1.21e3, 2.02e3, 4.42e3, 5.50e3, 1.88e4, 1.45e4},
                            {1.49e3, 3.36e3, 5.30e3, 1.16e4, 1.35e4, 4.93e4, 3.49e4},
                            {4.21e3, 8.84e3, 1.32e4, 2.77e4, 3.09e4, 1.12e5, 7.53e4}};
  for (int p = 3; p <= 9; ++p) {
    auto si = spec_for(Method::IgaSgbem, p, 8, 3);
    si.regularity = 2;
    tables.push_back({"deg " + std::to_string(p) + " IGA", 2, "", si, {iga[0][p - 3], iga[1][p - 3], iga[2][p - 3]}});
    tables.push_back({"deg " + std::to_string(p) + " C", 2, "", spec_for(Method::CSgbem, p, 8, 3),
                      {lag[0][p - 3], lag[1][p - 3], lag[2][p - 3]}});
  }
  tables.push_back({"C2 IGA", 2, "", spec_for(Method::IgaSgbem, 3, 8, 4), {6.61e2, 1.18e3, 2.44e3, 7.48e3}});
  tables.push_back({"C1 IGA", 2, "c1", spec_for(Method::IgaSgbem, 3, 8, 4), {1.29e3, 2.17e3, 3.99e3, 1.19e4}});
  tables.push_back({"C0 C", 2, "", spec_for(Method::CSgbem, 3, 8, 4), {5.47e2, 1.49e3, 4.21e3, 1.10e4}});
  ExperimentSpec matched;
  matched.method = Method::IgaSgbem;
  matched.degree = 3;
  matched.element_list = {22, 46, 94, 190};
  tables.push_back({"DoF-matched IGA", 2, "", matched, {1.63e3, 4.25e3, 1.46e4, 4.57e4}});
  tables.push_back({"DoF-matched S", 2, "", spec_for(Method::SSgbem, 3, 6, 4), {3.01e2, 1.26e3, 1.59e3, 5.29e3}});
  tables.push_back({"arc IGA", 4, "", spec_for(Method::IgaSgbem, 2, 20, 3), {1.87e2, 4.57e2, 1.01e3}});
  tables.push_back({"arc C", 4, "", spec_for(Method::CSgbem, 2, 20, 3), {2.33e2, 5.00e2, 1.04e3}});
  tables.push_back({"arc S", 4, "", spec_for(Method::SSgbem, 2, 20, 3), {1.01e3, 2.09e3, 4.27e3}});

  double worst = 1.0;
  std::string worst_label;
  for (const auto& t : tables) {
    const auto r = run_builtin(t.example, t.variant, t.spec);
    for (std::size_t i = 0; i < t.reference.size(); ++i) {
      const double ratio = r.rows[i].cond / t.reference[i];
      if (std::abs(std::log(ratio)) > std::abs(std::log(worst))) worst = ratio, worst_label = t.label;
      o.require(within_factor(r.rows[i].cond, t.reference[i], 10.0),
                t.label + " row " + std::to_string(i) + " cond " + sci(r.rows[i].cond) + " vs " + sci(t.reference[i]));
    }
  }
  o.detail << ' ' << tables.size() << " columns, worst ratio " << sci(worst) << " (" << worst_label << ");";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"arc Galerkin max error and order", criterion1},
      {"arc collocation order and conditioning", criterion2},
      {"cubic C2 splines on the smooth curve", criterion3},
      {"cubic C0 Lagrange on the smooth curve", criterion4},
      {"annular domains", criterion5},
      {"cornered curve refinement", criterion6},
      {"property suite", criterion7},
      {"condition numbers within one order", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s -%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
