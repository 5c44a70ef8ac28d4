#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sgbem/assembly.hpp"
#include "sgbem/error.hpp"
#include "sgbem/experiments.hpp"

using namespace sgbem;

namespace {

constexpr double kPi = std::numbers::pi;

const CircleCurve& unit_circle() {
  static const CircleCurve c(Vec2(0, 0), 1.0);
  return c;
}

BvpProblem arc_problem(std::function<double(double)> density) {
  auto c = builtin_case(4);
  c.curves[0].piece.density = std::move(density);
  return c.problem();
}

}  // namespace

TEST_CASE("circle Fourier oracle for V and D") {
  const auto& c = unit_circle();
  const auto space = build_lagrange_space(induced_mesh(c, 32), 6, {});
  AssemblyOptions opt;
  opt.quadrature.order = 12;
  const auto v = assemble_block(KernelKind::SingleLayer, c, space, c, space, opt);
  const auto d = assemble_block(KernelKind::Hypersingular, c, space, c, space, opt);
  for (int n = 1; n <= 3; ++n) {
    for (auto basis : {+[](double t, int k) { return std::cos(k * t); }, +[](double t, int k) { return std::sin(k * t); }}) {
      const auto x = space.interpolate([&](double t) { return basis(t, n); });
      // <V cos n., cos n.> = pi / (2n), <D cos n., cos n.> = -n pi / 2
      CHECK(std::abs(x.dot(v * x) / (kPi / (2 * n)) - 1.0) <= 1e-6);
      CHECK(std::abs(x.dot(d * x) / (-n * kPi / 2) - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("V annihilates constants on the unit circle") {
  BSplineSpaceOptions o;
  o.degree = 2;
  o.elements = 12;
  const auto s = build_bspline_space(unit_circle(), o);
  const auto v = assemble_block(KernelKind::SingleLayer, unit_circle(), s, unit_circle(), s);
  CHECK((v * Eigen::VectorXd::Ones(s.dof_count())).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("D annihilates constants on a closed curve") {
  const auto c = builtin_case(2);
  const auto& g = *c.curves[0].piece.geometry;
  BSplineSpaceOptions o;
  o.degree = 3;
  o.elements = 16;
  const auto s = build_bspline_space(g, o);
  const auto d = assemble_block(KernelKind::Hypersingular, g, s, g, s);
  CHECK((d * Eigen::VectorXd::Ones(s.dof_count())).cwiseAbs().maxCoeff() <= 1e-8 * d.cwiseAbs().maxCoeff());
}

TEST_CASE("blocks are symmetric and K' is the transpose of K") {
  const auto c = builtin_case(2);
  const auto& g = *c.curves[0].piece.geometry;
  BSplineSpaceOptions o;
  o.degree = 3;
  o.elements = 8;
  const auto s = build_bspline_space(g, o);
  const auto l = build_lagrange_space(induced_mesh(g, 8), 2, {});
  AssemblyOptions full;
  full.exploit_symmetry = false;
  for (auto kind : {KernelKind::SingleLayer, KernelKind::Hypersingular}) {
    const auto b = assemble_block(kind, g, s, g, s, full);
    CHECK((b - b.transpose()).norm() <= 1e-12 * b.norm());
  }
  const auto k = assemble_block(KernelKind::DoubleLayer, g, s, g, l);
  const auto kp = assemble_block(KernelKind::AdjointDoubleLayer, g, l, g, s);
  CHECK((k - kp.transpose()).norm() <= 1e-10 * k.norm());
}

TEST_CASE("assembled systems") {
  const auto c3 = builtin_case(3, "A");
  const auto p3 = c3.problem();
  const auto d3 = discretize(c3, p3, {Method::IgaSgbem, 3, 6, {}, true});
  AssemblyOptions full;
  full.exploit_symmetry = false;
  for (const auto& opt : {AssemblyOptions{}, full}) {
    const auto sys = assemble_system(p3, d3, opt);
    CHECK(sys.matrix.rows() == 16);
    CHECK((sys.matrix - sys.matrix.transpose()).norm() <= 1e-12 * sys.matrix.norm());
  }
  const auto c4 = builtin_case(4);
  const auto p4 = c4.problem();
  const auto sys4 = assemble_system(p4, discretize(c4, p4, {Method::IgaSgbem, 2, 20, {}, true}));
  CHECK(sys4.matrix.rows() == 22);
  CHECK(spectral_condition(sys4.matrix) == doctest::Approx(1.87e2).epsilon(0.01));
}

TEST_CASE("Galerkin and collocation recover a density in the space") {
  const auto density = [](double t) { return 1.0 + t - 0.5 * t * t; };
  const auto p = arc_problem(density);
  const auto c = builtin_case(4);
  const auto d = discretize(c, p, {Method::IgaSgbem, 2, 8, {}, true});
  const auto& s = d.parts[0].space;
  const auto exact = s.interpolate(density);
  const auto g = assemble_system(p, d);
  CHECK((solve_symmetric(g.matrix, g.rhs) - exact).cwiseAbs().maxCoeff() <= 1e-9);
  const auto col = assemble_collocation(p, d);
  CHECK((solve_general(col.matrix, col.rhs) - exact).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("collocation matrix of the arc") {
  const auto c = builtin_case(4);
  const auto p = c.problem();
  const auto col = assemble_collocation(p, discretize(c, p, {Method::IgaCollocation, 2, 10, {}, true}));
  CHECK(col.matrix.rows() == 12);
  CHECK(col.points.front() == -1.0);
  CHECK(col.points.back() == 1.0);
  CHECK(singular_value_condition(col.matrix) == doctest::Approx(17.3).epsilon(0.01));
}

TEST_CASE("collocation is refused at corners") {
  const auto c = builtin_case(1, "t1");
  const auto p = c.problem();
  CHECK_THROWS_AS(assemble_collocation(p, discretize(c, p, {Method::IgaCollocation, 2, 9, {}, true})), DomainError);
}

TEST_CASE("dense solvers") {
  Eigen::MatrixXd one(1, 1);
  one << 2.0;
  Eigen::VectorXd four(1);
  four << 4.0;
  CHECK(solve_symmetric(one, four)(0) == doctest::Approx(2.0));
  std::mt19937 rng(8);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd a(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) a(i, j) = n01(rng);
  const Eigen::MatrixXd spd = a.transpose() * a + Eigen::MatrixXd::Identity(50, 50);
  Eigen::VectorXd b(50);
  for (int i = 0; i < 50; ++i) b(i) = n01(rng);
  const auto x = solve_symmetric(spd, b);
  CHECK((spd * x - b).norm() <= 1e-12 * b.norm() * spd.norm());
  const auto y = solve_general(a, b);
  CHECK((a * y - b).norm() <= 1e-10 * b.norm());
  CHECK_THROWS_AS(solve_symmetric(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Ones(3)), SolveError);
}

TEST_CASE("condition numbers") {
  CHECK(spectral_condition(Eigen::MatrixXd::Identity(4, 4)) == doctest::Approx(1.0));
  const Eigen::MatrixXd d = Eigen::Vector3d(10, 1, 0.1).asDiagonal();
  CHECK(spectral_condition(d) == doctest::Approx(100.0));
  CHECK(singular_value_condition(d) == doctest::Approx(100.0));
  const Eigen::MatrixXd indefinite = Eigen::Vector3d(-10, 1, 0.1).asDiagonal();
  CHECK(spectral_condition(indefinite) == doctest::Approx(100.0));
}

TEST_CASE("panel nodes and load vectors") {
  const auto c = builtin_case(1, "t1");
  const auto& g = *c.curves[0].piece.geometry;
  const auto s = build_lagrange_space(induced_mesh(g, 2), 1, {});
  const auto nodes = panel_nodes(g, {&s});
  CHECK(nodes.size() == 11);
  CHECK(std::is_sorted(nodes.begin(), nodes.end()));
  const auto circle_nodes = panel_nodes(unit_circle(), {});
  CHECK(circle_nodes.size() >= 5);
  BSplineSpaceOptions o;
  o.elements = 6;
  const auto b = build_bspline_space(unit_circle(), o);
  CHECK(load_vector(unit_circle(), b, [](double) { return 1.0; }).sum() == doctest::Approx(2 * kPi).epsilon(1e-13));
}
