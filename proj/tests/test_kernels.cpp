#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sgbem/error.hpp"
#include "sgbem/kernels.hpp"

using namespace sgbem;

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 on_circle(double a) { return Vec2(std::cos(a), std::sin(a)); }

}  // namespace

TEST_CASE("fundamental solution values") {
  CHECK(fundamental_solution(Vec2(0, 0), Vec2(1, 0)) == 0.0);
  CHECK(fundamental_solution(Vec2(1, 1), Vec2(1, 1 + std::exp(1.0))) == doctest::Approx(-1 / (2 * kPi)));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const Vec2 x(u(rng), u(rng)), y(u(rng), u(rng));
    CHECK(fundamental_solution(x, y) == fundamental_solution(y, x));
  }
}

TEST_CASE("double layer on the unit circle is constant") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng), b = u(rng);
    if (std::abs(std::remainder(a - b, 2 * kPi)) < 1e-6) continue;
    CHECK(double_layer_kernel(on_circle(a), on_circle(b), on_circle(b)) ==
          doctest::Approx(-1 / (4 * kPi)).epsilon(1e-13));
  }
}

TEST_CASE("double layer vanishes for tangential normals") {
  CHECK(double_layer_kernel(Vec2(0, 0), Vec2(2, 0), Vec2(0, 1)) == 0.0);
  CHECK(adjoint_double_layer_kernel(Vec2(0, 0), Vec2(2, 0), Vec2(0, 1)) == 0.0);
}

TEST_CASE("double layer reciprocity") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 50; ++i) {
    const Vec2 x(u(rng), u(rng)), y(u(rng), u(rng)), n = Vec2(u(rng), u(rng)).normalized();
    CHECK(double_layer_kernel(x, y, n) == doctest::Approx(adjoint_double_layer_kernel(y, x, n)).epsilon(1e-14));
  }
}

TEST_CASE("coincident limit of the double layer") {
  const CircleCurve circle(Vec2(0, 0), 1.0);
  CHECK(coincident_limit_double_layer(circle, 1.0) == doctest::Approx(-1 / (4 * kPi)).epsilon(1e-14));
  Eigen::MatrixX2d q(2, 2);
  q << 0, 0, 1, 0;
  const BoundaryCurve seg(KnotVector(2, {0, 0, 1, 1}), q, false);
  CHECK(coincident_limit_double_layer(seg, 0.5) == 0.0);
}

TEST_CASE("near-coincident double layer converges to the limit") {
  Eigen::MatrixX2d q(3, 2);
  q << -1, 0, 0, 2, 1, 0;
  const BoundaryCurve arc(KnotVector(3, {-1, -1, -1, 1, 1, 1}), q, false);
  const double t = 0.3, limit = coincident_limit_double_layer(arc, t);
  double prev = 0.0;
  for (double d : {1e-2, 5e-3, 2.5e-3}) {
    const Frame fy = frame(arc, t + d);
    const double err = std::abs(double_layer_kernel(arc.point(t), fy.point, fy.normal) - limit);
    if (prev > 0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("kernel names") {
  CHECK(std::string(to_string(KernelKind::Hypersingular)) == "D");
}
