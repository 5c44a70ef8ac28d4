#include "doctest.h"
#include "sgbem/error.hpp"
#include "sgbem/experiments.hpp"
#include "sgbem/problem.hpp"

using namespace sgbem;

namespace {

std::shared_ptr<const Geometry> unit_circle() { return std::make_shared<CircleCurve>(Vec2(0, 0), 1.0); }

std::shared_ptr<const Geometry> parabola() { return builtin_case(4).curves[0].piece.geometry; }

}  // namespace

TEST_CASE("traces of harmonic fields") {
  const auto g = unit_circle();
  const auto f = linear_field(2.0, 1.0, -3.0);
  const auto u = dirichlet_trace(g, f);
  const auto q = neumann_trace(g, f);
  const double t = 0.7;
  CHECK(u.value(t) == doctest::Approx(2 + std::cos(t) - 3 * std::sin(t)));
  CHECK(u.derivative(t) == doctest::Approx(-std::sin(t) - 3 * std::cos(t)));
  CHECK(q.value(t) == doctest::Approx(std::cos(t) - 3 * std::sin(t)));
  const auto h = harmonic_polynomial({0, 0, 1}, {});  // Re z^2 = x^2 - y^2
  CHECK(h.value(Vec2(2, 1)) == doctest::Approx(3.0));
  CHECK((h.gradient(Vec2(2, 1)) - Vec2(4, -2)).norm() <= 1e-14);
}

TEST_CASE("problem validation") {
  BoundaryPiece closed{"c", unit_circle(), BcType::Dirichlet, dirichlet_trace(unit_circle(), constant_field(1)), {}};
  BoundaryPiece arc{"a", parabola(), BcType::Dirichlet, {}, [](double) { return 1.0; }};
  CHECK_NOTHROW(BvpProblem{{closed}}.validate());
  CHECK_NOTHROW(BvpProblem{{arc}}.validate());
  CHECK(BvpProblem{{arc}}.arcs());
  CHECK_THROWS_AS(BvpProblem{}.validate(), ValidationError);
  CHECK_THROWS_AS((BvpProblem{{closed, arc}}.validate()), Unsupported);

  auto neumann_only = closed;
  neumann_only.bc = BcType::Neumann;
  CHECK_THROWS_AS(BvpProblem{{neumann_only}}.validate(), ValidationError);

  auto neumann_arc = arc;
  neumann_arc.bc = BcType::Neumann;
  CHECK_THROWS_AS(BvpProblem{{neumann_arc}}.validate(), Unsupported);

  auto closed_density = closed;
  closed_density.density = [](double) { return 1.0; };
  CHECK_THROWS_AS(BvpProblem{{closed_density}}.validate(), Unsupported);

  auto missing = closed;
  missing.datum = {};
  CHECK_THROWS_AS(BvpProblem{{missing}}.validate(), ValidationError);

  auto touching = closed;
  touching.name = "d";
  touching.geometry = std::make_shared<CircleCurve>(Vec2(2, 0), 1.0);
  touching.datum = dirichlet_trace(touching.geometry, constant_field(1));
  CHECK_THROWS_AS((BvpProblem{{closed, touching}}.validate()), Unsupported);
}

TEST_CASE("discretization offsets") {
  const Case c = builtin_case(3, "A");
  const auto p = c.problem();
  const auto d = discretize(c, p, {Method::IgaSgbem, 3, 6, {}, true});
  REQUIRE(d.parts.size() == 2);
  CHECK(d.offset(0) == 0);
  CHECK(d.offset(1) == 8);
  CHECK(d.size() == 16);
}
