#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sgbem/error.hpp"
#include "sgbem/experiments.hpp"

using namespace sgbem;
using nlohmann::json;

namespace {

ExperimentSpec quick(std::optional<Method> m = {}) {
  ExperimentSpec s;
  s.method = m;
  s.quadrature_order = 8;
  return s;
}

std::vector<int> dof_column(const ExperimentResult& r) {
  std::vector<int> d;
  for (const auto& row : r.rows) d.push_back(row.dof);
  return d;
}

json circle_problem() {
  return json::parse(R"({
    "name": "circle",
    "solution": "linear:0,1,0",
    "curves": [{"name": "c", "type": "circle", "center": [0, 0], "radius": 0.5}],
    "bc": [{"curve": "c", "type": "dirichlet"}],
    "degree": 2,
    "refinement": {"elements": 4, "levels": 4}
  })");
}

std::string rejection(const json& doc) {
  try {
    parse_case(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("example 1 refinement rows") {
  const auto r = run_builtin(1, "t2", quick());
  CHECK(dof_column(r) == std::vector<int>{15, 24, 42, 78});
  CHECK(r.rows[0].h == 1.0);
  CHECK(r.rows[3].h == 0.125);
  CHECK(std::isnan(r.rows[0].order));
  CHECK_FALSE(std::isnan(r.rows[1].order));
}

TEST_CASE("example 2 Lagrange space on the coarsest mesh") {
  auto spec = quick(Method::CSgbem);
  spec.levels = 1;
  const auto r = run_builtin(2, "", spec);
  CHECK(r.rows[0].dof == 24);
  CHECK(r.rows[0].error > 4.69e-2 / 2);
  CHECK(r.rows[0].error < 4.69e-2 * 2);
}

TEST_CASE("example 4 collocation orders approach three") {
  const auto r = run_builtin(4, "", quick(Method::IgaCollocation));
  REQUIRE(r.rows.size() == 5);
  CHECK(r.rows.back().order == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("DoF-matched comparison") {
  auto iga = quick(Method::IgaSgbem);
  iga.element_list = {22, 46, 94, 190};
  auto lag = quick(Method::CSgbem);
  auto poly = quick(Method::SSgbem);
  poly.elements = 6;
  const std::vector<int> expected = {24, 48, 96, 192};
  for (const auto& spec : {iga, lag, poly}) CHECK(dof_column(run_builtin(2, "", spec)) == expected);
}

TEST_CASE("problem file matches the built-in case") {
  const auto file = run_problem(std::filesystem::path(SGBEM_DATA_DIR) / "example3_domainA.json", quick());
  const auto builtin = run_builtin(3, "A", quick());
  REQUIRE(file.rows.size() == builtin.rows.size());
  CHECK(file.rows[0].dof == 16);
  CHECK(file.rows[0].dof == builtin.rows[0].dof);
  CHECK(file.rows[0].cond == doctest::Approx(builtin.rows[0].cond).epsilon(1e-12));
  CHECK(std::abs(file.rows[0].error - builtin.rows[0].error) <= 1e-12);
}

TEST_CASE("circle problem converges at the spline order") {
  const auto r = run_case(parse_case(circle_problem()), quick());
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows.back().order > 2.5);
  CHECK(r.rows.back().error < 1e-3);
}

TEST_CASE("problem file diagnostics") {
  auto doc = circle_problem();
  doc["curves"][0] = json::parse(R"({"name": "c", "degree": 2, "knots": [0, 0, 0, 2, 1, 1, 1],
                                     "control_points": [[0, 0], [1, 0], [1, 1], [0, 1]], "closed": false})");
  CHECK(rejection(doc).find("curves[0].knots") != std::string::npos);

  doc = circle_problem();
  doc["bc"][0]["curve"] = "missing";
  CHECK(rejection(doc).find("bc[0].curve") != std::string::npos);

  doc = circle_problem();
  doc["bc"][0]["data"] = "linear:1,2";
  CHECK(rejection(doc).find("bc[0].data") != std::string::npos);

  doc = circle_problem();
  doc["bc"][0]["type"] = "robin";
  CHECK(rejection(doc).find("bc[0].type") != std::string::npos);

  doc = circle_problem();
  doc["curves"][0].erase("radius");
  CHECK(rejection(doc).find("radius") != std::string::npos);

  doc = circle_problem();
  doc["bc"][0]["type"] = "neumann";
  CHECK_FALSE(rejection(doc).empty());

  CHECK_THROWS_AS(load_case("/nonexistent/problem.json"), ValidationError);
  CHECK_THROWS_AS(builtin_case(5), ValidationError);
  CHECK_THROWS_AS(builtin_case(1, "t3"), ValidationError);
  CHECK_THROWS_AS(parse_method("bem"), ValidationError);
  CHECK(parse_method("s-sgbem") == Method::SSgbem);
}

TEST_CASE("unknown exact solutions leave the error empty") {
  auto doc = circle_problem();
  doc.erase("solution");
  doc["bc"][0]["data"] = "const:1";
  doc["curves"].push_back(json::parse(R"({"name": "d", "type": "circle", "center": [3, 0], "radius": 0.5})"));
  doc["bc"].push_back(json::parse(R"({"curve": "d", "type": "dirichlet", "data": "const:2"})"));
  auto spec = quick();
  spec.levels = 1;
  const auto r = run_case(parse_case(doc), spec);
  CHECK(std::isnan(r.rows[0].error));
}

TEST_CASE("outputs") {
  auto spec = quick(Method::IgaCollocation);
  spec.levels = 3;
  const auto r = run_builtin(4, "", spec);
  const auto csv = csv_table(r);
  CHECK(csv.rfind("h,dof,cond,error,order,seconds\n", 0) == 0);
  CHECK(csv.find(",,") != std::string::npos);
  const auto rows = parse_csv_table(csv);
  REQUIRE(rows.size() == r.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].h == r.rows[i].h);
    CHECK(rows[i].dof == r.rows[i].dof);
    CHECK(rows[i].cond == r.rows[i].cond);
    CHECK(rows[i].error == r.rows[i].error);
    CHECK(std::isnan(rows[i].order) == std::isnan(r.rows[i].order));
    if (!std::isnan(rows[i].order)) CHECK(rows[i].order == r.rows[i].order);
  }
  const auto dir = std::filesystem::temp_directory_path() / "sgbem_test_outputs";
  std::filesystem::remove_all(dir);
  emit_outputs(r, dir, "run");
  CHECK(std::filesystem::exists(dir / "run.csv"));
  CHECK(std::filesystem::exists(dir / "run_plot.dat"));
  std::ifstream meta(dir / "run_meta.json");
  const auto m = json::parse(meta);
  CHECK(m["method"] == "iga-collocation");
  CHECK(m["max_sampling"] == "dense");
  CHECK(m["rows"].size() == 3);
  CHECK(m["rows"][0]["order"].is_null());
  ExperimentResult empty;
  CHECK_THROWS_AS(emit_outputs(empty, dir, "empty"), ValidationError);
  CHECK_THROWS_AS(parse_csv_table("a,b\n"), ValidationError);
  std::filesystem::remove_all(dir);
}
