#pragma once

// Built-in examples, problem files and the refinement driver.

#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgbem/assembly.hpp"
#include "sgbem/postprocess.hpp"
#include "sgbem/problem.hpp"

namespace sgbem {

enum class Method { IgaSgbem, CSgbem, SSgbem, IgaCollocation };

const char* to_string(Method m);
Method parse_method(const std::string& name);

enum class ErrorKind { RelativeL2, Max };

/// Where max-norm errors are sampled: mesh nodes (element endpoints) or 32
/// interior points per element.
enum class MaxSampling { Nodes, Dense };

const char* to_string(MaxSampling s);
MaxSampling parse_max_sampling(const std::string& name);

const char* to_string(L2Measure m);
L2Measure parse_l2_measure(const std::string& name);

struct CaseCurve {
  BoundaryPiece piece;
  std::function<double(double)> exact;         // exact unknown (q or u), may be empty
  std::vector<double> jumps;                   // C-SGBEM: nodes where the unknown may jump
  bool closure_continuous = true;              // continuity at the closure point of closed curves
  std::vector<std::pair<double, int>> multiplicity_overrides;  // IGA
};

/// A problem together with its reference discretization settings.
struct Case {
  std::string name;
  std::vector<CaseCurve> curves;
  ErrorKind error = ErrorKind::RelativeL2;
  int degree = 2;
  int elements = 1;  // per curve, coarsest level
  int levels = 1;
  Method method = Method::IgaSgbem;
  std::optional<int> quadrature_order;

  BvpProblem problem() const;
};

/// Built-in examples 1..4. variant: example 1 "t1" | "t2", example 2 "c2" | "c1",
/// example 3 "A" | "B".
Case builtin_case(int example, const std::string& variant = "");

/// Problem file (JSON, see README). Throws ValidationError with the offending
/// field path.
Case load_case(const std::filesystem::path& path);
Case parse_case(const nlohmann::json& doc);

struct LevelSettings {
  Method method = Method::IgaSgbem;
  int degree = 2;
  int elements = 1;
  std::optional<int> regularity;  // IGA: C^r at uniform breakpoints
  bool include_geometry_knots = true;
};

Discretization discretize(const Case& c, const BvpProblem& problem, const LevelSettings& s);

struct ExperimentSpec {
  std::optional<Method> method;
  std::optional<int> degree;
  std::optional<int> levels;
  std::optional<int> elements;            // coarsest elements per curve
  std::vector<int> element_list;          // explicit elements per level (overrides elements/levels)
  std::optional<int> regularity;
  bool include_geometry_knots = true;
  MaxSampling max_sampling = MaxSampling::Dense;
  L2Measure l2_measure = L2Measure::Parameter;
  std::optional<int> quadrature_order;  // overrides the case setting and assembly.quadrature.order
  AssemblyOptions assembly;
};

struct ResultRow {
  double h = 0.0;
  int dof = 0;
  double cond = 0.0;
  double error = 0.0;
  double order = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  double error_nodes = std::numeric_limits<double>::quiet_NaN();  // max-norm variants
  double error_dense = std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, double> part_errors;
};

struct ExperimentResult {
  std::string name;
  Method method = Method::IgaSgbem;
  int degree = 0;
  ErrorKind error = ErrorKind::RelativeL2;
  MaxSampling max_sampling = MaxSampling::Dense;
  L2Measure l2_measure = L2Measure::Parameter;
  int quadrature_order = 0;
  std::vector<ResultRow> rows;
};

/// One row per refinement level (elements doubled per level). Errors are NaN
/// when the exact solution is unknown.
ExperimentResult run_case(const Case& c, const ExperimentSpec& spec);

ExperimentResult run_builtin(int example, const std::string& variant, const ExperimentSpec& spec);
ExperimentResult run_problem(const std::filesystem::path& path, const ExperimentSpec& spec);

/// Writes <stem>.csv (h,dof,cond,error,order,seconds), <stem>_plot.dat
/// (method dof error) and <stem>_meta.json into dir.
void emit_outputs(const ExperimentResult& result, const std::filesystem::path& dir, const std::string& stem);

std::string csv_table(const ExperimentResult& result);
std::vector<ResultRow> parse_csv_table(const std::string& text);
nlohmann::json metadata(const ExperimentResult& result);

}  // namespace sgbem
