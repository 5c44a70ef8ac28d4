// Command line driver for the built-in examples and problem files.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sgbem/error.hpp"
#include "sgbem/experiments.hpp"

namespace {

void print_table(const sgbem::ExperimentResult& r) {
  std::printf("%s  method=%s degree=%d\n", r.name.c_str(), sgbem::to_string(r.method), r.degree);
  std::printf("%12s %6s %12s %12s %7s %9s\n", "h", "dof", "cond", "error", "order", "seconds");
  for (const auto& row : r.rows) {
    std::printf("%12.6g %6d %12.4e %12.4e ", row.h, row.dof, row.cond, row.error);
    if (std::isnan(row.order)) std::printf("%7s", "");
    else std::printf("%7.2f", row.order);
    std::printf(" %9.3f\n", row.seconds);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D Laplace boundary element solver (symmetric Galerkin and collocation)"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a refinement study");
  run->require_subcommand(1);

  std::string method, em_sampling = "dense", l2_measure = "parameter", out_dir = ".", stem;
  int degree = 0, levels = 0, elements = 0, quad_order = 0, regularity = -1, workers = 0;
  std::vector<int> element_list;
  bool quiet = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--method", method, "iga-sgbem | c-sgbem | s-sgbem | iga-collocation");
    cmd->add_option("--degree", degree, "Polynomial degree of the unknown")->check(CLI::Range(0, 12));
    cmd->add_option("--levels", levels, "Refinement levels (elements doubled per level)")->check(CLI::PositiveNumber);
    cmd->add_option("--elements", elements, "Elements per curve on the coarsest level")->check(CLI::PositiveNumber);
    cmd->add_option("--element-list", element_list, "Explicit elements per curve for every level")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--regularity", regularity, "IGA continuity C^r at uniform breakpoints")->check(CLI::NonNegativeNumber);
    cmd->add_option("--quad-order", quad_order, "Gauss nodes per direction")->check(CLI::Range(2, 64));
    cmd->add_option("--workers", workers, "Assembly threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--em-sampling", em_sampling, "Max-norm error sampling: nodes | dense");
    cmd->add_option("--l2-measure", l2_measure, "Relative L2 error measure: parameter | arclength");
    cmd->add_option("--out", out_dir, "Output directory");
    cmd->add_option("--stem", stem, "Output file stem (default: case name and method)");
    cmd->add_flag("--quiet", quiet, "Do not print the table");
  };

  auto* example = run->add_subcommand("example", "Built-in example 1..4");
  int example_id = 0;
  std::string variant;
  example->add_option("id", example_id, "Example number")->required()->check(CLI::Range(1, 4));
  example->add_option("--variant", variant, "Example 1: t1 | t2, example 2: c2 | c1, example 3: A | B");
  add_common(example);

  auto* file = run->add_subcommand("file", "Problem file (JSON)");
  std::string path;
  file->add_option("path", path, "Problem file")->required()->check(CLI::ExistingFile);
  add_common(file);

  CLI11_PARSE(app, argc, argv);

  try {
    sgbem::ExperimentSpec spec;
    if (!method.empty()) spec.method = sgbem::parse_method(method);
    const CLI::App* active = *example ? example : file;
    if (active->count("--degree")) spec.degree = degree;
    if (levels > 0) spec.levels = levels;
    if (elements > 0) spec.elements = elements;
    spec.element_list = element_list;
    if (regularity >= 0) spec.regularity = regularity;
    if (quad_order > 0) spec.quadrature_order = quad_order;
    spec.assembly.workers = workers;
    spec.max_sampling = sgbem::parse_max_sampling(em_sampling);
    spec.l2_measure = sgbem::parse_l2_measure(l2_measure);

    const auto result = *example ? sgbem::run_builtin(example_id, variant, spec) : sgbem::run_problem(path, spec);
    if (!quiet) print_table(result);
    if (stem.empty()) stem = result.name + "_" + sgbem::to_string(result.method);
    sgbem::emit_outputs(result, out_dir, stem);
  } catch (const sgbem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
