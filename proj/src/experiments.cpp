#include "sgbem/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sgbem/error.hpp"
#include "sgbem/postprocess.hpp"

namespace sgbem {

using nlohmann::json;

const char* to_string(Method m) {
  switch (m) {
    case Method::IgaSgbem: return "iga-sgbem";
    case Method::CSgbem: return "c-sgbem";
    case Method::SSgbem: return "s-sgbem";
    case Method::IgaCollocation: return "iga-collocation";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::IgaSgbem, Method::CSgbem, Method::SSgbem, Method::IgaCollocation})
    if (name == to_string(m)) return m;
  throw ValidationError("unknown method '" + name + "' (iga-sgbem, c-sgbem, s-sgbem, iga-collocation)");
}

const char* to_string(MaxSampling s) { return s == MaxSampling::Nodes ? "nodes" : "dense"; }

MaxSampling parse_max_sampling(const std::string& name) {
  if (name == "nodes") return MaxSampling::Nodes;
  if (name == "dense") return MaxSampling::Dense;
  throw ValidationError("unknown max-error sampling '" + name + "' (nodes, dense)");
}

const char* to_string(L2Measure m) { return m == L2Measure::Parameter ? "parameter" : "arclength"; }

L2Measure parse_l2_measure(const std::string& name) {
  if (name == "parameter") return L2Measure::Parameter;
  if (name == "arclength") return L2Measure::Arclength;
  throw ValidationError("unknown L2 measure '" + name + "' (parameter, arclength)");
}

namespace {

constexpr int kDenseSamples = 32;

std::shared_ptr<BoundaryCurve> make_curve(int order, std::vector<double> knots, const std::vector<double>& x,
                                          const std::vector<double>& y, bool closed, int sign = 1) {
  Eigen::MatrixX2d q(x.size(), 2);
  for (std::size_t i = 0; i < x.size(); ++i) q.row(i) << x[i], y[i];
  return std::make_shared<BoundaryCurve>(KnotVector(order, std::move(knots)), q, closed, sign);
}

// Outward sign of an outer boundary (true) or a hole (false).
std::shared_ptr<BoundaryCurve> oriented(const std::shared_ptr<BoundaryCurve>& c, bool outer) {
  const bool ccw = orientation(*c) == Orientation::CounterClockwise;
  return std::make_shared<BoundaryCurve>(c->with_outward_sign(ccw == outer ? 1 : -1));
}

CaseCurve dirichlet_curve(std::string name, std::shared_ptr<const Geometry> g, const HarmonicField& f) {
  CaseCurve c;
  c.piece.name = std::move(name);
  c.piece.geometry = g;
  c.piece.bc = BcType::Dirichlet;
  c.piece.datum = dirichlet_trace(g, f);
  c.exact = neumann_trace(g, f).value;
  return c;
}

CaseCurve neumann_curve(std::string name, std::shared_ptr<const Geometry> g, const HarmonicField& f) {
  CaseCurve c;
  c.piece.name = std::move(name);
  c.piece.geometry = g;
  c.piece.bc = BcType::Neumann;
  c.piece.datum = neumann_trace(g, f);
  c.exact = dirichlet_trace(g, f).value;
  return c;
}

// Jump of the flux across an arc equal to the parametric speed |C'(t)|.
std::function<double(double)> speed_density(std::shared_ptr<const Geometry> g) {
  return [g](double t) { return g->eval(t).derivative.norm(); };
}

Case example1(const std::string& variant) {
  const std::string v = variant.empty() ? "t1" : variant;
  if (v != "t1" && v != "t2") throw ValidationError("example 1 variant must be t1 or t2");
  auto curve = make_curve(3, {0, 0, 0, 1, 1, 2, 3, 4, 5, 6, 7, 8, 8, 9, 9, 9},
                          {0, 0.5, 1, 1, 0, -1, -1, -1, 0, 1, 1, 0.5, 0},
                          {0, 0.125, 0.25, 1, 1, 1, 0, -1, -1, -1, -0.25, -0.125, 0}, true);
  curve = oriented(curve, true);
  Case c;
  c.name = "example1-" + v;
  auto cc = dirichlet_curve("boundary", curve, linear_field(0.0, -1.0, -1.0));
  cc.jumps = {1.0, 8.0};
  cc.closure_continuous = false;
  if (v == "t2") cc.multiplicity_overrides = {{1.0, 3}, {8.0, 3}};
  c.curves.push_back(std::move(cc));
  c.error = ErrorKind::RelativeL2;
  c.degree = 2;
  c.elements = 9;
  c.levels = 4;
  return c;
}

Case example2(const std::string& variant) {
  const std::string v = variant.empty() ? "c2" : variant;
  if (v != "c2" && v != "c1") throw ValidationError("example 2 variant must be c2 or c1");
  auto curve = make_curve(4, {0, 0, 0, 0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1, 1, 1, 1},
                          {-16, -22, -1, 2, 29, 1, 32, 12, 4, -10, -16},
                          {11.5, 6.5, 2, -15, -8, -4, 17, 19, 1, 16.5, 11.5}, true);
  curve = oriented(curve, true);
  Case c;
  c.name = v == "c2" ? "example2" : "example2-c1";
  auto cc = dirichlet_curve("boundary", curve, linear_field(0.0, -1.0, -1.0));
  // C1 only at the interior breakpoints of the curve.
  if (v == "c1")
    for (int i = 1; i < 8; ++i) cc.multiplicity_overrides.emplace_back(i / 8.0, 2);
  c.curves.push_back(std::move(cc));
  c.error = ErrorKind::RelativeL2;
  c.degree = 3;
  c.elements = 8;
  c.levels = 4;
  return c;
}

Case example3(const std::string& variant) {
  const std::string v = variant.empty() ? "A" : variant;
  if (v != "A" && v != "B") throw ValidationError("example 3 variant must be A or B");
  const std::vector<double> ox = {1, 1, 0, -1, -1, -1, 0, 1, 1};
  const std::vector<double> oy = {0, 1, 1, 1, 0, -1, -1, -1, 0};
  std::vector<double> knots, ix, iy;
  int order;
  if (v == "A") {
    order = 4;
    knots = {0, 0, 0, 0, 1.0 / 6, 2.0 / 6, 3.0 / 6, 4.0 / 6, 5.0 / 6, 1, 1, 1, 1};
    ix = {0.25, 0.25, -0.25, -0.75, -0.75, -0.75, -0.25, 0.25, 0.25};
    iy = {0.25, -0.25, -0.25, -0.25, 0.25, 0.75, 0.75, 0.75, 0.25};
  } else {
    order = 5;
    knots = {0, 0, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1, 1};
    ix = {-0.25, -0.25, -0.5, -0.75, -0.75, -0.75, -0.5, -0.25, -0.25};
    iy = {0.5, 0.25, 0.25, 0.25, 0.5, 0.75, 0.75, 0.75, 0.5};
  }
  auto outer = oriented(make_curve(order, knots, ox, oy, true), true);
  auto inner = oriented(make_curve(order, knots, ix, iy, true), false);
  Case c;
  c.name = "example3-" + v;
  const auto one = constant_field(1.0);
  c.curves.push_back(neumann_curve("outer", outer, one));
  c.curves.push_back(dirichlet_curve("inner", inner, one));
  c.error = ErrorKind::Max;
  c.degree = order - 1;
  c.elements = v == "A" ? 6 : 5;
  c.levels = 1;
  return c;
}

Case example4() {
  auto arc = make_curve(3, {-1, -1, -1, 1, 1, 1}, {-1, 0, 1}, {0, 2, 0}, false);
  Case c;
  c.name = "example4";
  CaseCurve cc;
  cc.piece.name = "arc";
  cc.piece.geometry = arc;
  cc.piece.bc = BcType::Dirichlet;
  cc.piece.density = speed_density(arc);
  cc.exact = cc.piece.density;
  c.curves.push_back(std::move(cc));
  c.error = ErrorKind::Max;
  c.degree = 2;
  c.elements = 10;
  c.levels = 5;
  return c;
}

// --- problem files ---------------------------------------------------------

struct FieldError : ValidationError {
  using ValidationError::ValidationError;
};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw FieldError(path + ": " + what);
}

std::vector<double> split_numbers(const std::string& text, char sep, const std::string& path) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(path, "'" + item + "' is not a number");
    }
  }
  return out;
}

HarmonicField parse_field(const std::string& text, const std::string& path) {
  if (text == "neg_sum") return linear_field(0.0, -1.0, -1.0);
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "const") {
    const auto v = split_numbers(args, ',', path);
    if (v.size() != 1) fail(path, "const needs one value");
    return constant_field(v[0]);
  }
  if (kind == "linear") {
    const auto v = split_numbers(args, ',', path);
    if (v.size() != 3) fail(path, "linear needs c0,c1,c2");
    return linear_field(v[0], v[1], v[2]);
  }
  if (kind == "harmonic") {
    const auto semi = args.find(';');
    auto re = split_numbers(args.substr(0, semi), ',', path);
    std::vector<double> im;
    if (semi != std::string::npos) im = split_numbers(args.substr(semi + 1), ',', path);
    return harmonic_polynomial(re, im);
  }
  fail(path, "unknown field '" + text + "' (neg_sum, const:v, linear:c0,c1,c2, harmonic:a0,a1,..;b0,b1,..)");
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) fail(path, "missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(path + "." + key, std::string("wrong type: ") + e.what());
  }
}

std::shared_ptr<Geometry> parse_curve(const json& j, const std::string& path) {
  const auto type = j.value("type", std::string("bspline"));
  const int sign = j.value("outward_sign", 1);
  try {
    if (type == "circle") {
      const auto center = get<std::vector<double>>(j, "center", path);
      if (center.size() != 2) fail(path + ".center", "expected [x, y]");
      return std::make_shared<CircleCurve>(Vec2(center[0], center[1]), get<double>(j, "radius", path), sign);
    }
    if (type != "bspline") fail(path + ".type", "unknown curve type '" + type + "'");
    const int degree = get<int>(j, "degree", path);
    auto knots = get<std::vector<double>>(j, "knots", path);
    const auto cps = get<std::vector<std::vector<double>>>(j, "control_points", path);
    Eigen::MatrixX2d q(cps.size(), 2);
    for (std::size_t i = 0; i < cps.size(); ++i) {
      if (cps[i].size() != 2) fail(path + ".control_points[" + std::to_string(i) + "]", "expected [x, y]");
      q.row(i) << cps[i][0], cps[i][1];
    }
    KnotVector kv = [&] {
      try {
        return KnotVector(degree + 1, std::move(knots));
      } catch (const ValidationError& e) {
        fail(path + ".knots", e.what());
      }
    }();
    return std::make_shared<BoundaryCurve>(std::move(kv), q, get<bool>(j, "closed", path), sign);
  } catch (const FieldError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

}  // namespace

BvpProblem Case::problem() const {
  BvpProblem p;
  for (const auto& c : curves) p.pieces.push_back(c.piece);
  return p;
}

Case builtin_case(int example, const std::string& variant) {
  switch (example) {
    case 1: return example1(variant);
    case 2: return example2(variant);
    case 3: return example3(variant);
    case 4:
      if (!variant.empty()) throw ValidationError("example 4 has no variants");
      return example4();
  }
  throw ValidationError("unknown example " + std::to_string(example) + " (1..4)");
}

Case parse_case(const json& doc) {
  if (!doc.is_object()) fail("$", "expected an object");
  Case c;
  c.name = doc.value("name", std::string("problem"));
  if (!doc.contains("curves") || !doc["curves"].is_array() || doc["curves"].empty())
    fail("curves", "expected a non-empty array");
  std::map<std::string, std::shared_ptr<Geometry>> geometry;
  std::map<std::string, json> curve_json;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < doc["curves"].size(); ++i) {
    const auto& j = doc["curves"][i];
    const std::string path = "curves[" + std::to_string(i) + "]";
    const auto name = j.value("name", "curve" + std::to_string(i));
    if (geometry.count(name)) fail(path + ".name", "duplicate curve name '" + name + "'");
    geometry[name] = parse_curve(j, path);
    curve_json[name] = j;
    order.push_back(name);
  }
  std::optional<HarmonicField> solution;
  if (doc.contains("solution")) solution = parse_field(get<std::string>(doc, "solution", "$"), "solution");

  if (!doc.contains("bc") || !doc["bc"].is_array()) fail("bc", "expected an array");
  std::map<std::string, bool> assigned;
  for (std::size_t i = 0; i < doc["bc"].size(); ++i) {
    const auto& j = doc["bc"][i];
    const std::string path = "bc[" + std::to_string(i) + "]";
    const auto name = get<std::string>(j, "curve", path);
    if (!geometry.count(name)) fail(path + ".curve", "unknown curve '" + name + "'");
    if (assigned[name]) fail(path + ".curve", "curve '" + name + "' has two conditions");
    assigned[name] = true;
    const auto type = get<std::string>(j, "type", path);
    auto g = geometry[name];
    CaseCurve cc;
    if (j.contains("density")) {
      const auto d = get<std::string>(j, "density", path);
      if (d != "speed") fail(path + ".density", "unknown density '" + d + "' (speed)");
      if (type != "dirichlet") fail(path + ".density", "densities define Dirichlet data");
      cc.piece.name = name;
      cc.piece.geometry = g;
      cc.piece.bc = BcType::Dirichlet;
      cc.piece.density = speed_density(g);
      cc.exact = cc.piece.density;
    } else {
      HarmonicField f;
      if (j.contains("data")) f = parse_field(get<std::string>(j, "data", path), path + ".data");
      else if (solution) f = *solution;
      else fail(path, "missing 'data' and no global 'solution'");
      if (type == "dirichlet") cc = dirichlet_curve(name, g, f);
      else if (type == "neumann") cc = neumann_curve(name, g, f);
      else fail(path + ".type", "expected dirichlet or neumann");
      if (solution) {
        cc.exact = cc.piece.bc == BcType::Dirichlet ? neumann_trace(g, *solution).value
                                                    : dirichlet_trace(g, *solution).value;
      } else if (doc["curves"].size() > 1) {
        cc.exact = nullptr;
      }
    }
    const auto& cj = curve_json[name];
    if (cj.contains("jumps")) cc.jumps = get<std::vector<double>>(cj, "jumps", "curves." + name);
    cc.closure_continuous = cj.value("closure_continuous", true);
    if (cj.contains("multiplicities")) {
      for (const auto& m : get<std::vector<std::vector<double>>>(cj, "multiplicities", "curves." + name)) {
        if (m.size() != 2) fail("curves." + name + ".multiplicities", "expected [t, m] pairs");
        cc.multiplicity_overrides.emplace_back(m[0], static_cast<int>(m[1]));
      }
    }
    c.curves.push_back(std::move(cc));
  }
  for (const auto& name : order)
    if (!assigned[name]) fail("bc", "curve '" + name + "' has no boundary condition");

  if (doc.contains("method")) c.method = parse_method(get<std::string>(doc, "method", "$"));
  c.degree = doc.value("degree", 2);
  if (doc.contains("refinement")) {
    const auto& r = doc["refinement"];
    c.elements = r.value("elements", 1);
    c.levels = r.value("levels", 1);
  }
  if (doc.contains("quadrature")) c.quadrature_order = doc["quadrature"].value("order", 16);
  const auto err = doc.value("error", std::string("relative_l2"));
  if (err == "relative_l2") c.error = ErrorKind::RelativeL2;
  else if (err == "max") c.error = ErrorKind::Max;
  else fail("error", "expected relative_l2 or max");
  try {
    c.problem().validate();
  } catch (const Error& e) {
    fail("bc", e.what());
  }
  return c;
}

Case load_case(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  try {
    return parse_case(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

Discretization discretize(const Case& c, const BvpProblem& problem, const LevelSettings& s) {
  if (s.elements < 1) throw ValidationError("need at least one element per curve");
  Discretization d;
  for (std::size_t i = 0; i < c.curves.size(); ++i) {
    const auto& cc = c.curves[i];
    auto g = problem.pieces[i].geometry;
    switch (s.method) {
      case Method::IgaSgbem:
      case Method::IgaCollocation: {
        BSplineSpaceOptions o;
        o.degree = s.degree;
        o.elements = s.elements;
        o.regularity = s.regularity;
        o.multiplicity_overrides = cc.multiplicity_overrides;
        o.include_geometry_knots = s.include_geometry_knots;
        o.closure_continuous = cc.closure_continuous;
        d.parts.push_back({static_cast<int>(i), g, build_bspline_space(*g, o)});
        break;
      }
      case Method::CSgbem: {
        const auto mesh = induced_mesh(*g, s.elements);
        ContinuityMap cm;
        cm.jumps = cc.jumps;
        cm.closure_continuous = cc.closure_continuous;
        d.parts.push_back({static_cast<int>(i), g, build_lagrange_space(mesh, s.degree, cm)});
        break;
      }
      case Method::SSgbem: {
        const auto mesh = induced_mesh(*g, s.elements);
        auto poly = std::make_shared<PolygonalBoundary>(*g, mesh);
        const bool continuous = cc.piece.bc == BcType::Neumann;
        d.parts.push_back({static_cast<int>(i), poly, build_polygonal_space(*poly, mesh, s.degree, continuous)});
        break;
      }
    }
  }
  return d;
}

ExperimentResult run_case(const Case& c, const ExperimentSpec& spec) {
  ExperimentResult res;
  res.name = c.name;
  res.method = spec.method.value_or(c.method);
  res.degree = spec.degree.value_or(c.degree);
  res.error = c.error;
  res.max_sampling = spec.max_sampling;
  res.l2_measure = spec.l2_measure;
  AssemblyOptions opt = spec.assembly;
  if (spec.quadrature_order) opt.quadrature.order = *spec.quadrature_order;
  else if (c.quadrature_order) opt.quadrature.order = *c.quadrature_order;
  res.quadrature_order = opt.quadrature.order;

  std::vector<int> elements = spec.element_list;
  if (elements.empty()) {
    const int base = spec.elements.value_or(c.elements);
    const int levels = spec.levels.value_or(c.levels);
    if (levels < 1) throw ValidationError("need at least one refinement level");
    for (int l = 0; l < levels; ++l) elements.push_back(base << l);
  }
  const BvpProblem problem = c.problem();
  bool known = true;
  for (const auto& cc : c.curves) known = known && static_cast<bool>(cc.exact);

  for (int n : elements) {
    LevelSettings ls{res.method, res.degree, n, spec.regularity, spec.include_geometry_knots};
    const Discretization disc = discretize(c, problem, ls);
    ResultRow row;
    const auto& g0 = *problem.pieces[0].geometry;
    row.h = (g0.back() - g0.front()) / n;
    row.dof = disc.size();
    const auto start = std::chrono::steady_clock::now();
    Eigen::VectorXd x;
    if (res.method == Method::IgaCollocation) {
      const auto sys = assemble_collocation(problem, disc, opt);
      x = solve_general(sys.matrix, sys.rhs);
      row.cond = singular_value_condition(sys.matrix);
    } else {
      const auto sys = assemble_system(problem, disc, opt);
      x = solve_symmetric(sys.matrix, sys.rhs);
      row.cond = spectral_condition(sys.matrix);
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const BoundarySolution sol{&problem, &disc, x};
    double err = 0.0, err_nodes = 0.0, err_dense = 0.0;
    for (std::size_t p = 0; known && p < disc.parts.size(); ++p) {
      const auto& part = disc.parts[p];
      const auto& cc = c.curves[part.piece];
      const Geometry& exact_geometry = *problem.pieces[part.piece].geometry;
      const auto approx = [&](double t) { return sol.unknown(static_cast<int>(p), t); };
      const auto nodes = panel_nodes(exact_geometry, {&part.space});
      const auto label = cc.piece.name + (cc.piece.bc == BcType::Dirichlet ? ":q" : ":u");
      if (c.error == ErrorKind::RelativeL2) {
        const int order = std::max(2 * res.degree + 4, 20);
        const double e = relative_L2_error(exact_geometry, nodes, approx, cc.exact, order, spec.l2_measure);
        row.part_errors[label] = e;
        err = std::max(err, e);
      } else {
        double en = 0.0;
        for (double t : part.space.element_nodes()) en = std::max(en, std::abs(approx(t) - cc.exact(t)));
        const double ed = max_error(nodes, approx, cc.exact, kDenseSamples);
        row.part_errors[label + ":nodes"] = en;
        row.part_errors[label + ":dense"] = ed;
        err_nodes = std::max(err_nodes, en);
        err_dense = std::max(err_dense, ed);
      }
    }
    if (c.error == ErrorKind::Max) {
      row.error_nodes = err_nodes;
      row.error_dense = err_dense;
      err = spec.max_sampling == MaxSampling::Nodes ? err_nodes : err_dense;
    }
    row.error = known ? err : std::numeric_limits<double>::quiet_NaN();
    if (known && !res.rows.empty() && n == 2 * elements[res.rows.size() - 1])
      row.order = std::log2(res.rows.back().error / row.error);
    res.rows.push_back(row);
  }
  return res;
}

ExperimentResult run_builtin(int example, const std::string& variant, const ExperimentSpec& spec) {
  return run_case(builtin_case(example, variant), spec);
}

ExperimentResult run_problem(const std::filesystem::path& path, const ExperimentSpec& spec) {
  return run_case(load_case(path), spec);
}

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string csv_table(const ExperimentResult& r) {
  std::ostringstream os;
  os << "h,dof,cond,error,order,seconds\n";
  for (const auto& row : r.rows)
    os << number(row.h) << ',' << row.dof << ',' << number(row.cond) << ',' << number(row.error) << ','
       << number(row.order) << ',' << number(row.seconds) << '\n';
  return os.str();
}

std::vector<ResultRow> parse_csv_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "h,dof,cond,error,order,seconds")
    throw ValidationError("csv: unexpected header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() == 5) f.emplace_back();
    if (f.size() != 6) throw ValidationError("csv: expected 6 fields in '" + line + "'");
    auto num = [](const std::string& s) { return s.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(s); };
    ResultRow row;
    row.h = num(f[0]);
    row.dof = std::stoi(f[1]);
    row.cond = num(f[2]);
    row.error = num(f[3]);
    row.order = num(f[4]);
    row.seconds = num(f[5]);
    rows.push_back(row);
  }
  return rows;
}

json metadata(const ExperimentResult& r) {
  json m;
  m["name"] = r.name;
  m["method"] = to_string(r.method);
  m["degree"] = r.degree;
  m["error"] = r.error == ErrorKind::RelativeL2 ? "relative_l2" : "max";
  if (r.error == ErrorKind::RelativeL2) m["l2_measure"] = to_string(r.l2_measure);
  else m["max_sampling"] = to_string(r.max_sampling);
  m["dense_samples_per_element"] = kDenseSamples;
  m["quadrature_order"] = r.quadrature_order;
  m["condition"] = r.method == Method::IgaCollocation ? "singular_values" : "eigenvalues";
  m["rows"] = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["h"] = row.h;
    j["dof"] = row.dof;
    j["cond"] = row.cond;
    j["error"] = row.error;
    j["order"] = std::isnan(row.order) ? json(nullptr) : json(row.order);
    j["seconds"] = row.seconds;
    if (!std::isnan(row.error_nodes)) j["error_nodes"] = row.error_nodes;
    if (!std::isnan(row.error_dense)) j["error_dense"] = row.error_dense;
    j["parts"] = row.part_errors;
    m["rows"].push_back(j);
  }
  return m;
}

void emit_outputs(const ExperimentResult& r, const std::filesystem::path& dir, const std::string& stem) {
  if (r.rows.empty()) throw ValidationError("no result rows to write");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << text;
    if (!out) throw Error("cannot write " + (dir / name).string());
  };
  write(stem + ".csv", csv_table(r));
  std::ostringstream plot;
  plot << "# method dof error\n";
  for (const auto& row : r.rows) plot << to_string(r.method) << ' ' << row.dof << ' ' << number(row.error) << '\n';
  write(stem + "_plot.dat", plot.str());
  write(stem + "_meta.json", metadata(r).dump(2) + "\n");
}

}  // namespace sgbem
