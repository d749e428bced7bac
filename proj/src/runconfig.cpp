#include "curvham/runconfig.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

namespace curvham {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void expect_keys(const json& j, const std::string& ctx,
                 std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(ctx + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) fail(ctx + "." + key + " is not a recognized key");
  }
}

double get_number(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) fail(ctx + "." + key + " is required");
  if (!j[key].is_number()) fail(ctx + "." + key + " must be a number");
  return j[key].get<double>();
}

double get_number_or(const json& j, const std::string& ctx, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) fail(ctx + "." + key + " must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) fail(ctx + "." + key + " is required");
  if (!j[key].is_number_integer()) fail(ctx + "." + key + " must be an integer");
  return j[key].get<int>();
}

int get_int_or(const json& j, const std::string& ctx, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number_integer()) fail(ctx + "." + key + " must be an integer");
  return j[key].get<int>();
}

std::string get_string(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) fail(ctx + "." + key + " is required");
  if (!j[key].is_string()) fail(ctx + "." + key + " must be a string");
  return j[key].get<std::string>();
}

std::string get_string_or(const json& j, const std::string& ctx, const char* key,
                          const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_string()) fail(ctx + "." + key + " must be a string");
  return j[key].get<std::string>();
}

Vec3 get_vec3(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
    fail(ctx + "." + key + " must be an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[key][i].is_number()) fail(ctx + "." + key + " must contain numbers");
    v(i) = j[key][i].get<double>();
  }
  return v;
}

/// Node-major tabulated values with periodic/clamped bilinear interpolation.
struct TabulatedField {
  int n1 = 0, n2 = 0, cols = 0;
  std::vector<double> data;  // (i * n2 + j) * cols + c

  double at(int i, int j, int c) const { return data[(static_cast<size_t>(i) * n2 + j) * cols + c]; }
};

TabulatedField load_tabulated(const std::string& path, int cols) {
  std::ifstream in(path);
  if (!in) fail("cannot open tabulated file " + path);
  TabulatedField t;
  t.cols = cols;
  std::string line;
  bool have_dims = false;
  while (std::getline(in, line)) {
    const auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    if (!have_dims) {
      if (ls >> t.n1 >> t.n2) {
        have_dims = true;
        if (t.n1 < 1 || t.n2 < 1) fail("tabulated file " + path + " has invalid dimensions");
        t.data.reserve(static_cast<size_t>(t.n1) * t.n2 * cols);
      }
      continue;
    }
    double v;
    while (ls >> v) t.data.push_back(v);
  }
  if (!have_dims) fail("tabulated file " + path + " is missing the 'n1 n2' header line");
  if (t.data.size() != static_cast<size_t>(t.n1) * t.n2 * cols)
    fail("tabulated file " + path + " has " + std::to_string(t.data.size()) +
         " values, expected " + std::to_string(static_cast<size_t>(t.n1) * t.n2 * cols));
  for (double v : t.data)
    if (!std::isfinite(v)) fail("tabulated file " + path + " contains non-finite values");
  return t;
}

// bilinear sample in grid index space; periodic axes wrap, others clamp
double sample_tab(const TabulatedField& t, const LatticeGrid& g, double q1, double q2, int c) {
  auto axis = [](double q, double q0, double dq, int n, bool periodic) {
    double x = (q - q0) / dq;
    if (periodic) {
      x = std::fmod(x, n);
      if (x < 0) x += n;
    } else {
      x = std::clamp(x, 0.0, double(n - 1));
    }
    return x;
  };
  const bool per1 = g.topo1 == AxisTopology::Periodic;
  const bool per2 = g.topo2 == AxisTopology::Periodic;
  const double x = axis(q1, g.q1[0], g.dq1, g.n1, per1);
  const double y = (g.n2 > 1) ? axis(q2, g.q2[0], g.dq2, g.n2, per2) : 0.0;
  const int i0 = static_cast<int>(std::floor(x));
  const int j0 = static_cast<int>(std::floor(y));
  const double fx = x - i0;
  const double fy = y - j0;
  auto wrap = [](int i, int n, bool periodic) {
    if (periodic) return (i % n + n) % n;
    return std::clamp(i, 0, n - 1);
  };
  const int i1 = wrap(i0 + 1, t.n1, per1);
  const int j1 = wrap(j0 + 1, t.n2, per2);
  const int i0w = wrap(i0, t.n1, per1);
  const int j0w = wrap(j0, t.n2, per2);
  return (1 - fx) * (1 - fy) * t.at(i0w, j0w, c) + fx * (1 - fy) * t.at(i1, j0w, c) +
         (1 - fx) * fy * t.at(i0w, j1, c) + fx * fy * t.at(i1, j1, c);
}

const char* axis_topology_name(AxisTopology t) {
  switch (t) {
    case AxisTopology::Periodic: return "periodic";
    case AxisTopology::Dirichlet: return "dirichlet";
    case AxisTopology::PoleCap: return "polecap";
    case AxisTopology::None: return "none";
  }
  return "?";
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

RunConfig parse_run_config(const json& j) {
  expect_keys(j, "config",
              {"surface", "grid", "field", "scalar_potential", "magnetic_field", "soc",
               "particle", "solver", "constants", "limits", "outputs", "verify"});
  RunConfig c;

  // surface
  if (!j.contains("surface")) fail("config.surface is required");
  {
    const json& s = j["surface"];
    expect_keys(s, "surface", {"kind", "a", "R", "r", "L"});
    const std::string kind = get_string(s, "surface", "kind");
    if (kind == "ring") {
      c.surface = SurfaceSpec::ring(get_number(s, "surface", "a"));
    } else if (kind == "cylinder") {
      c.surface = SurfaceSpec::cylinder(get_number(s, "surface", "a"),
                                        get_number_or(s, "surface", "L", 0.0));
    } else if (kind == "sphere") {
      c.surface = SurfaceSpec::sphere(get_number(s, "surface", "a"));
    } else if (kind == "torus") {
      c.surface = SurfaceSpec::torus(get_number(s, "surface", "R"),
                                     get_number(s, "surface", "r"));
    } else {
      fail("surface.kind must be one of ring/cylinder/sphere/torus, got '" + kind + "'");
    }
  }

  // grid
  if (!j.contains("grid")) fail("config.grid is required");
  {
    const json& g = j["grid"];
    expect_keys(g, "grid", {"n1", "n2", "bc2"});
    c.grid.n1 = get_int(g, "grid", "n1");
    c.grid.n2 = get_int_or(g, "grid", "n2", 1);
    if (g.contains("bc2")) {
      const std::string bc = get_string(g, "grid", "bc2");
      if (bc == "dirichlet")
        c.grid.bc2 = AxisTopology::Dirichlet;
      else if (bc == "periodic")
        c.grid.bc2 = AxisTopology::Periodic;
      else
        fail("grid.bc2 must be 'dirichlet' or 'periodic', got '" + bc + "'");
    }
  }

  // field
  if (j.contains("field")) {
    const json& f = j["field"];
    expect_keys(f, "field", {"type", "axis", "b0", "alpha", "path"});
    const std::string type = get_string(f, "field", "type");
    if (type == "none") {
      c.field.type = RunConfig::Field::Type::None;
    } else if (type == "uniform_b") {
      c.field.type = RunConfig::Field::Type::UniformB;
      c.field.axis = get_vec3(f, "field", "axis");
      c.field.b0 = get_number(f, "field", "b0");
    } else if (type == "flux_line") {
      c.field.type = RunConfig::Field::Type::FluxLine;
      c.field.alpha = get_number(f, "field", "alpha");
    } else if (type == "tabulated") {
      c.field.type = RunConfig::Field::Type::Tabulated;
      c.field.path = get_string(f, "field", "path");
    } else {
      fail("field.type must be one of none/uniform_b/flux_line/tabulated, got '" + type + "'");
    }
  }

  if (j.contains("scalar_potential")) {
    const json& s = j["scalar_potential"];
    expect_keys(s, "scalar_potential", {"type", "path"});
    const std::string type = get_string_or(s, "scalar_potential", "type", "none");
    if (type == "tabulated")
      c.scalar.path = get_string(s, "scalar_potential", "path");
    else if (type != "none")
      fail("scalar_potential.type must be 'none' or 'tabulated'");
  }

  if (j.contains("magnetic_field")) {
    const json& m = j["magnetic_field"];
    expect_keys(m, "magnetic_field", {"type", "b"});
    const std::string type = get_string(m, "magnetic_field", "type");
    if (type == "auto")
      c.magnetic.type = RunConfig::Magnetic::Type::Auto;
    else if (type == "zero")
      c.magnetic.type = RunConfig::Magnetic::Type::Zero;
    else if (type == "constant") {
      c.magnetic.type = RunConfig::Magnetic::Type::Constant;
      c.magnetic.B = get_vec3(m, "magnetic_field", "b");
    } else {
      fail("magnetic_field.type must be one of auto/zero/constant, got '" + type + "'");
    }
  }

  if (j.contains("soc")) {
    const json& s = j["soc"];
    expect_keys(s, "soc", {"e_field", "g"});
    c.soc.enabled = true;
    c.soc.e_field = get_vec3(s, "soc", "e_field");
    c.soc.g = get_number_or(s, "soc", "g", 1.0);
  }

  if (!j.contains("particle")) fail("config.particle is required");
  {
    const std::string p = j["particle"].get<std::string>();
    if (p == "spin0")
      c.particle = RunConfig::Particle::Spin0;
    else if (p == "pauli")
      c.particle = RunConfig::Particle::Pauli;
    else
      fail("particle must be 'spin0' or 'pauli', got '" + p + "'");
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    expect_keys(s, "solver", {"k", "backend", "seed", "tol", "max_basis"});
    c.solver.k = get_int_or(s, "solver", "k", 6);
    const std::string b = get_string_or(s, "solver", "backend", "auto");
    if (b == "auto")
      c.solver.backend = SolverBackend::Auto;
    else if (b == "dense")
      c.solver.backend = SolverBackend::Dense;
    else if (b == "lanczos")
      c.solver.backend = SolverBackend::Lanczos;
    else
      fail("solver.backend must be auto/dense/lanczos, got '" + b + "'");
    if (s.contains("seed")) c.solver.seed = s["seed"].get<uint64_t>();
    c.solver.tol = get_number_or(s, "solver", "tol", 0.0);
    c.solver.max_basis = get_int_or(s, "solver", "max_basis", 320);
  }

  if (j.contains("constants")) {
    const json& k = j["constants"];
    expect_keys(k, "constants", {"hbar", "mass", "charge"});
    c.constants.hbar = get_number_or(k, "constants", "hbar", 1.0);
    c.constants.mass = get_number_or(k, "constants", "mass", 1.0);
    c.constants.charge = get_number_or(k, "constants", "charge", 1.0);
  }

  if (j.contains("limits")) {
    expect_keys(j["limits"], "limits", {"max_dim"});
    c.max_dim = get_int_or(j["limits"], "limits", "max_dim", kDefaultMaxOperatorDim);
  }

  if (!j.contains("outputs")) fail("config.outputs is required");
  {
    const json& o = j["outputs"];
    expect_keys(o, "outputs", {"eigenvalues", "eigenvectors", "report", "operator_coo"});
    c.outputs.eigenvalues = get_string(o, "outputs", "eigenvalues");
    c.outputs.eigenvectors = get_string_or(o, "outputs", "eigenvectors", "");
    c.outputs.report = get_string_or(o, "outputs", "report", "");
    c.outputs.operator_coo = get_string_or(o, "outputs", "operator_coo", "");
  }

  if (j.contains("verify")) {
    expect_keys(j["verify"], "verify", {"gauge"});
    if (j["verify"].contains("gauge")) c.verify.gauge = j["verify"]["gauge"].get<bool>();
  }

  // cross-field rules
  if (c.particle == RunConfig::Particle::Pauli &&
      c.field.type == RunConfig::Field::Type::Tabulated &&
      c.magnetic.type == RunConfig::Magnetic::Type::Auto)
    throw MissingFieldError(
        "pauli particle with a tabulated potential requires an explicit magnetic_field "
        "(the tangential data determines only the normal component of B)");

  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

json run_config_to_json(const RunConfig& c) {
  json j;
  json s;
  s["kind"] = to_string(c.surface.kind);
  switch (c.surface.kind) {
    case SurfaceKind::Ring:
    case SurfaceKind::Sphere:
      s["a"] = c.surface.a;
      break;
    case SurfaceKind::Cylinder:
      s["a"] = c.surface.a;
      s["L"] = c.surface.L;
      break;
    case SurfaceKind::Torus:
      s["R"] = c.surface.R;
      s["r"] = c.surface.r;
      break;
  }
  j["surface"] = s;

  json g;
  g["n1"] = c.grid.n1;
  g["n2"] = c.grid.n2;
  if (c.grid.bc2)
    g["bc2"] = *c.grid.bc2 == AxisTopology::Dirichlet ? "dirichlet" : "periodic";
  j["grid"] = g;

  json f;
  switch (c.field.type) {
    case RunConfig::Field::Type::None:
      f["type"] = "none";
      break;
    case RunConfig::Field::Type::UniformB:
      f["type"] = "uniform_b";
      f["axis"] = {c.field.axis.x(), c.field.axis.y(), c.field.axis.z()};
      f["b0"] = c.field.b0;
      break;
    case RunConfig::Field::Type::FluxLine:
      f["type"] = "flux_line";
      f["alpha"] = c.field.alpha;
      break;
    case RunConfig::Field::Type::Tabulated:
      f["type"] = "tabulated";
      f["path"] = c.field.path;
      break;
  }
  j["field"] = f;

  if (!c.scalar.path.empty())
    j["scalar_potential"] = {{"type", "tabulated"}, {"path", c.scalar.path}};
  if (c.magnetic.type != RunConfig::Magnetic::Type::Auto) {
    json m;
    if (c.magnetic.type == RunConfig::Magnetic::Type::Zero) {
      m["type"] = "zero";
    } else {
      m["type"] = "constant";
      m["b"] = {c.magnetic.B.x(), c.magnetic.B.y(), c.magnetic.B.z()};
    }
    j["magnetic_field"] = m;
  }
  if (c.soc.enabled)
    j["soc"] = {{"e_field", {c.soc.e_field.x(), c.soc.e_field.y(), c.soc.e_field.z()}},
                {"g", c.soc.g}};

  j["particle"] = c.particle == RunConfig::Particle::Spin0 ? "spin0" : "pauli";

  json so;
  so["k"] = c.solver.k;
  so["backend"] = c.solver.backend == SolverBackend::Auto
                      ? "auto"
                      : (c.solver.backend == SolverBackend::Dense ? "dense" : "lanczos");
  so["seed"] = c.solver.seed;
  so["tol"] = c.solver.tol;
  so["max_basis"] = c.solver.max_basis;
  j["solver"] = so;

  j["constants"] = {{"hbar", c.constants.hbar},
                    {"mass", c.constants.mass},
                    {"charge", c.constants.charge}};
  j["limits"] = {{"max_dim", c.max_dim}};

  json o;
  o["eigenvalues"] = c.outputs.eigenvalues;
  if (!c.outputs.eigenvectors.empty()) o["eigenvectors"] = c.outputs.eigenvectors;
  if (!c.outputs.report.empty()) o["report"] = c.outputs.report;
  if (!c.outputs.operator_coo.empty()) o["operator_coo"] = c.outputs.operator_coo;
  j["outputs"] = o;

  if (c.verify.gauge) j["verify"] = {{"gauge", true}};
  return j;
}

namespace {

PotentialSpec make_potential(const RunConfig& c, const LatticeGrid& g) {
  switch (c.field.type) {
    case RunConfig::Field::Type::None:
      return PotentialSpec::none();
    case RunConfig::Field::Type::UniformB:
      return PotentialSpec::uniform_b(c.field.axis, c.field.b0);
    case RunConfig::Field::Type::FluxLine:
      return PotentialSpec::flux_line(c.field.alpha);
    case RunConfig::Field::Type::Tabulated: {
      auto tab = std::make_shared<TabulatedField>(load_tabulated(c.field.path, 2));
      if (tab->n1 != g.n1 || tab->n2 != g.n2)
        fail("tabulated field " + c.field.path + " is " + std::to_string(tab->n1) + "x" +
             std::to_string(tab->n2) + " but the grid is " + std::to_string(g.n1) + "x" +
             std::to_string(g.n2));
      LatticeGrid gc = g;
      return PotentialSpec::custom([tab, gc](double q1, double q2) -> std::array<double, 2> {
        return {sample_tab(*tab, gc, q1, q2, 0), sample_tab(*tab, gc, q1, q2, 1)};
      });
    }
  }
  fail("unreachable field type");
}

ScalarPotential make_scalar(const RunConfig& c, const LatticeGrid& g) {
  if (c.scalar.path.empty()) return ScalarPotential::zero();
  auto tab = std::make_shared<TabulatedField>(load_tabulated(c.scalar.path, 1));
  if (tab->n1 != g.n1 || tab->n2 != g.n2)
    fail("tabulated scalar potential " + c.scalar.path + " does not match the grid size");
  LatticeGrid gc = g;
  return ScalarPotential::of(
      [tab, gc](double q1, double q2) { return sample_tab(*tab, gc, q1, q2, 0); });
}

MagneticFieldSpec make_magnetic(const RunConfig& c, const PotentialSpec& p) {
  switch (c.magnetic.type) {
    case RunConfig::Magnetic::Type::Zero:
      return MagneticFieldSpec::zero();
    case RunConfig::Magnetic::Type::Constant:
      return MagneticFieldSpec::constant(c.magnetic.B);
    case RunConfig::Magnetic::Type::Auto: {
      auto b = magnetic_field_for(p);
      if (!b)
        throw MissingFieldError(
            "magnetic field cannot be derived from a tabulated potential; set "
            "magnetic_field explicitly");
      return *b;
    }
  }
  fail("unreachable magnetic type");
}

void ensure_parent_dir(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

RunResult run(const RunConfig& c) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();

  const LatticeGrid g = build_grid(c.surface, c.grid.n1, c.grid.n2, c.grid.bc2);
  const PotentialSpec pot = make_potential(c, g);
  const ScalarPotential V = make_scalar(c, g);
  const LinkField links = link_phases(g, pot, 4, c.constants);

  const auto t1 = clock::now();
  SurfaceOperator op =
      c.particle == RunConfig::Particle::Spin0
          ? assemble_spin0(g, links, V, c.constants, c.max_dim)
          : assemble_pauli(g, links,
                           c.soc.enabled ? soc_from_efield(c.soc.e_field, c.soc.g, c.constants)
                                         : SOCVector::none(),
                           make_magnetic(c, pot), V, c.constants, c.max_dim);
  const auto t2 = clock::now();

  SolverOptions so;
  so.backend = c.solver.backend;
  so.tol = c.solver.tol;
  so.seed = c.solver.seed;
  so.max_basis = c.solver.max_basis;
  SpectrumResult sp = eigen_lowest(op, c.solver.k, so);
  const auto t3 = clock::now();

  RunResult res;
  res.hermiticity_residual = op.hermiticity_residual();
  res.operator_scale = op.scale();

  if (c.verify.gauge) {
    // random site phases, seeded from the solver seed
    std::vector<double> chi(g.n());
    uint64_t state = c.solver.seed ^ 0x9e3779b97f4a7c15ULL;
    for (double& x : chi) {
      state += 0x9e3779b97f4a7c15ULL;
      uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z = z ^ (z >> 31);
      x = 2.0 * std::numbers::pi * (static_cast<double>(z >> 11) * 0x1.0p-53);
    }
    const LinkField tl = site_gauge_transform(g, links, chi);
    SurfaceOperator op2 =
        c.particle == RunConfig::Particle::Spin0
            ? assemble_spin0(g, tl, V, c.constants, c.max_dim)
            : assemble_pauli(g, tl,
                             c.soc.enabled
                                 ? soc_from_efield(c.soc.e_field, c.soc.g, c.constants)
                                 : SOCVector::none(),
                             make_magnetic(c, pot), V, c.constants, c.max_dim);
    SpectrumResult sp2 = eigen_lowest(op2, c.solver.k, so);
    res.gauge_max_drift =
        (sp.eigenvalues - sp2.eigenvalues).cwiseAbs().maxCoeff();
  }

  // eigenvalues CSV
  {
    ensure_parent_dir(c.outputs.eigenvalues);
    std::ofstream out(c.outputs.eigenvalues);
    if (!out) fail("cannot write " + c.outputs.eigenvalues);
    out << "index,energy,residual,degeneracy_group\n";
    for (int i = 0; i < sp.eigenvalues.size(); ++i)
      out << i << ',' << format_double(sp.eigenvalues(i)) << ','
          << format_double(sp.residuals(i)) << ',' << sp.degeneracy_group[i] << '\n';
  }

  if (!c.outputs.eigenvectors.empty()) {
    ensure_parent_dir(c.outputs.eigenvectors);
    std::ofstream out(c.outputs.eigenvectors);
    if (!out) fail("cannot write " + c.outputs.eigenvectors);
    const int spin = op.spin_components();
    out << "index,q1,q2,spin,re,im\n";
    for (int col = 0; col < sp.eigenvectors.cols(); ++col)
      for (int sc = 0; sc < spin; ++sc)
        for (int i = 0; i < g.n1; ++i)
          for (int jj = 0; jj < g.n2; ++jj) {
            const Complex v = sp.eigenvectors(sc * g.n() + g.index(i, jj), col);
            out << col << ',' << format_double(g.q1[i]) << ',' << format_double(g.q2[jj])
                << ',' << sc << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << '\n';
          }
  }

  if (!c.outputs.operator_coo.empty()) {
    ensure_parent_dir(c.outputs.operator_coo);
    std::ofstream out(c.outputs.operator_coo);
    if (!out) fail("cannot write " + c.outputs.operator_coo);
    op.write_coo(out);
  }

  const auto t4 = clock::now();
  auto secs = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };

  json rep;
  rep["config"] = run_config_to_json(c);
  rep["grid"] = {{"n1", g.n1},
                 {"n2", g.n2},
                 {"topology1", axis_topology_name(g.topo1)},
                 {"topology2", axis_topology_name(g.topo2)}};
  rep["operator"] = {{"dim", op.dim()},
                     {"scale", res.operator_scale},
                     {"hermiticity_residual", res.hermiticity_residual},
                     {"stencil_order", op.metadata().stencil_order}};
  rep["solver"] = {{"backend", sp.backend_used},
                   {"matvecs", sp.iterations},
                   {"residual_max", sp.residuals.maxCoeff()}};
  rep["eigenvalues"] = std::vector<double>(sp.eigenvalues.data(),
                                           sp.eigenvalues.data() + sp.eigenvalues.size());
  if (res.gauge_max_drift) rep["gauge_max_drift"] = *res.gauge_max_drift;
  rep["timings"] = {{"setup_s", secs(t0, t1)},
                    {"assemble_s", secs(t1, t2)},
                    {"solve_s", secs(t2, t3)},
                    {"total_s", secs(t0, t4)}};

  if (!c.outputs.report.empty()) {
    ensure_parent_dir(c.outputs.report);
    std::ofstream out(c.outputs.report);
    if (!out) fail("cannot write " + c.outputs.report);
    out << rep.dump(2) << '\n';
  }

  res.spectrum = std::move(sp);
  res.report = std::move(rep);
  return res;
}

}  // namespace curvham
