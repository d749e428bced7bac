#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "curvham/constants.hpp"
#include "curvham/fields.hpp"
#include "curvham/geometry.hpp"
#include "curvham/lattice.hpp"
#include "curvham/spectra.hpp"

namespace curvham {

/// Self-describing run description; the JSON form is the archival artifact.
struct RunConfig {
  SurfaceSpec surface;

  struct Grid {
    int n1 = 0;
    int n2 = 1;
    std::optional<AxisTopology> bc2;  // cylinder axial axis only
    bool operator==(const Grid&) const = default;
  } grid;

  struct Field {
    enum class Type { None, UniformB, FluxLine, Tabulated };
    Type type = Type::None;
    Vec3 axis = Vec3(0, 0, 1);
    double b0 = 0.0;
    double alpha = 0.0;
    std::string path;
    bool operator==(const Field&) const = default;
  } field;

  struct Scalar {
    std::string path;  // empty: identically zero
    bool operator==(const Scalar&) const = default;
  } scalar;

  struct Magnetic {
    enum class Type { Auto, Zero, Constant };
    Type type = Type::Auto;
    Vec3 B = Vec3::Zero();
    bool operator==(const Magnetic&) const = default;
  } magnetic;

  struct Soc {
    bool enabled = false;
    Vec3 e_field = Vec3::Zero();
    double g = 1.0;
    bool operator==(const Soc&) const = default;
  } soc;

  enum class Particle { Spin0, Pauli };
  Particle particle = Particle::Spin0;

  struct Solver {
    int k = 6;
    SolverBackend backend = SolverBackend::Auto;
    uint64_t seed = 0x5eed5eedULL;
    double tol = 0.0;
    int max_basis = 320;
    bool operator==(const Solver&) const = default;
  } solver;

  PhysicalConstants constants;
  int max_dim = kDefaultMaxOperatorDim;

  struct Outputs {
    std::string eigenvalues;  // CSV path (required by run)
    std::string eigenvectors;
    std::string report;
    std::string operator_coo;
    bool operator==(const Outputs&) const = default;
  } outputs;

  struct Verify {
    bool gauge = false;
    bool operator==(const Verify&) const = default;
  } verify;

  bool operator==(const RunConfig&) const = default;
};

/// Strict parse: unknown keys anywhere are rejected with the offending path.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

/// Lossless echo: parse_run_config(run_config_to_json(c)) == c.
nlohmann::json run_config_to_json(const RunConfig& c);

struct RunResult {
  SpectrumResult spectrum;
  double hermiticity_residual = 0.0;
  double operator_scale = 0.0;
  std::optional<double> gauge_max_drift;
  nlohmann::json report;
};

/// Build, solve, and write the configured artifacts.
RunResult run(const RunConfig& c);

/// Shortest round-trip decimal text for a double (locale-independent).
std::string format_double(double v);

}  // namespace curvham
