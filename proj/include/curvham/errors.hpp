#pragma once

#include <stdexcept>
#include <string>

namespace curvham {

/// Base class for all library exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid or unsupported configuration (bad surface parameters, unknown
/// config keys, dimension overflow, unsupported field/surface combination).
struct ConfigError : Error {
  using Error::Error;
};

/// Evaluation requested at a coordinate singularity (sphere pole).
struct SingularPointError : Error {
  using Error::Error;
};

/// A magnetic field is required (Pauli Zeeman term with a tabulated
/// tangential potential) but none was supplied.
struct MissingFieldError : ConfigError {
  using ConfigError::ConfigError;
};

/// Gauge function is not single-valued on a compact coordinate.
struct GaugeFunctionError : Error {
  using Error::Error;
};

/// State/operator size mismatch.
struct DimensionError : Error {
  using Error::Error;
};

/// Eigensolver failed to converge; message carries the best residuals.
struct SolverError : Error {
  using Error::Error;
};

}  // namespace curvham
