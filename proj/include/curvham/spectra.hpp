#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "curvham/lattice.hpp"

namespace curvham {

enum class SolverBackend { Auto, Dense, Lanczos };

struct SolverOptions {
  SolverBackend backend = SolverBackend::Auto;
  /// Absolute residual target; 0 selects 1e-11 * scale(H).
  double tol = 0.0;
  uint64_t seed = 0x5eed5eedULL;
  int max_basis = 320;     // Lanczos basis size per pass
  int max_restarts = 60;   // Lanczos deflation passes
};

/// Threshold under which the dense path is the default.
inline constexpr int kDenseDimLimit = 4096;

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // columns, original (unsymmetrized) basis
  Eigen::VectorXd residuals;      // ||H v - lambda v|| per pair (flat basis)
  std::vector<int> degeneracy_group;
  std::string backend_used;
  int iterations = 0;  // matrix-vector products (Lanczos) or 0 (dense)
};

/// Lowest-k eigenpairs of the assembled Hermitian operator. Dense path:
/// Householder tridiagonalization with implicit-shift QL eigenvalues and
/// inverse-iteration eigenvectors for the requested pairs. Iterative path:
/// Lanczos with full reorthogonalization and deflation restarts,
/// deterministic for a fixed seed.
SpectrumResult eigen_lowest(const SurfaceOperator& op, int k, const SolverOptions& opts = {});

/// <psi|O|psi> under the weighted inner product; psi in the original basis.
Complex expectation(const SurfaceOperator& obs, const Eigen::VectorXcd& psi);

struct ConvergenceStudy {
  std::vector<int> sizes;
  Eigen::MatrixXd errors;          // (#sizes) x k  |E_lattice - E_exact|
  std::vector<double> slopes;      // per level, log(err) vs log(1/size) fit
  std::vector<double> fit_residual;
  std::vector<bool> at_floor;      // errors at machine floor, slope not meaningful
  bool monotone = true;
};

/// Error order of a grid -> operator family against exact reference
/// energies. sizes must be ascending, at least 3 entries.
ConvergenceStudy convergence_study(const std::function<SurfaceOperator(int)>& builder,
                                   const std::vector<int>& sizes,
                                   const std::vector<double>& reference, int k,
                                   const SolverOptions& opts = {});

}  // namespace curvham
