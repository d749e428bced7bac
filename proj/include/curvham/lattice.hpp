#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "curvham/constants.hpp"
#include "curvham/fields.hpp"
#include "curvham/geometry.hpp"

namespace curvham {

using Complex = std::complex<double>;
using SparseMatrixXc = Eigen::SparseMatrix<Complex>;

enum class AxisTopology {
  Periodic,   // wrap-around edges
  Dirichlet,  // wavefunction pinned to zero outside the interior nodes
  PoleCap,    // sphere colatitude: staggered nodes, zero flux through the caps
  None,       // absent axis (ring)
};

/// Structured (q1, q2) sample grid with the integration weights
/// w(i, j) = h1 h2 dq1 dq2 that realize the surface inner product.
struct LatticeGrid {
  SurfaceSpec surface;
  int n1 = 0, n2 = 0;
  double dq1 = 0.0, dq2 = 0.0;
  std::vector<double> q1, q2;
  AxisTopology topo1 = AxisTopology::Periodic;
  AxisTopology topo2 = AxisTopology::None;
  Eigen::VectorXd weights;  // node-major: index = i * n2 + j

  int n() const { return n1 * n2; }
  int index(int i, int j) const { return i * n2 + j; }
};

/// Samples the surface. Periodic axes need >= 4 points, a Dirichlet axis
/// >= 2 interior nodes. The sphere colatitude is staggered as
/// theta_i = (i + 1/2) pi / N1 so no node touches a pole; requesting a
/// boundary override for it is rejected.
LatticeGrid build_grid(const SurfaceSpec& s, int N1, int N2,
                       std::optional<AxisTopology> bc2 = std::nullopt);

/// Unit-modulus phases exp((i e / hbar) int A_k h_k dq_k) on grid edges.
/// U1(i, j) lives on the edge (i, j) -> (i+1, j), U2(i, j) on
/// (i, j) -> (i, j+1); entries on absent edges stay 1.
struct LinkField {
  int n1 = 0, n2 = 0;
  Eigen::MatrixXcd U1, U2;
};

LinkField link_phases(const LatticeGrid& g, const PotentialSpec& p, int quad_order = 4,
                      const PhysicalConstants& pc = {});

/// U_k(i -> j) -> exp(i chi_j) U_k(i -> j) exp(-i chi_i); a pure relabeling
/// of wavefunction phases, so assembled spectra are invariant.
LinkField site_gauge_transform(const LatticeGrid& g, const LinkField& links,
                               const std::vector<double>& chi_sites);

struct OperatorMetadata {
  SurfaceSpec surface;
  std::string field_digest;
  int n1 = 0, n2 = 0;
  int stencil_order = 2;
  int spin_components = 1;
  PhysicalConstants pc;
};

/// Assembled Hermitian operator in the symmetrized basis psi_tilde =
/// sqrt(w) psi, so the stored sparse matrix is Hermitian under the flat
/// inner product and eigenvectors map back by dividing by sqrt(w).
class SurfaceOperator {
 public:
  SurfaceOperator(LatticeGrid grid, SparseMatrixXc matrix, OperatorMetadata meta);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int spin_components() const { return meta_.spin_components; }
  const SparseMatrixXc& matrix() const { return matrix_; }
  const LatticeGrid& grid() const { return grid_; }
  const OperatorMetadata& metadata() const { return meta_; }

  /// Infinity norm (max absolute row sum); the "scale" of tolerance contracts.
  double scale() const;

  /// max |H_ab - conj(H_ba)| over all entries.
  double hermiticity_residual() const;

  /// Coordinate-list text export: one "row col re im" line per stored entry.
  void write_coo(std::ostream& os) const;

 private:
  LatticeGrid grid_;
  SparseMatrixXc matrix_;
  OperatorMetadata meta_;
  mutable double scale_ = -1.0;
};

inline constexpr int kDefaultMaxOperatorDim = 1 << 22;

/// Spin-0 Hamiltonian: divergence-form covariant kinetic stencil with
/// Peierls links, plus geometric potential and V. Ring uses its own
/// single-axis path with a 4th-order stencil; 2D surfaces use the 2nd-order
/// five-point stencil.
SurfaceOperator assemble_spin0(const LatticeGrid& g, const LinkField& links,
                               const ScalarPotential& V = ScalarPotential::zero(),
                               const PhysicalConstants& pc = {},
                               int max_dim = kDefaultMaxOperatorDim);

/// Pauli Hamiltonian, dimension 2 N: spin-0 kinetic part in both spin
/// blocks, symmetrized first-order SOC term, Zeeman coupling, and the
/// -(g^2/2m) W'.W' scalar term.
SurfaceOperator assemble_pauli(const LatticeGrid& g, const LinkField& links,
                               const SOCVector& soc,
                               const MagneticFieldSpec& b = MagneticFieldSpec::zero(),
                               const ScalarPotential& V = ScalarPotential::zero(),
                               const PhysicalConstants& pc = {},
                               int max_dim = kDefaultMaxOperatorDim);

/// Weighted inner product sum w conj(psi) phi in the original basis;
/// accepts spin-0 (N) and Pauli (2N) states.
Complex inner_product(const LatticeGrid& g, const Eigen::VectorXcd& psi,
                      const Eigen::VectorXcd& phi);

}  // namespace curvham
