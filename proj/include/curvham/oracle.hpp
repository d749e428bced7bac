#pragma once

#include <string>
#include <vector>

#include "curvham/constants.hpp"
#include "curvham/fields.hpp"
#include "curvham/geometry.hpp"
#include "curvham/lattice.hpp"

namespace curvham::oracle {

struct AnalyticLevel {
  double energy = 0.0;
  int degeneracy = 1;
  std::string label;
};

struct AnalyticSpectrum {
  std::vector<AnalyticLevel> levels;  // ascending energies

  /// Flatten to the lowest `count` eigenvalues with multiplicity.
  std::vector<double> lowest(std::size_t count) const;
};

/// E_n = (hbar^2 / 2 m a^2)(n - alpha)^2 - hbar^2 / (8 m a^2),
/// n in {-n_max .. n_max}; flux enters only through the link phases so the
/// eigenfunctions stay single-valued.
AnalyticSpectrum ring_spectrum(double a, double alpha, int n_max,
                               const PhysicalConstants& pc = {});

/// Ring levels plus Dirichlet axial modes (hbar^2/2m)(j pi / L)^2, j >= 1.
AnalyticSpectrum cylinder_spectrum(double a, double L, double alpha, int n_max, int j_max,
                                   const PhysicalConstants& pc = {});

/// Free sphere: E_l = hbar^2 l (l+1) / (2 m a^2), degeneracy 2l + 1.
AnalyticSpectrum sphere_spectrum(double a, int l_max, const PhysicalConstants& pc = {});

/// First-order energy shift <Y_lm | H'(B0) | Y_lm> for a uniform field
/// B0 z_hat in symmetric gauge, evaluated by Gauss-Legendre quadrature of
/// the paramagnetic cross term (not by a assumed closed form).
double sphere_uniform_b_first_order(double a, double B0, int l, int m,
                                    const PhysicalConstants& pc = {},
                                    int quad_order = 48);

/// Signed (M, K) from first/second fundamental forms of the Cartesian
/// embedding, with analytic derivatives; the normal is oriented by
/// frame_orientation(kind) applied to r_1 x r_2. Brute-force cross-check
/// for the closed-form curvatures.
std::pair<double, double> embedding_curvatures(const SurfaceSpec& s, double q1, double q2);

/// Max pointwise residual of the constant-SOC divergence identity
///   (1/2 h1 h2)(d1(h2 W1^a) + d2(h1 W2^a)) = M W3^a
/// over the grid nodes and Pauli components, with analytic tangential
/// derivatives of the projected components. This is the identity that makes
/// the symmetrized first-order SOC term reproduce the W3-curvature
/// counter-term.
double soc_divergence_identity_residual(const SurfaceSpec& s, const SOCVector& w,
                                        const LatticeGrid& grid);

}  // namespace curvham::oracle
