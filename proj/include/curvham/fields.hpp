#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <variant>

#include <Eigen/Dense>

#include "curvham/constants.hpp"
#include "curvham/errors.hpp"
#include "curvham/geometry.hpp"

namespace curvham {

using Mat2c = Eigen::Matrix2cd;

/// Physical tangential components (A1, A2) as a function of (q1, q2).
using TangentialSampler = std::function<std::array<double, 2>(double, double)>;

struct UniformB {
  Vec3 axis;  // unit vector
  double b0 = 0.0;
};

/// Flux through a ring/cylinder axis in units of the flux quantum.
struct FluxLine {
  double alpha = 0.0;
};

struct CustomTangential {
  TangentialSampler sampler;
};

/// Vector potential on the surface. Only the two tangential physical
/// components exist in this data model; the normal component never enters
/// the surface theory.
struct PotentialSpec {
  std::variant<UniformB, FluxLine, CustomTangential> value;

  static PotentialSpec uniform_b(const Vec3& axis, double b0);
  static PotentialSpec flux_line(double alpha);
  static PotentialSpec custom(TangentialSampler sampler);
  /// Zero potential (uniform field of strength 0).
  static PotentialSpec none();

  const UniformB* as_uniform_b() const { return std::get_if<UniformB>(&value); }
  const FluxLine* as_flux_line() const { return std::get_if<FluxLine>(&value); }
  const CustomTangential* as_custom() const { return std::get_if<CustomTangential>(&value); }

  std::string digest() const;
};

/// (A1, A2) at a surface point. For UniformB this projects the symmetric
/// gauge potential (1/2) B x r onto the local frame; the normal projection
/// is evaluated and discarded. FluxLine is only defined on ring/cylinder.
std::array<double, 2> project_potential(const PotentialSpec& p, const SurfaceSpec& s,
                                        double q1, double q2,
                                        const PhysicalConstants& pc = {});

using ScalarField = std::function<double(double, double)>;
/// Coordinate gradient (d1 chi, d2 chi) of a gauge function.
using GradientField = std::function<std::array<double, 2>(double, double)>;

/// A -> A + grad' chi (tangential physical gradient). If no analytic
/// gradient is supplied the coordinate derivatives are taken by 4th-order
/// central differences with step fd_step. chi must be single-valued on
/// compact coordinates of the surface.
PotentialSpec gauge_shift(const PotentialSpec& p, const SurfaceSpec& s, ScalarField chi,
                          GradientField grad = nullptr, double fd_step = 1e-3,
                          const PhysicalConstants& pc = {});

/// Constant SU(2)-notation spin-orbit field: W(i, a) couples space
/// direction i to Pauli matrix a; g is the dimensionless coupling.
struct SOCVector {
  Eigen::Matrix3d W = Eigen::Matrix3d::Zero();
  double g = 1.0;

  bool is_zero() const { return W.isZero(0.0); }
  static SOCVector none() { return {}; }
};

/// W(i,a) = -(e hbar / 2 m g) eps_{iaj} E_j for a constant electric field.
SOCVector soc_from_efield(const Vec3& e_field, double g, const PhysicalConstants& pc = {});

/// Inverse of soc_from_efield (the Levi-Civita map is invertible).
Vec3 efield_from_soc(const SOCVector& w, const PhysicalConstants& pc = {});

/// Tangential projections W_k = sum_a (W(.,a) . e_k) sigma_a as 2x2
/// Hermitian matrices, k = 1, 2. The normal projection stays out of the
/// surface Hamiltonian.
std::pair<Mat2c, Mat2c> project_soc(const SOCVector& w, const SurfaceSpec& s,
                                    double q1, double q2);

/// Magnetic field on the surface: zero, constant, or sampled per point.
struct MagneticFieldSpec {
  struct Zero {};
  struct Constant {
    Vec3 B;
  };
  struct Sampled {
    std::function<Vec3(double, double)> fn;
  };
  std::variant<Zero, Constant, Sampled> value;

  static MagneticFieldSpec zero() { return {Zero{}}; }
  static MagneticFieldSpec constant(const Vec3& B) { return {Constant{B}}; }
  static MagneticFieldSpec sampled(std::function<Vec3(double, double)> fn) {
    return {Sampled{std::move(fn)}};
  }

  bool is_zero() const { return std::holds_alternative<Zero>(value); }
  Vec3 at(double q1, double q2) const;
};

/// Analytic B for the preset potentials; nullopt for CustomTangential,
/// where the tangential data alone cannot determine the tangential B.
std::optional<MagneticFieldSpec> magnetic_field_for(const PotentialSpec& p);

/// -(e hbar / 2m) sigma . B at a surface point.
Mat2c zeeman_matrix(const MagneticFieldSpec& b, double q1, double q2,
                    const PhysicalConstants& pc = {});

struct ScalarPotential {
  ScalarField fn;  // null means identically zero

  static ScalarPotential zero() { return {nullptr}; }
  static ScalarPotential of(ScalarField f) { return {std::move(f)}; }
  bool is_zero() const { return !fn; }
  double at(double q1, double q2) const;
};

/// Pauli matrices.
const Mat2c& sigma_x();
const Mat2c& sigma_y();
const Mat2c& sigma_z();

}  // namespace curvham
