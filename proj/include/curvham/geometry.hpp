#pragma once

#include <Eigen/Dense>

#include "curvham/constants.hpp"
#include "curvham/errors.hpp"

namespace curvham {

using Vec3 = Eigen::Vector3d;

enum class SurfaceKind { Ring, Cylinder, Sphere, Torus };

const char* to_string(SurfaceKind kind);

/// One of the four built-in surfaces, parametrized by orthogonal
/// curvilinear coordinates (q1, q2) plus a normal offset q3 that is zero
/// on the surface itself.
///
/// Coordinates:
///   ring      q1 = theta in [0, 2pi)            (radius a, z = 0 plane)
///   cylinder  q1 = theta in [0, 2pi), q2 = z    (radius a, axial extent L)
///   sphere    q1 = theta in (0, pi), q2 = phi   (radius a; poles excluded)
///   torus     q1 = theta, q2 = phi, both 2pi-periodic
///             (R = center-to-tube distance, r = tube radius)
struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::Ring;
  double a = 0.0;  // ring/cylinder/sphere radius
  double R = 0.0;  // torus center-to-tube distance
  double r = 0.0;  // torus tube radius
  double L = 0.0;  // cylinder axial extent (box boundary only)

  static SurfaceSpec ring(double a);
  static SurfaceSpec cylinder(double a, double L);
  static SurfaceSpec sphere(double a);
  static SurfaceSpec torus(double R, double r);

  bool operator==(const SurfaceSpec&) const = default;
};

struct ScaleFactors {
  double h1 = 1.0;
  double h2 = 1.0;
  double h3 = 1.0;  // identically 1: q3 measures physical length
};

struct CurvatureData {
  double M = 0.0;    // mean curvature, sign convention below
  double K = 0.0;    // Gaussian curvature
  double gke = 0.0;  // -(hbar^2/2m)(M^2 - K)
};

/// Local orthonormal frame: e1 = (1/h1) dr/dq1, e2 = (1/h2) dr/dq2,
/// n = dr/dq3. e1 x e2 = frame_orientation(kind) * n.
struct SurfaceFrame {
  Vec3 e1;
  Vec3 e2;
  Vec3 n;
};

/// +1 for ring/cylinder/sphere, -1 for torus.
int frame_orientation(SurfaceKind kind);

/// Scale factors at (q1, q2) displaced by q3 along the normal.
ScaleFactors scale_factors(const SurfaceSpec& s, double q1, double q2, double q3);

/// Mean curvature with the convention M = -(1/2 h1 h2) d3(h1 h2), so the
/// sphere has M = -1/a. Only the combination M^2 - K enters the physics.
double mean_curvature(const SurfaceSpec& s, double q1, double q2);

double gaussian_curvature(const SurfaceSpec& s, double q1, double q2);

/// -(hbar^2/2m)(M^2 - K); the attractive confinement potential.
double geometric_potential(const SurfaceSpec& s, double q1, double q2,
                           const PhysicalConstants& pc = {});

CurvatureData curvature_data(const SurfaceSpec& s, double q1, double q2,
                             const PhysicalConstants& pc = {});

/// (1/2 h1 h2) d3(h1 h2) at the surface: the term that makes the normal
/// momentum Hermitian. Equals -mean_curvature identically.
double normal_momentum_correction(const SurfaceSpec& s, double q1, double q2);

/// Cartesian embedding r(q1, q2) of the surface point.
Vec3 surface_point(const SurfaceSpec& s, double q1, double q2);

SurfaceFrame frame(const SurfaceSpec& s, double q1, double q2);

namespace detail {
/// Throws SingularPointError when (q1, q2) sits on a coordinate
/// singularity of the surface (sphere poles).
void require_regular_point(const SurfaceSpec& s, double q1, double q2);
}  // namespace detail

}  // namespace curvham
