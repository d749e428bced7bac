#include "curvham/geometry.hpp"

#include <cmath>
#include <string>

namespace curvham {

namespace {

constexpr double kPoleTol = 1e-12;

[[noreturn]] void bad_kind() { throw ConfigError("unsupported surface kind"); }

}  // namespace

const char* to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Ring: return "ring";
    case SurfaceKind::Cylinder: return "cylinder";
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Torus: return "torus";
  }
  bad_kind();
}

SurfaceSpec SurfaceSpec::ring(double a) {
  if (!(a > 0.0)) throw ConfigError("ring radius must be positive, got a=" + std::to_string(a));
  SurfaceSpec s;
  s.kind = SurfaceKind::Ring;
  s.a = a;
  return s;
}

SurfaceSpec SurfaceSpec::cylinder(double a, double L) {
  if (!(a > 0.0)) throw ConfigError("cylinder radius must be positive, got a=" + std::to_string(a));
  if (!(L >= 0.0)) throw ConfigError("cylinder axial extent must be non-negative");
  SurfaceSpec s;
  s.kind = SurfaceKind::Cylinder;
  s.a = a;
  s.L = L;
  return s;
}

SurfaceSpec SurfaceSpec::sphere(double a) {
  if (!(a > 0.0)) throw ConfigError("sphere radius must be positive, got a=" + std::to_string(a));
  SurfaceSpec s;
  s.kind = SurfaceKind::Sphere;
  s.a = a;
  return s;
}

SurfaceSpec SurfaceSpec::torus(double R, double r) {
  if (!(R > r && r > 0.0))
    throw ConfigError("torus requires R > r > 0 (no self-intersection), got R=" +
                      std::to_string(R) + " r=" + std::to_string(r));
  SurfaceSpec s;
  s.kind = SurfaceKind::Torus;
  s.R = R;
  s.r = r;
  return s;
}

int frame_orientation(SurfaceKind kind) {
  return kind == SurfaceKind::Torus ? -1 : +1;
}

void detail::require_regular_point(const SurfaceSpec& s, double q1, double /*q2*/) {
  if (s.kind == SurfaceKind::Sphere && std::abs(std::sin(q1)) < kPoleTol)
    throw SingularPointError("sphere pole theta=" + std::to_string(q1) +
                             " is a coordinate singularity");
}

ScaleFactors scale_factors(const SurfaceSpec& s, double q1, double /*q2*/, double q3) {
  ScaleFactors h;
  switch (s.kind) {
    case SurfaceKind::Ring:
    case SurfaceKind::Cylinder:
      h.h1 = s.a + q3;
      h.h2 = 1.0;
      return h;
    case SurfaceKind::Sphere:
      h.h1 = s.a + q3;
      h.h2 = (s.a + q3) * std::sin(q1);
      return h;
    case SurfaceKind::Torus:
      h.h1 = s.r + q3;
      h.h2 = s.R + (s.r + q3) * std::cos(q1);
      return h;
  }
  bad_kind();
}

double mean_curvature(const SurfaceSpec& s, double q1, double q2) {
  detail::require_regular_point(s, q1, q2);
  switch (s.kind) {
    case SurfaceKind::Ring:
    case SurfaceKind::Cylinder:
      return -1.0 / (2.0 * s.a);
    case SurfaceKind::Sphere:
      return -1.0 / s.a;
    case SurfaceKind::Torus:
      return -(s.R + 2.0 * s.r * std::cos(q1)) /
             (2.0 * s.r * (s.R + s.r * std::cos(q1)));
  }
  bad_kind();
}

double gaussian_curvature(const SurfaceSpec& s, double q1, double q2) {
  detail::require_regular_point(s, q1, q2);
  switch (s.kind) {
    case SurfaceKind::Ring:
    case SurfaceKind::Cylinder:
      return 0.0;
    case SurfaceKind::Sphere:
      return 1.0 / (s.a * s.a);
    case SurfaceKind::Torus:
      return std::cos(q1) / (s.r * (s.R + s.r * std::cos(q1)));
  }
  bad_kind();
}

double geometric_potential(const SurfaceSpec& s, double q1, double q2,
                           const PhysicalConstants& pc) {
  const double M = mean_curvature(s, q1, q2);
  const double K = gaussian_curvature(s, q1, q2);
  return -pc.hbar * pc.hbar / (2.0 * pc.mass) * (M * M - K);
}

CurvatureData curvature_data(const SurfaceSpec& s, double q1, double q2,
                             const PhysicalConstants& pc) {
  CurvatureData c;
  c.M = mean_curvature(s, q1, q2);
  c.K = gaussian_curvature(s, q1, q2);
  c.gke = -pc.hbar * pc.hbar / (2.0 * pc.mass) * (c.M * c.M - c.K);
  return c;
}

double normal_momentum_correction(const SurfaceSpec& s, double q1, double q2) {
  detail::require_regular_point(s, q1, q2);
  // (h2 d3h1 + h1 d3h2) / (2 h1 h2) evaluated on the surface, built from
  // the per-kind normal derivatives of the scale factors.
  double h1, h2, d3h1, d3h2;
  switch (s.kind) {
    case SurfaceKind::Ring:
    case SurfaceKind::Cylinder:
      h1 = s.a; h2 = 1.0; d3h1 = 1.0; d3h2 = 0.0;
      break;
    case SurfaceKind::Sphere:
      h1 = s.a; h2 = s.a * std::sin(q1); d3h1 = 1.0; d3h2 = std::sin(q1);
      break;
    case SurfaceKind::Torus:
      h1 = s.r; h2 = s.R + s.r * std::cos(q1); d3h1 = 1.0; d3h2 = std::cos(q1);
      break;
    default:
      bad_kind();
  }
  return (h2 * d3h1 + h1 * d3h2) / (2.0 * h1 * h2);
}

Vec3 surface_point(const SurfaceSpec& s, double q1, double q2) {
  switch (s.kind) {
    case SurfaceKind::Ring:
      return {s.a * std::cos(q1), s.a * std::sin(q1), 0.0};
    case SurfaceKind::Cylinder:
      return {s.a * std::cos(q1), s.a * std::sin(q1), q2};
    case SurfaceKind::Sphere:
      return {s.a * std::sin(q1) * std::cos(q2), s.a * std::sin(q1) * std::sin(q2),
              s.a * std::cos(q1)};
    case SurfaceKind::Torus: {
      const double w = s.R + s.r * std::cos(q1);
      return {w * std::cos(q2), w * std::sin(q2), s.r * std::sin(q1)};
    }
  }
  bad_kind();
}

SurfaceFrame frame(const SurfaceSpec& s, double q1, double q2) {
  detail::require_regular_point(s, q1, q2);
  SurfaceFrame f;
  const double c1 = std::cos(q1), s1 = std::sin(q1);
  const double c2 = std::cos(q2), s2 = std::sin(q2);
  switch (s.kind) {
    case SurfaceKind::Ring:
    case SurfaceKind::Cylinder:
      f.e1 = {-s1, c1, 0.0};
      f.e2 = {0.0, 0.0, 1.0};
      f.n = {c1, s1, 0.0};
      return f;
    case SurfaceKind::Sphere:
      f.e1 = {c1 * c2, c1 * s2, -s1};
      f.e2 = {-s2, c2, 0.0};
      f.n = {s1 * c2, s1 * s2, c1};
      return f;
    case SurfaceKind::Torus:
      f.e1 = {-s1 * c2, -s1 * s2, c1};
      f.e2 = {-s2, c2, 0.0};
      f.n = {c1 * c2, c1 * s2, s1};
      return f;
  }
  bad_kind();
}

}  // namespace curvham
