#include "curvham/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvham/quadrature.hpp"

namespace curvham::oracle {

namespace {

using std::numbers::pi;

// merge raw (energy, label) pairs into ascending degenerate levels
AnalyticSpectrum merge_levels(std::vector<std::pair<double, std::string>> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  AnalyticSpectrum sp;
  for (const auto& [e, label] : raw) {
    if (!sp.levels.empty() &&
        std::abs(e - sp.levels.back().energy) <= 1e-12 * (1.0 + std::abs(e))) {
      sp.levels.back().degeneracy += 1;
      sp.levels.back().label += "," + label;
    } else {
      sp.levels.push_back({e, 1, label});
    }
  }
  return sp;
}

}  // namespace

std::vector<double> AnalyticSpectrum::lowest(std::size_t count) const {
  std::vector<double> out;
  for (const AnalyticLevel& lvl : levels)
    for (int d = 0; d < lvl.degeneracy && out.size() < count; ++d)
      out.push_back(lvl.energy);
  return out;
}

AnalyticSpectrum ring_spectrum(double a, double alpha, int n_max,
                               const PhysicalConstants& pc) {
  if (n_max < 0) throw ConfigError("ring_spectrum requires n_max >= 0");
  const double unit = pc.hbar * pc.hbar / (2.0 * pc.mass * a * a);
  std::vector<std::pair<double, std::string>> raw;
  for (int n = -n_max; n <= n_max; ++n)
    raw.emplace_back(unit * ((n - alpha) * (n - alpha) - 0.25), "n=" + std::to_string(n));
  return merge_levels(std::move(raw));
}

AnalyticSpectrum cylinder_spectrum(double a, double L, double alpha, int n_max, int j_max,
                                   const PhysicalConstants& pc) {
  if (n_max < 0 || j_max < 1) throw ConfigError("cylinder_spectrum needs n_max >= 0, j_max >= 1");
  if (!(L > 0.0)) throw ConfigError("cylinder_spectrum needs L > 0");
  const double unit = pc.hbar * pc.hbar / (2.0 * pc.mass * a * a);
  const double axial = pc.hbar * pc.hbar / (2.0 * pc.mass);
  std::vector<std::pair<double, std::string>> raw;
  for (int n = -n_max; n <= n_max; ++n)
    for (int j = 1; j <= j_max; ++j) {
      const double e =
          unit * ((n - alpha) * (n - alpha) - 0.25) + axial * (j * pi / L) * (j * pi / L);
      raw.emplace_back(e, "n=" + std::to_string(n) + ";j=" + std::to_string(j));
    }
  return merge_levels(std::move(raw));
}

AnalyticSpectrum sphere_spectrum(double a, int l_max, const PhysicalConstants& pc) {
  if (l_max < 0) throw ConfigError("sphere_spectrum requires l_max >= 0");
  const double unit = pc.hbar * pc.hbar / (2.0 * pc.mass * a * a);
  AnalyticSpectrum sp;
  for (int l = 0; l <= l_max; ++l)
    sp.levels.push_back({unit * l * (l + 1), 2 * l + 1, "l=" + std::to_string(l)});
  return sp;
}

double sphere_uniform_b_first_order(double a, double B0, int l, int m,
                                    const PhysicalConstants& pc, int quad_order) {
  if (l < 0 || std::abs(m) > l)
    throw ConfigError("sphere_uniform_b_first_order requires 0 <= |m| <= l");
  const unsigned mu = static_cast<unsigned>(std::abs(m));

  // <Y_lm| (i hbar e / m) (1/h2) A_phi d_phi |Y_lm> with A_phi = B0 a sin(theta)/2;
  // d_phi acts as i m and the phi integral gives 2 pi.
  auto angular = [&](int order) {
    const GaussLegendre gl(order);
    return 2.0 * pi * gl.integrate(0.0, pi, [&](double th) {
             const double y = std::sph_legendre(static_cast<unsigned>(l), mu, th);
             const double a_over_h2 = 0.5 * B0;  // A_phi / h2, independent of theta here
             return y * y * a_over_h2 * std::sin(th);
           });
  };
  const double i1 = angular(quad_order);
  const double i2 = angular(2 * quad_order);
  if (std::abs(i2 - i1) > 1e-12 * (1.0 + std::abs(i2)))
    throw SolverError("sphere first-order quadrature did not converge");

  return -(pc.charge * pc.hbar * m / pc.mass) * i2;
}

std::pair<double, double> embedding_curvatures(const SurfaceSpec& s, double q1, double q2) {
  detail::require_regular_point(s, q1, q2);
  Vec3 r1, r2, r11, r12, r22;
  const double c1 = std::cos(q1), s1 = std::sin(q1);
  const double c2 = std::cos(q2), s2 = std::sin(q2);
  switch (s.kind) {
    case SurfaceKind::Ring:
    case SurfaceKind::Cylinder: {
      const double a = s.a;
      r1 = {-a * s1, a * c1, 0.0};
      r2 = {0.0, 0.0, 1.0};
      r11 = {-a * c1, -a * s1, 0.0};
      r12 = Vec3::Zero();
      r22 = Vec3::Zero();
      break;
    }
    case SurfaceKind::Sphere: {
      const double a = s.a;
      r1 = {a * c1 * c2, a * c1 * s2, -a * s1};
      r2 = {-a * s1 * s2, a * s1 * c2, 0.0};
      r11 = {-a * s1 * c2, -a * s1 * s2, -a * c1};
      r12 = {-a * c1 * s2, a * c1 * c2, 0.0};
      r22 = {-a * s1 * c2, -a * s1 * s2, 0.0};
      break;
    }
    case SurfaceKind::Torus: {
      const double w = s.R + s.r * c1;
      r1 = {-s.r * s1 * c2, -s.r * s1 * s2, s.r * c1};
      r2 = {-w * s2, w * c2, 0.0};
      r11 = {-s.r * c1 * c2, -s.r * c1 * s2, -s.r * s1};
      r12 = {s.r * s1 * s2, -s.r * s1 * c2, 0.0};
      r22 = {-w * c2, -w * s2, 0.0};
      break;
    }
    default:
      throw ConfigError("unsupported surface kind");
  }
  const Vec3 n = (frame_orientation(s.kind) * r1.cross(r2)).normalized();
  const double E = r1.dot(r1), F = r1.dot(r2), G = r2.dot(r2);
  const double L = n.dot(r11), Mff = n.dot(r12), N = n.dot(r22);
  const double det = E * G - F * F;
  const double K = (L * N - Mff * Mff) / det;
  const double M = (E * N - 2.0 * F * Mff + G * L) / (2.0 * det);
  return {M, K};
}

double soc_divergence_identity_residual(const SurfaceSpec& s, const SOCVector& w,
                                        const LatticeGrid& grid) {
  double worst = 0.0;
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) {
      const double q1 = grid.q1[i];
      const double q2 = grid.q2[j];
      Vec3 div_vec;  // d1(h2 e1) + d2(h1 e2), analytic per surface kind
      double h1h2;
      const double c1 = std::cos(q1), s1 = std::sin(q1);
      const double c2 = std::cos(q2), s2 = std::sin(q2);
      switch (s.kind) {
        case SurfaceKind::Ring:
        case SurfaceKind::Cylinder:
          div_vec = Vec3(-c1, -s1, 0.0);  // d_theta e_theta; z leg is constant
          h1h2 = s.a;
          break;
        case SurfaceKind::Sphere: {
          detail::require_regular_point(s, q1, q2);
          const Vec3 e_theta(c1 * c2, c1 * s2, -s1);
          const Vec3 n(s1 * c2, s1 * s2, c1);
          div_vec = s.a * c1 * e_theta - s.a * s1 * n + s.a * Vec3(-c2, -s2, 0.0);
          h1h2 = s.a * s.a * s1;
          break;
        }
        case SurfaceKind::Torus: {
          const double wrad = s.R + s.r * c1;
          const Vec3 e_theta(-s1 * c2, -s1 * s2, c1);
          const Vec3 n(c1 * c2, c1 * s2, s1);
          div_vec = -s.r * s1 * e_theta - wrad * n + s.r * Vec3(-c2, -s2, 0.0);
          h1h2 = s.r * wrad;
          break;
        }
        default:
          throw ConfigError("unsupported surface kind");
      }
      const double M = mean_curvature(s, q1, q2);
      const SurfaceFrame f = frame(s, q1, q2);
      for (int a = 0; a < 3; ++a) {
        const Vec3 col = w.W.col(a);  // W_i^a over space index i
        const double lhs = div_vec.dot(col) / (2.0 * h1h2);
        const double rhs = M * f.n.dot(col);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  return worst;
}

}  // namespace curvham::oracle
