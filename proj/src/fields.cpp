#include "curvham/fields.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace curvham {

namespace {

using std::numbers::pi;

int levi_civita(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;  // valid for indices in {0,1,2}
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

const Mat2c& sigma_x() {
  static const Mat2c m = (Mat2c() << 0, 1, 1, 0).finished();
  return m;
}
const Mat2c& sigma_y() {
  static const Mat2c m =
      (Mat2c() << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0).finished();
  return m;
}
const Mat2c& sigma_z() {
  static const Mat2c m = (Mat2c() << 1, 0, 0, -1).finished();
  return m;
}

PotentialSpec PotentialSpec::uniform_b(const Vec3& axis, double b0) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ConfigError("uniform_b axis must be a nonzero vector");
  if (std::abs(n - 1.0) > 1e-14 && b0 != 0.0) {
    // normalize silently only when exact; otherwise the caller made an error
    if (std::abs(n - 1.0) > 1e-9)
      throw ConfigError("uniform_b axis must have unit norm (got |axis|=" + fmt(n) + ")");
  }
  return {UniformB{axis / n, b0}};
}

PotentialSpec PotentialSpec::flux_line(double alpha) { return {FluxLine{alpha}}; }

PotentialSpec PotentialSpec::custom(TangentialSampler sampler) {
  if (!sampler) throw ConfigError("custom tangential potential requires a sampler");
  return {CustomTangential{std::move(sampler)}};
}

PotentialSpec PotentialSpec::none() { return {UniformB{Vec3(0, 0, 1), 0.0}}; }

std::string PotentialSpec::digest() const {
  if (const auto* u = as_uniform_b()) {
    std::ostringstream os;
    os << "uniform_b[" << u->axis.x() << "," << u->axis.y() << "," << u->axis.z()
       << "]x" << u->b0;
    return os.str();
  }
  if (const auto* f = as_flux_line()) return "flux_line(alpha=" + fmt(f->alpha) + ")";
  return "custom_tangential";
}

std::array<double, 2> project_potential(const PotentialSpec& p, const SurfaceSpec& s,
                                        double q1, double q2,
                                        const PhysicalConstants& pc) {
  if (const auto* u = p.as_uniform_b()) {
    const Vec3 B = u->b0 * u->axis;
    const Vec3 A = 0.5 * B.cross(surface_point(s, q1, q2));
    const SurfaceFrame f = frame(s, q1, q2);
    const double a3 = A.dot(f.n);  // normal component: discarded
    (void)a3;
    return {A.dot(f.e1), A.dot(f.e2)};
  }
  if (const auto* fl = p.as_flux_line()) {
    if (s.kind != SurfaceKind::Ring && s.kind != SurfaceKind::Cylinder)
      throw ConfigError(std::string("flux_line is not supported on a ") + to_string(s.kind) +
                        " (the line pierces the surface)");
    return {fl->alpha * pc.hbar / (pc.charge * s.a), 0.0};
  }
  const auto& c = std::get<CustomTangential>(p.value);
  auto A = c.sampler(q1, q2);
  if (!std::isfinite(A[0]) || !std::isfinite(A[1]))
    throw ConfigError("custom tangential potential is not finite at q1=" + fmt(q1) +
                      " q2=" + fmt(q2));
  return A;
}

namespace {

// 4th-order central difference along one coordinate.
double fd4(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

void check_periodic(const ScalarField& chi, const SurfaceSpec& s) {
  const double period = 2.0 * pi;
  auto bad = [&](double v, double vp, const char* axis) {
    if (std::abs(vp - v) > 1e-9 * (1.0 + std::abs(v)))
      throw GaugeFunctionError(std::string("gauge function is not single-valued along ") +
                               axis + " on a " + to_string(s.kind));
  };
  const double probes[] = {0.13, 1.71, 3.9, 5.2};
  switch (s.kind) {
    case SurfaceKind::Ring:
      for (double q : probes) bad(chi(q, 0.0), chi(q + period, 0.0), "theta");
      break;
    case SurfaceKind::Cylinder:
      for (double q : probes) bad(chi(q, 0.3), chi(q + period, 0.3), "theta");
      break;
    case SurfaceKind::Sphere:
      for (double q : probes) bad(chi(1.1, q), chi(1.1, q + period), "phi");
      break;
    case SurfaceKind::Torus:
      for (double q : probes) {
        bad(chi(q, 0.7), chi(q + period, 0.7), "theta");
        bad(chi(0.7, q), chi(0.7, q + period), "phi");
      }
      break;
  }
}

}  // namespace

PotentialSpec gauge_shift(const PotentialSpec& p, const SurfaceSpec& s, ScalarField chi,
                          GradientField grad, double fd_step, const PhysicalConstants& pc) {
  if (!chi) throw GaugeFunctionError("gauge_shift requires a gauge function");
  if (!(fd_step > 0.0)) throw GaugeFunctionError("fd_step must be positive");
  check_periodic(chi, s);

  auto sampler = [p, s, chi, grad, fd_step, pc](double q1, double q2) -> std::array<double, 2> {
    auto A = project_potential(p, s, q1, q2, pc);
    double g1, g2;
    if (grad) {
      auto g = grad(q1, q2);
      g1 = g[0];
      g2 = g[1];
    } else {
      g1 = fd4([&](double x) { return chi(x, q2); }, q1, fd_step);
      g2 = fd4([&](double x) { return chi(q1, x); }, q2, fd_step);
    }
    const ScaleFactors h = scale_factors(s, q1, q2, 0.0);
    return {A[0] + g1 / h.h1, A[1] + g2 / h.h2};
  };
  return PotentialSpec::custom(std::move(sampler));
}

SOCVector soc_from_efield(const Vec3& e_field, double g, const PhysicalConstants& pc) {
  if (g == 0.0) throw ConfigError("SOC coupling g must be nonzero");
  SOCVector w;
  w.g = g;
  const double pref = -pc.charge * pc.hbar / (2.0 * pc.mass * g);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) {
      double sum = 0.0;
      for (int j = 0; j < 3; ++j) sum += levi_civita(i, a, j) * e_field(j);
      w.W(i, a) = pref * sum;
    }
  return w;
}

Vec3 efield_from_soc(const SOCVector& w, const PhysicalConstants& pc) {
  Vec3 e = Vec3::Zero();
  const double pref = -pc.mass * w.g / (pc.charge * pc.hbar);
  for (int j = 0; j < 3; ++j) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a) sum += levi_civita(i, a, j) * w.W(i, a);
    e(j) = pref * sum;
  }
  return e;
}

std::pair<Mat2c, Mat2c> project_soc(const SOCVector& w, const SurfaceSpec& s,
                                    double q1, double q2) {
  const SurfaceFrame f = frame(s, q1, q2);
  const Vec3 w1 = w.W.transpose() * f.e1;  // component a: sum_i e1_i W(i,a)
  const Vec3 w2 = w.W.transpose() * f.e2;
  auto combine = [](const Vec3& c) -> Mat2c {
    return c.x() * sigma_x() + c.y() * sigma_y() + c.z() * sigma_z();
  };
  return {combine(w1), combine(w2)};
}

Vec3 MagneticFieldSpec::at(double q1, double q2) const {
  if (std::holds_alternative<Zero>(value)) return Vec3::Zero();
  if (const auto* c = std::get_if<Constant>(&value)) return c->B;
  return std::get<Sampled>(value).fn(q1, q2);
}

std::optional<MagneticFieldSpec> magnetic_field_for(const PotentialSpec& p) {
  if (const auto* u = p.as_uniform_b()) {
    if (u->b0 == 0.0) return MagneticFieldSpec::zero();
    return MagneticFieldSpec::constant(u->b0 * u->axis);
  }
  if (p.as_flux_line()) return MagneticFieldSpec::zero();  // B vanishes on the surface
  return std::nullopt;
}

Mat2c zeeman_matrix(const MagneticFieldSpec& b, double q1, double q2,
                    const PhysicalConstants& pc) {
  const Vec3 B = b.at(q1, q2);
  const double pref = -pc.charge * pc.hbar / (2.0 * pc.mass);
  return pref * (B.x() * sigma_x() + B.y() * sigma_y() + B.z() * sigma_z());
}

double ScalarPotential::at(double q1, double q2) const {
  if (!fn) return 0.0;
  const double v = fn(q1, q2);
  if (!std::isfinite(v))
    throw ConfigError("scalar potential is not finite at q1=" + fmt(q1) + " q2=" + fmt(q2));
  return v;
}

}  // namespace curvham
