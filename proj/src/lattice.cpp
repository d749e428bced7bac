#include "curvham/lattice.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "curvham/quadrature.hpp"

namespace curvham {

namespace {

using std::numbers::pi;
using Triplet = Eigen::Triplet<Complex>;

void require_min_points(int n, int min, const char* axis) {
  if (n < min)
    throw ConfigError(std::string(axis) + " needs at least " + std::to_string(min) +
                      " points, got " + std::to_string(n));
}

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

LatticeGrid build_grid(const SurfaceSpec& s, int N1, int N2,
                       std::optional<AxisTopology> bc2) {
  if (bc2 && s.kind != SurfaceKind::Cylinder)
    throw ConfigError("boundary override is only meaningful for the cylinder axial axis");

  LatticeGrid g;
  g.surface = s;

  switch (s.kind) {
    case SurfaceKind::Ring:
      require_min_points(N1, 4, "ring theta axis");
      g.n1 = N1;
      g.n2 = 1;
      g.dq1 = 2.0 * pi / N1;
      g.dq2 = 1.0;  // no second axis; weights carry a unit factor
      g.topo1 = AxisTopology::Periodic;
      g.topo2 = AxisTopology::None;
      g.q2 = {0.0};
      break;
    case SurfaceKind::Cylinder: {
      require_min_points(N1, 4, "cylinder theta axis");
      g.n1 = N1;
      g.n2 = N2;
      g.dq1 = 2.0 * pi / N1;
      g.topo1 = AxisTopology::Periodic;
      g.topo2 = bc2.value_or(AxisTopology::Dirichlet);
      if (g.topo2 == AxisTopology::Dirichlet) {
        require_min_points(N2, 2, "cylinder z axis (interior nodes)");
        if (!(s.L > 0.0)) throw ConfigError("cylinder with box boundary requires L > 0");
        g.dq2 = s.L / (N2 + 1);
        for (int j = 0; j < N2; ++j) g.q2.push_back((j + 1) * g.dq2);
      } else if (g.topo2 == AxisTopology::Periodic) {
        require_min_points(N2, 4, "cylinder periodic z axis");
        if (!(s.L > 0.0)) throw ConfigError("periodic cylinder requires L > 0");
        g.dq2 = s.L / N2;
        for (int j = 0; j < N2; ++j) g.q2.push_back(j * g.dq2);
      } else {
        throw ConfigError("cylinder z axis must be dirichlet or periodic");
      }
      break;
    }
    case SurfaceKind::Sphere:
      require_min_points(N1, 4, "sphere theta axis");
      require_min_points(N2, 4, "sphere phi axis");
      g.n1 = N1;
      g.n2 = N2;
      g.dq1 = pi / N1;
      g.dq2 = 2.0 * pi / N2;
      g.topo1 = AxisTopology::PoleCap;
      g.topo2 = AxisTopology::Periodic;
      for (int j = 0; j < N2; ++j) g.q2.push_back(j * g.dq2);
      break;
    case SurfaceKind::Torus:
      require_min_points(N1, 4, "torus theta axis");
      require_min_points(N2, 4, "torus phi axis");
      g.n1 = N1;
      g.n2 = N2;
      g.dq1 = 2.0 * pi / N1;
      g.dq2 = 2.0 * pi / N2;
      g.topo1 = AxisTopology::Periodic;
      g.topo2 = AxisTopology::Periodic;
      for (int j = 0; j < N2; ++j) g.q2.push_back(j * g.dq2);
      break;
  }

  for (int i = 0; i < g.n1; ++i) {
    // staggered colatitude keeps every node away from the poles
    const double q = (g.topo1 == AxisTopology::PoleCap) ? (i + 0.5) * g.dq1 : i * g.dq1;
    g.q1.push_back(q);
  }

  g.weights.resize(g.n());
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const ScaleFactors h = scale_factors(s, g.q1[i], g.q2[j], 0.0);
      const double w = h.h1 * h.h2 * g.dq1 * g.dq2;
      if (!(w > 0.0))
        throw ConfigError("non-positive integration weight at grid node (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      g.weights(g.index(i, j)) = w;
    }
  return g;
}

LinkField link_phases(const LatticeGrid& g, const PotentialSpec& p, int quad_order,
                      const PhysicalConstants& pc) {
  if (quad_order < 1) throw ConfigError("link quadrature order must be >= 1");
  LinkField lf;
  lf.n1 = g.n1;
  lf.n2 = g.n2;
  lf.U1 = Eigen::MatrixXcd::Ones(g.n1, g.n2);
  lf.U2 = Eigen::MatrixXcd::Ones(g.n1, g.n2);

  const GaussLegendre gl(quad_order);
  const double e_over_hbar = pc.charge / pc.hbar;
  const SurfaceSpec& s = g.surface;

  // direction 1 edges (i, j) -> (i+1, j)
  const int i_max = (g.topo1 == AxisTopology::Periodic) ? g.n1 : g.n1 - 1;
  for (int i = 0; i < i_max; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const double q2 = g.q2[j];
      const double phase = e_over_hbar *
          gl.integrate(g.q1[i], g.q1[i] + g.dq1, [&](double q) {
            return project_potential(p, s, q, q2, pc)[0] * scale_factors(s, q, q2, 0.0).h1;
          });
      lf.U1(i, j) = std::polar(1.0, phase);
    }

  // direction 2 edges (i, j) -> (i, j+1)
  if (g.topo2 != AxisTopology::None) {
    const int j_max = (g.topo2 == AxisTopology::Periodic) ? g.n2 : g.n2 - 1;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < j_max; ++j) {
        const double q1 = g.q1[i];
        const double phase = e_over_hbar *
            gl.integrate(g.q2[j], g.q2[j] + g.dq2, [&](double q) {
              return project_potential(p, s, q1, q, pc)[1] * scale_factors(s, q1, q, 0.0).h2;
            });
        lf.U2(i, j) = std::polar(1.0, phase);
      }
  }
  return lf;
}

LinkField site_gauge_transform(const LatticeGrid& g, const LinkField& links,
                               const std::vector<double>& chi_sites) {
  if (static_cast<int>(chi_sites.size()) != g.n())
    throw DimensionError("site phase field size " + std::to_string(chi_sites.size()) +
                         " does not match grid size " + std::to_string(g.n()));
  LinkField out = links;
  auto phase = [&](int i, int j) { return chi_sites[g.index(i, j)]; };
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      if (g.topo1 == AxisTopology::Periodic || i + 1 < g.n1) {
        const int ip = (i + 1) % g.n1;
        out.U1(i, j) = std::polar(1.0, phase(ip, j)) * links.U1(i, j) *
                       std::polar(1.0, -phase(i, j));
      }
      if (g.topo2 == AxisTopology::Periodic || (g.topo2 != AxisTopology::None && j + 1 < g.n2)) {
        const int jp = (j + 1) % g.n2;
        out.U2(i, j) = std::polar(1.0, phase(i, jp)) * links.U2(i, j) *
                       std::polar(1.0, -phase(i, j));
      }
    }
  return out;
}

SurfaceOperator::SurfaceOperator(LatticeGrid grid, SparseMatrixXc matrix, OperatorMetadata meta)
    : grid_(std::move(grid)), matrix_(std::move(matrix)), meta_(std::move(meta)) {}

double SurfaceOperator::scale() const {
  if (scale_ >= 0.0) return scale_;
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(matrix_.rows());
  for (int k = 0; k < matrix_.outerSize(); ++k)
    for (SparseMatrixXc::InnerIterator it(matrix_, k); it; ++it)
      row_sums(it.row()) += std::abs(it.value());
  scale_ = row_sums.maxCoeff();
  return scale_;
}

double SurfaceOperator::hermiticity_residual() const {
  SparseMatrixXc diff = matrix_ - SparseMatrixXc(matrix_.adjoint());
  double m = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrixXc::InnerIterator it(diff, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

void SurfaceOperator::write_coo(std::ostream& os) const {
  for (int k = 0; k < matrix_.outerSize(); ++k)
    for (SparseMatrixXc::InnerIterator it(matrix_, k); it; ++it)
      os << it.row() << ' ' << it.col() << ' ' << shortest(it.value().real()) << ' '
         << shortest(it.value().imag()) << '\n';
}

namespace {

struct EdgeRef {
  int from;      // node index
  int to;        // node index
  Complex hop;   // transport applied to psi(to) when differencing at `from`
  double coeff;  // (hbar^2/2m) (h_other/h_k) dq_other/dq_k at the edge midpoint
};

// Kinetic edges of the 2nd-order divergence-form stencil. Dirichlet wall
// edges are returned with to = -1 (diagonal contribution only). The sphere
// pole caps carry zero flux (h2 -> 0) so no edge is emitted there.
void collect_edges(const LatticeGrid& g, const LinkField& links, const PhysicalConstants& pc,
                   std::vector<EdgeRef>& edges) {
  const SurfaceSpec& s = g.surface;
  const double kin = pc.hbar * pc.hbar / (2.0 * pc.mass);

  auto h_at = [&](double q1, double q2) { return scale_factors(s, q1, q2, 0.0); };

  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const int p = g.index(i, j);
      // direction 1
      if (g.topo1 == AxisTopology::Periodic || i + 1 < g.n1) {
        const ScaleFactors h = h_at(g.q1[i] + 0.5 * g.dq1, g.q2[j]);
        const double c = kin * (h.h2 / h.h1) * (g.dq2 / g.dq1);
        edges.push_back({p, g.index((i + 1) % g.n1, j), std::conj(links.U1(i, j)), c});
      }
      // direction 2
      if (g.topo2 == AxisTopology::Periodic || (g.topo2 != AxisTopology::None && j + 1 < g.n2)) {
        const ScaleFactors h = h_at(g.q1[i], g.q2[j] + 0.5 * g.dq2);
        const double c = kin * (h.h1 / h.h2) * (g.dq1 / g.dq2);
        edges.push_back({p, g.index(i, (j + 1) % g.n2), std::conj(links.U2(i, j)), c});
      }
      if (g.topo2 == AxisTopology::Dirichlet) {
        // wall edges pin psi to zero just outside the interval
        if (j == 0) {
          const ScaleFactors h = h_at(g.q1[i], g.q2[j] - 0.5 * g.dq2);
          edges.push_back({p, -1, Complex(0, 0), kin * (h.h1 / h.h2) * (g.dq1 / g.dq2)});
        }
        if (j == g.n2 - 1) {
          const ScaleFactors h = h_at(g.q1[i], g.q2[j] + 0.5 * g.dq2);
          edges.push_back({p, -1, Complex(0, 0), kin * (h.h1 / h.h2) * (g.dq1 / g.dq2)});
        }
      }
    }
}

// Spin-0 triplets in the symmetrized basis. Shared verbatim by the Pauli
// assembly so that a vanishing spin sector reproduces the spin-0 matrix
// bit for bit.
std::vector<Triplet> spin0_triplets(const LatticeGrid& g, const LinkField& links,
                                    const ScalarPotential& V, const PhysicalConstants& pc) {
  const SurfaceSpec& s = g.surface;
  const int n = g.n();
  std::vector<Triplet> trips;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);

  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const int p = g.index(i, j);
      diag(p) = geometric_potential(s, g.q1[i], g.q2[j], pc) + V.at(g.q1[i], g.q2[j]);
    }

  if (s.kind == SurfaceKind::Ring) {
    // single periodic axis, constant scale factor: 5-point 4th-order stencil
    // with composite transports; dispersion error (n alpha)^6 dq^4 / 90.
    const double k0 = pc.hbar * pc.hbar / (2.0 * pc.mass * s.a * s.a * g.dq1 * g.dq1);
    const int n1 = g.n1;
    for (int i = 0; i < n1; ++i) {
      diag(i) += k0 * 30.0 / 12.0;
      const int i1 = (i + 1) % n1;
      const int i2 = (i + 2) % n1;
      const Complex t1 = std::conj(links.U1(i, 0));
      const Complex t2 = std::conj(links.U1(i, 0) * links.U1(i1, 0));
      const Complex v1 = -k0 * 16.0 / 12.0 * t1;
      const Complex v2 = k0 * 1.0 / 12.0 * t2;
      trips.emplace_back(i, i1, v1);
      trips.emplace_back(i1, i, std::conj(v1));
      trips.emplace_back(i, i2, v2);
      trips.emplace_back(i2, i, std::conj(v2));
    }
  } else {
    std::vector<EdgeRef> edges;
    collect_edges(g, links, pc, edges);
    for (const EdgeRef& e : edges) {
      diag(e.from) += e.coeff / g.weights(e.from);
      if (e.to < 0) continue;
      diag(e.to) += e.coeff / g.weights(e.to);
      const Complex v = -e.coeff * e.hop / std::sqrt(g.weights(e.from) * g.weights(e.to));
      trips.emplace_back(e.from, e.to, v);
      trips.emplace_back(e.to, e.from, std::conj(v));
    }
  }

  for (int p = 0; p < n; ++p) trips.emplace_back(p, p, Complex(diag(p), 0.0));
  return trips;
}

OperatorMetadata make_meta(const LatticeGrid& g, const std::string& digest, int spin,
                           const PhysicalConstants& pc) {
  OperatorMetadata m;
  m.surface = g.surface;
  m.field_digest = digest;
  m.n1 = g.n1;
  m.n2 = g.n2;
  m.stencil_order = g.surface.kind == SurfaceKind::Ring ? 4 : 2;
  m.spin_components = spin;
  m.pc = pc;
  return m;
}

void check_dim(long dim, int max_dim) {
  if (dim > max_dim)
    throw ConfigError("operator dimension " + std::to_string(dim) +
                      " exceeds the configured maximum " + std::to_string(max_dim));
}

}  // namespace

SurfaceOperator assemble_spin0(const LatticeGrid& g, const LinkField& links,
                               const ScalarPotential& V, const PhysicalConstants& pc,
                               int max_dim) {
  if (links.n1 != g.n1 || links.n2 != g.n2)
    throw DimensionError("link field does not match grid dimensions");
  check_dim(g.n(), max_dim);
  auto trips = spin0_triplets(g, links, V, pc);
  SparseMatrixXc H(g.n(), g.n());
  H.setFromTriplets(trips.begin(), trips.end());
  H.makeCompressed();
  return SurfaceOperator(g, std::move(H), make_meta(g, "spin0", 1, pc));
}

SurfaceOperator assemble_pauli(const LatticeGrid& g, const LinkField& links,
                               const SOCVector& soc, const MagneticFieldSpec& b,
                               const ScalarPotential& V, const PhysicalConstants& pc,
                               int max_dim) {
  if (links.n1 != g.n1 || links.n2 != g.n2)
    throw DimensionError("link field does not match grid dimensions");
  const int n = g.n();
  check_dim(2L * n, max_dim);
  const SurfaceSpec& s = g.surface;

  std::vector<Triplet> trips;
  {
    auto base = spin0_triplets(g, links, V, pc);
    trips.reserve(2 * base.size());
    for (const Triplet& t : base) {
      trips.emplace_back(t.row(), t.col(), t.value());
      trips.emplace_back(t.row() + n, t.col() + n, t.value());
    }
  }

  // Zeeman term: block-diagonal in position.
  if (!b.is_zero()) {
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) {
        const int p = g.index(i, j);
        const Mat2c z = zeeman_matrix(b, g.q1[i], g.q2[j], pc);
        for (int so = 0; so < 2; ++so)
          for (int si = 0; si < 2; ++si)
            if (z(so, si) != Complex(0, 0))
              trips.emplace_back(so * n + p, si * n + p, z(so, si));
      }
  }

  if (!soc.is_zero()) {
    // -(g^2/2m) W'.W': the tangential square is a scalar since the Pauli
    // anticommutator kills the cross terms.
    const double wsq_pref = -soc.g * soc.g / (2.0 * pc.mass);
    // first-order term (i hbar g / m) W_k D_k with link-covariant central
    // differences, Hermitized afterwards as (X + X^dag)/2.
    const Complex soc_pref = Complex(0.0, 1.0) * pc.hbar * soc.g / pc.mass;

    std::vector<Triplet> xt;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) {
        const int p = g.index(i, j);
        const auto [w1, w2] = project_soc(soc, s, g.q1[i], g.q2[j]);
        const SurfaceFrame f = frame(s, g.q1[i], g.q2[j]);
        const Vec3 c1 = soc.W.transpose() * f.e1;
        const Vec3 c2 = soc.W.transpose() * f.e2;
        const double wsq = wsq_pref * (c1.squaredNorm() + c2.squaredNorm());
        for (int sc = 0; sc < 2; ++sc)
          trips.emplace_back(sc * n + p, sc * n + p, Complex(wsq, 0.0));

        const ScaleFactors h = scale_factors(s, g.q1[i], g.q2[j], 0.0);
        struct Leg {
          const Mat2c* w;
          double hk;
          int fi, fj;        // forward neighbor (or -1)
          Complex fwd;       // transport of psi(forward) to p
          int bi, bj;        // backward neighbor (or -1)
          Complex bwd;       // transport of psi(backward) to p
        };
        std::vector<Leg> legs;
        {
          Leg l1{&w1, h.h1, -1, -1, Complex(1, 0), -1, -1, Complex(1, 0)};
          if (g.topo1 == AxisTopology::Periodic || i + 1 < g.n1) {
            l1.fi = (i + 1) % g.n1;
            l1.fj = j;
            l1.fwd = std::conj(links.U1(i, j));
          }
          if (g.topo1 == AxisTopology::Periodic || i > 0) {
            l1.bi = (i + g.n1 - 1) % g.n1;
            l1.bj = j;
            l1.bwd = links.U1(l1.bi, j);
          }
          legs.push_back(l1);
        }
        if (g.topo2 != AxisTopology::None) {
          Leg l2{&w2, h.h2, -1, -1, Complex(1, 0), -1, -1, Complex(1, 0)};
          if (g.topo2 == AxisTopology::Periodic || j + 1 < g.n2) {
            l2.fi = i;
            l2.fj = (j + 1) % g.n2;
            l2.fwd = std::conj(links.U2(i, j));
          }
          if (g.topo2 == AxisTopology::Periodic || j > 0) {
            l2.bi = i;
            l2.bj = (j + g.n2 - 1) % g.n2;
            l2.bwd = links.U2(i, l2.bj);
          }
          legs.push_back(l2);
        }

        const double dq[2] = {g.dq1, g.dq2};
        for (std::size_t leg_idx = 0; leg_idx < legs.size(); ++leg_idx) {
          const Leg& leg = legs[leg_idx];
          const Complex pref = soc_pref / (2.0 * leg.hk * dq[leg_idx]);
          auto add_block = [&](int qi, int qj, const Complex& transport, double sign) {
            if (qi < 0) return;
            const int q = g.index(qi, qj);
            const double flat = std::sqrt(g.weights(p) / g.weights(q));
            const Complex factor = sign * pref * transport * flat;
            for (int so = 0; so < 2; ++so)
              for (int si = 0; si < 2; ++si) {
                const Complex v = factor * (*leg.w)(so, si);
                if (v != Complex(0, 0)) xt.emplace_back(so * n + p, si * n + q, v);
              }
          };
          add_block(leg.fi, leg.fj, leg.fwd, +1.0);
          add_block(leg.bi, leg.bj, leg.bwd, -1.0);
        }
      }

    SparseMatrixXc X(2 * n, 2 * n);
    X.setFromTriplets(xt.begin(), xt.end());
    SparseMatrixXc Xh = SparseMatrixXc(X.adjoint());
    SparseMatrixXc sym = 0.5 * (X + Xh);
    for (int k = 0; k < sym.outerSize(); ++k)
      for (SparseMatrixXc::InnerIterator it(sym, k); it; ++it)
        trips.emplace_back(it.row(), it.col(), it.value());
  }

  SparseMatrixXc H(2 * n, 2 * n);
  H.setFromTriplets(trips.begin(), trips.end());
  H.makeCompressed();
  auto meta = make_meta(g, "pauli", 2, pc);
  return SurfaceOperator(g, std::move(H), std::move(meta));
}

Complex inner_product(const LatticeGrid& g, const Eigen::VectorXcd& psi,
                      const Eigen::VectorXcd& phi) {
  const int n = g.n();
  if (psi.size() != phi.size())
    throw DimensionError("inner_product: state sizes differ");
  if (psi.size() != n && psi.size() != 2 * n)
    throw DimensionError("inner_product: state size " + std::to_string(psi.size()) +
                         " does not match grid size " + std::to_string(n));
  Complex sum = 0.0;
  const int spin = static_cast<int>(psi.size()) / n;
  for (int sc = 0; sc < spin; ++sc)
    for (int p = 0; p < n; ++p)
      sum += g.weights(p) * std::conj(psi(sc * n + p)) * phi(sc * n + p);
  return sum;
}

}  // namespace curvham
