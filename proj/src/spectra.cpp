#include "curvham/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <lapacke.h>

namespace curvham {

namespace {

// deterministic start vectors, independent of library RNG internals
struct SplitMix64 {
  uint64_t state;
  double next() {  // uniform in [-1, 1)
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
  }
};

Eigen::VectorXcd random_start(int n, uint64_t seed) {
  SplitMix64 rng{seed};
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) {
    const double re = rng.next();
    const double im = rng.next();
    v(i) = Complex(re, im);
  }
  v.normalize();
  return v;
}

struct FlatPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // flat (symmetrized) basis
  int matvecs = 0;
};

FlatPairs dense_lowest(const SparseMatrixXc& H, int k) {
  const int n = static_cast<int>(H.rows());
  Eigen::MatrixXcd A = Eigen::MatrixXcd(H);

  std::vector<double> d(n), e(std::max(n - 1, 1));
  std::vector<Complex> tau(std::max(n - 1, 1));
  int info = LAPACKE_zhetrd(LAPACK_COL_MAJOR, 'L', n,
                            reinterpret_cast<lapack_complex_double*>(A.data()), n, d.data(),
                            e.data(), reinterpret_cast<lapack_complex_double*>(tau.data()));
  if (info != 0) throw SolverError("zhetrd failed with info=" + std::to_string(info));

  std::vector<double> w = d, e_work = e;
  info = LAPACKE_dsterf(n, w.data(), e_work.data());
  if (info != 0)
    throw SolverError("implicit-shift QL failed to converge (dsterf info=" +
                      std::to_string(info) + ")");

  FlatPairs out;
  out.values = Eigen::Map<Eigen::VectorXd>(w.data(), n).head(k);

  // eigenvectors of the tridiagonal by inverse iteration, then the
  // back-transformation with the Householder reflectors
  std::vector<int> iblock(n, 1), isplit(n, 0);
  isplit[0] = n;
  Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(n, k);
  std::vector<int> ifail(k);
  info = LAPACKE_zstein(LAPACK_COL_MAJOR, n, d.data(), e.data(), k, w.data(), iblock.data(),
                        isplit.data(), reinterpret_cast<lapack_complex_double*>(Z.data()), n,
                        ifail.data());
  if (info != 0) throw SolverError("zstein failed with info=" + std::to_string(info));
  info = LAPACKE_zunmtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', n, k,
                        reinterpret_cast<lapack_complex_double*>(A.data()), n,
                        reinterpret_cast<lapack_complex_double*>(tau.data()),
                        reinterpret_cast<lapack_complex_double*>(Z.data()), n);
  if (info != 0) throw SolverError("zunmtr failed with info=" + std::to_string(info));
  out.vectors = std::move(Z);
  return out;
}

FlatPairs lanczos_lowest(const SparseMatrixXc& H, int k, double tol_abs,
                         const SolverOptions& opts) {
  const int n = static_cast<int>(H.rows());
  const int m_cap = std::min(n, std::max(opts.max_basis, 3 * k + 24));

  Eigen::MatrixXcd locked(n, 0);
  std::vector<double> locked_vals;
  int matvecs = 0;

  Eigen::MatrixXcd V(n, m_cap);
  Eigen::VectorXd alpha(m_cap), beta(m_cap);
  Eigen::VectorXcd carry;  // best unconverged Ritz vector after a stalled pass

  auto orthogonalize = [&](Eigen::VectorXcd& w, int basis_cols) {
    // two passes of classical Gram-Schmidt against locked + current basis
    for (int pass = 0; pass < 2; ++pass) {
      if (locked.cols() > 0) w.noalias() -= locked * (locked.adjoint() * w);
      if (basis_cols > 0)
        w.noalias() -= V.leftCols(basis_cols) * (V.leftCols(basis_cols).adjoint() * w);
    }
  };

  for (int pass = 0; pass < opts.max_restarts; ++pass) {
    if (static_cast<int>(locked_vals.size()) >= k) break;
    if (locked.cols() >= n) break;

    Eigen::VectorXcd v =
        carry.size() > 0 ? carry : random_start(n, opts.seed + 0x1000 * (pass + 1));
    carry.resize(0);
    orthogonalize(v, 0);
    double nrm0 = v.norm();
    if (nrm0 < 1e-12) {
      v = random_start(n, opts.seed + 0x1000 * (pass + 1) + 7);
      orthogonalize(v, 0);
      nrm0 = v.norm();
      if (nrm0 < 1e-12) continue;
    }
    v /= nrm0;

    int m = 0;
    for (; m < m_cap; ++m) {
      V.col(m) = v;
      Eigen::VectorXcd w = H * v;
      ++matvecs;
      alpha(m) = std::real(v.dot(w));
      orthogonalize(w, m + 1);
      beta(m) = w.norm();
      if (beta(m) < 1e-13 * (1.0 + std::abs(alpha(m)))) {
        ++m;
        break;  // invariant subspace exhausted
      }
      v = w / beta(m);

      // check convergence of the lowest remaining Ritz pairs periodically
      if (m >= 2 * k && m % 16 == 0) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, m + 1);
        for (int i = 0; i <= m; ++i) {
          T(i, i) = alpha(i);
          if (i < m) T(i + 1, i) = T(i, i + 1) = beta(i);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        const int need = k - static_cast<int>(locked_vals.size());
        int conv = 0;
        for (int i = 0; i < std::min(need, m + 1); ++i) {
          if (std::abs(beta(m) * es.eigenvectors()(m, i)) <= 0.1 * tol_abs)
            ++conv;
          else
            break;
        }
        if (conv >= need) {
          ++m;
          break;
        }
      }
    }

    // Ritz extraction on the basis built in this pass
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha(i);
      if (i + 1 < m) T(i + 1, i) = T(i, i + 1) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);

    // lock the ascending prefix of converged Ritz pairs
    int newly_locked = 0;
    int first_unconverged = -1;
    for (int i = 0; i < m && static_cast<int>(locked_vals.size()) < k; ++i) {
      const double bound = std::abs(beta(m - 1) * es.eigenvectors()(m - 1, i));
      if (bound > tol_abs) {
        first_unconverged = i;
        break;
      }
      Eigen::VectorXcd y = V.leftCols(m) * es.eigenvectors().col(i).cast<Complex>();
      if (locked.cols() > 0) y -= locked * (locked.adjoint() * y);
      const double nrm = y.norm();
      if (nrm < 1e-8) continue;  // duplicate of an already locked vector
      y /= nrm;
      locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
      locked.col(locked.cols() - 1) = y;
      locked_vals.push_back(es.eigenvalues()(i));
      ++newly_locked;
    }
    if (newly_locked == 0 && first_unconverged >= 0) {
      // stalled: restart from the best approximation instead of a fresh vector
      carry = V.leftCols(m) * es.eigenvectors().col(first_unconverged).cast<Complex>();
    }
  }

  if (static_cast<int>(locked_vals.size()) < k) {
    std::ostringstream os;
    os << "Lanczos locked only " << locked_vals.size() << " of " << k
       << " eigenpairs after " << opts.max_restarts << " passes (" << matvecs
       << " matvecs, residual target " << tol_abs << ")";
    throw SolverError(os.str());
  }

  // ascending selection of the k lowest locked pairs
  std::vector<int> order(locked_vals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return locked_vals[a] < locked_vals[b]; });

  FlatPairs out;
  out.values.resize(k);
  out.vectors.resize(n, k);
  for (int i = 0; i < k; ++i) {
    out.values(i) = locked_vals[order[i]];
    out.vectors.col(i) = locked.col(order[i]);
  }
  out.matvecs = matvecs;

  // refresh Ritz values from the final vectors (sharper than the pass values)
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXcd Hv = H * out.vectors.col(i);
    out.values(i) = std::real(out.vectors.col(i).dot(Hv));
  }
  std::vector<int> order2(k);
  for (int i = 0; i < k; ++i) order2[i] = i;
  std::sort(order2.begin(), order2.end(),
            [&](int a, int b) { return out.values(a) < out.values(b); });
  Eigen::VectorXd vals(k);
  Eigen::MatrixXcd vecs(n, k);
  for (int i = 0; i < k; ++i) {
    vals(i) = out.values(order2[i]);
    vecs.col(i) = out.vectors.col(order2[i]);
  }
  out.values = std::move(vals);
  out.vectors = std::move(vecs);
  return out;
}

}  // namespace

SpectrumResult eigen_lowest(const SurfaceOperator& op, int k, const SolverOptions& opts) {
  const int n = op.dim();
  if (k < 1 || k > n)
    throw DimensionError("eigen_lowest: k=" + std::to_string(k) +
                         " outside [1, " + std::to_string(n) + "]");

  const double scale = op.scale();
  const double tol_abs = opts.tol > 0.0 ? opts.tol : 1e-11 * scale;

  SolverBackend backend = opts.backend;
  if (backend == SolverBackend::Auto)
    backend = n <= kDenseDimLimit ? SolverBackend::Dense : SolverBackend::Lanczos;

  FlatPairs flat = (backend == SolverBackend::Dense)
                       ? dense_lowest(op.matrix(), k)
                       : lanczos_lowest(op.matrix(), k, tol_abs, opts);

  SpectrumResult res;
  res.backend_used = backend == SolverBackend::Dense ? "dense" : "lanczos";
  res.iterations = flat.matvecs;
  res.eigenvalues = flat.values;

  res.residuals.resize(k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXcd r =
        op.matrix() * flat.vectors.col(i) - flat.values(i) * flat.vectors.col(i);
    res.residuals(i) = r.norm();
  }

  // orthonormalize within degenerate groups (basis inside a group is arbitrary)
  const double group_tol = 1e-8 * std::max(scale, 1.0);
  res.degeneracy_group.assign(k, 0);
  for (int i = 1; i < k; ++i)
    res.degeneracy_group[i] = (res.eigenvalues(i) - res.eigenvalues(i - 1) <= group_tol)
                                  ? res.degeneracy_group[i - 1]
                                  : res.degeneracy_group[i - 1] + 1;
  for (int start = 0; start < k;) {
    int end = start + 1;
    while (end < k && res.degeneracy_group[end] == res.degeneracy_group[start]) ++end;
    for (int i = start + 1; i < end; ++i) {
      for (int j = start; j < i; ++j)
        flat.vectors.col(i) -=
            flat.vectors.col(j) * (flat.vectors.col(j).dot(flat.vectors.col(i)));
      flat.vectors.col(i).normalize();
    }
    start = end;
  }

  // back to the original basis: divide by sqrt(w) per node (per spin block)
  const LatticeGrid& g = op.grid();
  const int nn = g.n();
  const int spin = op.spin_components();
  res.eigenvectors.resize(n, k);
  for (int c = 0; c < k; ++c)
    for (int sc = 0; sc < spin; ++sc)
      for (int p = 0; p < nn; ++p)
        res.eigenvectors(sc * nn + p, c) =
            flat.vectors(sc * nn + p, c) / std::sqrt(g.weights(p));
  return res;
}

Complex expectation(const SurfaceOperator& obs, const Eigen::VectorXcd& psi) {
  const int n = obs.dim();
  if (psi.size() != n)
    throw DimensionError("expectation: state size " + std::to_string(psi.size()) +
                         " does not match operator dimension " + std::to_string(n));
  const LatticeGrid& g = obs.grid();
  const int nn = g.n();
  const int spin = obs.spin_components();
  Eigen::VectorXcd flat(n);
  for (int sc = 0; sc < spin; ++sc)
    for (int p = 0; p < nn; ++p)
      flat(sc * nn + p) = psi(sc * nn + p) * std::sqrt(g.weights(p));
  return flat.dot(obs.matrix() * flat);
}

ConvergenceStudy convergence_study(const std::function<SurfaceOperator(int)>& builder,
                                   const std::vector<int>& sizes,
                                   const std::vector<double>& reference, int k,
                                   const SolverOptions& opts) {
  if (sizes.size() < 3) throw ConfigError("convergence_study needs at least 3 sizes");
  if (static_cast<int>(reference.size()) < k)
    throw ConfigError("convergence_study needs a reference value per level");

  ConvergenceStudy st;
  st.sizes = sizes;
  st.errors.resize(sizes.size(), k);
  double ref_scale = 1.0;
  for (int i = 0; i < k; ++i) ref_scale = std::max(ref_scale, std::abs(reference[i]));

  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const SurfaceOperator op = builder(sizes[si]);
    const SpectrumResult sp = eigen_lowest(op, k, opts);
    for (int i = 0; i < k; ++i)
      st.errors(si, i) = std::abs(sp.eigenvalues(i) - reference[i]);
  }

  const double floor_tol = 1e-12 * ref_scale;
  for (int lvl = 0; lvl < k; ++lvl) {
    bool floor = true;
    for (std::size_t si = 0; si < sizes.size(); ++si)
      floor = floor && st.errors(si, lvl) < floor_tol;
    st.at_floor.push_back(floor);
    if (floor) {
      st.slopes.push_back(std::numeric_limits<double>::quiet_NaN());
      st.fit_residual.push_back(0.0);
      continue;
    }
    // least squares fit log(err) = slope * log(h) + c, h = 1/size
    const auto ns = static_cast<double>(sizes.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
      const double x = std::log(1.0 / sizes[si]);
      const double y = std::log(std::max(st.errors(si, lvl), 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      if (si > 0 && st.errors(si, lvl) > st.errors(si - 1, lvl)) st.monotone = false;
    }
    const double slope = (ns * sxy - sx * sy) / (ns * sxx - sx * sx);
    const double c = (sy - slope * sx) / ns;
    double resid = 0.0;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
      const double x = std::log(1.0 / sizes[si]);
      const double y = std::log(std::max(st.errors(si, lvl), 1e-300));
      resid += (y - slope * x - c) * (y - slope * x - c);
    }
    st.slopes.push_back(slope);
    st.fit_residual.push_back(std::sqrt(resid / ns));
  }
  return st;
}

}  // namespace curvham
