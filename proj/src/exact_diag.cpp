#include "kising/exact_diag.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace kising {

namespace {

// Start vectors use the raw mt19937_64 stream, not std distributions whose
// output may differ across standard library implementations. Real and
// imaginary parts are drawn in component order.
double next_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

Eigen::VectorXcd random_vector(std::int64_t dim, std::mt19937_64& gen) {
  Eigen::VectorXcd v(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    const double re = next_uniform(gen);
    const double im = next_uniform(gen);
    v[i] = std::complex<double>(re, im);
  }
  return v;
}

// Repeated classical Gram-Schmidt against the locked vectors and the first
// m basis columns; returns the accumulated basis coefficients, which are
// the projected-matrix column when w arrived as H v_j.
Eigen::VectorXcd orthogonalize(const std::vector<Eigen::VectorXcd>& locked,
                               const Eigen::MatrixXcd& v, int m,
                               Eigen::VectorXcd& w) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(m);
  for (int pass = 0; pass < 2; ++pass) {
    for (const Eigen::VectorXcd& q : locked) w -= q * q.dot(w);
    if (m > 0) {
      const Eigen::VectorXcd ci = v.leftCols(m).adjoint() * w;
      w.noalias() -= v.leftCols(m) * ci;
      c += ci;
    }
  }
  return c;
}

int internal_phase_exponent(const PauliString& op) {
  return (op.phase_exponent() + std::popcount(op.x_mask() & op.z_mask())) & 3;
}

struct LockedPair {
  double value;
  double residual;
  Eigen::VectorXcd vector;
};

}  // namespace

std::vector<std::vector<int>> group_multiplets(
    const std::vector<double>& eigenvalues, double degeneracy_tol) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(eigenvalues.size()); ++i) {
    if (i > 0 && eigenvalues[i] < eigenvalues[i - 1]) {
      throw std::invalid_argument("eigenvalues must be ascending");
    }
    if (i == 0 || eigenvalues[i] - eigenvalues[i - 1] > degeneracy_tol) {
      groups.emplace_back();
    }
    groups.back().push_back(i);
  }
  return groups;
}

nlohmann::json SpectrumResult::to_json() const {
  return {{"eigenvalues", eigenvalues},
          {"degeneracies", degeneracies},
          {"residuals", residuals},
          {"seed", seed},
          {"tolerances",
           {{"residual_target", residual_target},
            {"degeneracy", degeneracy_tolerance}}},
          {"converged", converged},
          {"n_matvecs", n_matvecs}};
}

SpectrumResult lowest_eigenpairs(const PauliSum& h, int k,
                                 const LanczosOptions& opts) {
  const std::int64_t dim = std::int64_t{1} << h.n_qubits();
  if (k < 1) throw std::invalid_argument("eigenpair count must be positive");
  if (k > dim) {
    throw std::invalid_argument("eigenpair count exceeds space dimension");
  }
  const double scale = std::max(1.0, h.coefficient_scale());
  const double tol_abs = opts.tol * scale;

  if (dim <= 64) {
    SpectrumResult full = dense_spectrum(h, true, opts.degeneracy_tol);
    SpectrumResult out;
    out.eigenvalues.assign(full.eigenvalues.begin(),
                           full.eigenvalues.begin() + k);
    out.eigenvectors.assign(full.eigenvectors.begin(),
                            full.eigenvectors.begin() + k);
    Eigen::VectorXcd hv;
    for (int i = 0; i < k; ++i) {
      h.apply_into(out.eigenvectors[i].amplitudes, hv);
      hv -= out.eigenvalues[i] * out.eigenvectors[i].amplitudes;
      out.residuals.push_back(hv.norm());
      out.n_matvecs += 1;
    }
    out.degeneracies = group_multiplets(out.eigenvalues, opts.degeneracy_tol);
    out.degeneracy_tolerance = opts.degeneracy_tol;
    out.residual_target = tol_abs;
    out.seed = opts.seed;
    return out;
  }

  std::mt19937_64 gen(opts.seed);
  const int m_max =
      static_cast<int>(std::min<std::int64_t>(
          dim - 1, std::max(opts.max_basis, 2 * k + 8)));

  Eigen::MatrixXcd v(dim, m_max + 1);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(m_max + 1, m_max + 1);
  std::vector<Eigen::VectorXcd> locked_vecs;
  std::vector<LockedPair> locked;
  long n_matvecs = 0;
  const double breakdown_tol = 1e-13 * scale;

  auto fresh_direction = [&](int m) -> Eigen::VectorXcd {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::VectorXcd w = random_vector(dim, gen);
      orthogonalize(locked_vecs, v, m, w);
      if (w.norm() > 1e-6 * std::sqrt(static_cast<double>(dim))) {
        return w.normalized();
      }
    }
    return Eigen::VectorXcd();  // remaining space exhausted
  };

  int restarts = 0;
  bool stop = false;
  Eigen::VectorXcd vj(dim), hw(dim), x(dim), hx(dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;

  auto true_residual = [&](const Eigen::VectorXcd& y, double theta,
                           int basis_cols) -> double {
    x.noalias() = v.leftCols(basis_cols) * y;
    x /= x.norm();
    h.apply_into(x, hx);
    ++n_matvecs;
    hx -= theta * x;
    return hx.norm();
  };

  auto lock = [&](const Eigen::MatrixXcd& y, const Eigen::VectorXd& theta,
                  int i, int m) {
    const double res = true_residual(y.col(i), theta[i], m);
    locked.push_back({theta[i], res, x});
    locked_vecs.push_back(x);
  };

  // One eigenpair per phase. A Krylov space holds at most one vector per
  // eigenvalue, so the remaining copies of a degenerate eigenvalue are
  // unreachable from inside it; each phase therefore deflates everything
  // locked so far and grows a new space from a fresh random start, locking
  // only its lowest Ritz pair.
  while (static_cast<int>(locked.size()) < k && !stop) {
    {
      Eigen::VectorXcd w = fresh_direction(0);
      if (w.size() == 0) break;
      v.col(0) = w;
    }
    b.setZero();
    int m = 1;

    while (true) {
      const int j = m - 1;
      vj = v.col(j);
      h.apply_into(vj, hw);
      ++n_matvecs;
      const Eigen::VectorXcd c = orthogonalize(locked_vecs, v, m, hw);
      b.col(j).head(m) = c;
      b.row(j).head(m) = c.adjoint();
      const double beta = hw.norm();

      es.compute(b.topLeftCorner(m, m));
      const Eigen::VectorXd& theta = es.eigenvalues();
      const Eigen::MatrixXcd& y = es.eigenvectors();

      if (beta * std::abs(y(j, 0)) <= tol_abs) {
        const double res = true_residual(y.col(0), theta[0], m);
        if (res <= tol_abs) {
          locked.push_back({theta[0], res, x});
          locked_vecs.push_back(x);
          break;
        }
      }

      if (m < m_max) {
        if (beta > breakdown_tol) {
          v.col(m) = hw / beta;
          b(m, j) = beta;
          b(j, m) = beta;
        } else {
          Eigen::VectorXcd w = fresh_direction(m);
          if (w.size() == 0) {
            // Nothing left outside span(locked + basis): the remaining
            // Ritz pairs are exact, take them ascending.
            for (int i = 0; i < m && static_cast<int>(locked.size()) < k;
                 ++i) {
              lock(y, theta, i, m);
            }
            stop = true;
            break;
          }
          v.col(m) = w;
          b(m, j) = 0.0;
          b(j, m) = 0.0;
        }
        ++m;
        continue;
      }

      ++restarts;
      if (restarts > opts.max_restarts) {
        // Budget gone: keep the best available Ritz pairs, ascending, with
        // honestly recomputed residuals instead of throwing.
        for (int i = 0; i < m && static_cast<int>(locked.size()) < k; ++i) {
          lock(y, theta, i, m);
        }
        stop = true;
        break;
      }

      // Thick restart: keep the lowest Ritz vectors plus the residual
      // direction; their couplings reappear when that column is processed,
      // so only the kept Ritz values are carried over.
      const int keep = std::min(
          std::max(2 * (k - static_cast<int>(locked.size())), 4) + 2, m - 1);
      Eigen::VectorXcd r;
      if (beta > breakdown_tol) {
        r = hw / beta;
        for (const Eigen::VectorXcd& q : locked_vecs) r -= q * q.dot(r);
        r.normalize();
      } else {
        r = fresh_direction(m);
        if (r.size() == 0) {
          for (int i = 0; i < m && static_cast<int>(locked.size()) < k;
               ++i) {
            lock(y, theta, i, m);
          }
          stop = true;
          break;
        }
      }
      Eigen::MatrixXcd kept_cols(dim, keep);
      for (int t = 0; t < keep; ++t) {
        kept_cols.col(t).noalias() = v.leftCols(m) * y.col(t);
      }
      b.setZero();
      for (int t = 0; t < keep; ++t) {
        v.col(t) = kept_cols.col(t);
        b(t, t) = theta[t];
      }
      v.col(keep) = r;
      m = keep + 1;
    }
  }

  std::sort(locked.begin(), locked.end(),
            [](const LockedPair& a, const LockedPair& b2) {
              return a.value < b2.value;
            });
  SpectrumResult out;
  out.seed = opts.seed;
  out.residual_target = tol_abs;
  out.degeneracy_tolerance = opts.degeneracy_tol;
  out.n_matvecs = n_matvecs;
  for (const LockedPair& p : locked) {
    out.eigenvalues.push_back(p.value);
    out.residuals.push_back(p.residual);
    StateVector sv;
    sv.n_qubits = h.n_qubits();
    sv.amplitudes = p.vector;
    sv.fix_global_phase();
    out.eigenvectors.push_back(std::move(sv));
    out.converged &= p.residual <= tol_abs;
  }
  out.degeneracies = group_multiplets(out.eigenvalues, opts.degeneracy_tol);
  return out;
}

bool is_real_in_z_basis(const PauliSum& h) {
  for (const auto& [c, op] : h.terms()) {
    if (internal_phase_exponent(op) & 1) return false;
  }
  return true;
}

namespace {

template <typename Scalar>
void add_dense_terms(const PauliSum& h,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  const std::int64_t dim = std::int64_t{1} << h.n_qubits();
  static const std::complex<double> unit_phase[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (const auto& [c, op] : h.terms()) {
    const std::complex<double> factor = c * unit_phase[internal_phase_exponent(op)];
    const std::uint64_t xm = op.x_mask();
    const std::uint64_t zm = op.z_mask();
    for (std::int64_t m = 0; m < dim; ++m) {
      const double sign =
          (std::popcount(zm & static_cast<std::uint64_t>(m)) & 1) ? -1.0 : 1.0;
      const std::int64_t row = static_cast<std::int64_t>(
          static_cast<std::uint64_t>(m) ^ xm);
      if constexpr (std::is_same_v<Scalar, double>) {
        a(row, m) += factor.real() * sign;
      } else {
        a(row, m) += factor * sign;
      }
    }
  }
}

constexpr std::int64_t dense_dim_limit = std::int64_t{1} << 12;

}  // namespace

Eigen::MatrixXcd to_dense(const PauliSum& h) {
  const std::int64_t dim = std::int64_t{1} << h.n_qubits();
  if (dim > dense_dim_limit) {
    throw std::invalid_argument("operator too large for a dense matrix");
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  add_dense_terms(h, a);
  return a;
}

Eigen::MatrixXd to_dense_real(const PauliSum& h) {
  const std::int64_t dim = std::int64_t{1} << h.n_qubits();
  if (dim > dense_dim_limit) {
    throw std::invalid_argument("operator too large for a dense matrix");
  }
  if (!is_real_in_z_basis(h)) {
    throw std::invalid_argument("operator is not real in the z basis");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  add_dense_terms(h, a);
  return a;
}

std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) {
    throw std::runtime_error("dsyevd failed with info " + std::to_string(info));
  }
  return w;
}

std::vector<double> hermitian_eigenvalues(Eigen::MatrixXcd a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) {
    throw std::runtime_error("zheevd failed with info " + std::to_string(info));
  }
  return w;
}

SpectrumResult dense_spectrum(const PauliSum& h, bool with_vectors,
                              double degeneracy_tol) {
  const std::int64_t dim = std::int64_t{1} << h.n_qubits();
  if (dim > dense_dim_limit) {
    throw std::invalid_argument("operator too large for dense diagonalization");
  }
  SpectrumResult out;
  out.degeneracy_tolerance = degeneracy_tol;
  out.residual_target = 0.0;
  const char jobz = with_vectors ? 'V' : 'N';
  const lapack_int n = static_cast<lapack_int>(dim);
  std::vector<double> w(static_cast<std::size_t>(n));

  if (is_real_in_z_basis(h)) {
    Eigen::MatrixXd a = to_dense_real(h);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, w.data());
    if (info != 0) {
      throw std::runtime_error("dsyevd failed with info " +
                               std::to_string(info));
    }
    if (with_vectors) {
      for (std::int64_t i = 0; i < dim; ++i) {
        StateVector sv;
        sv.n_qubits = h.n_qubits();
        sv.amplitudes = a.col(i).cast<std::complex<double>>();
        sv.fix_global_phase();
        out.eigenvectors.push_back(std::move(sv));
      }
    }
  } else {
    Eigen::MatrixXcd a = to_dense(h);
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, w.data());
    if (info != 0) {
      throw std::runtime_error("zheevd failed with info " +
                               std::to_string(info));
    }
    if (with_vectors) {
      for (std::int64_t i = 0; i < dim; ++i) {
        StateVector sv;
        sv.n_qubits = h.n_qubits();
        sv.amplitudes = a.col(i);
        sv.fix_global_phase();
        out.eigenvectors.push_back(std::move(sv));
      }
    }
  }
  out.eigenvalues = w;
  out.residuals.assign(w.size(), 0.0);
  out.degeneracies = group_multiplets(out.eigenvalues, degeneracy_tol);
  return out;
}

namespace {

void validate_constraints(const PauliSum& h,
                          const std::vector<SectorConstraint>& constraints) {
  for (const SectorConstraint& c : constraints) {
    if (c.op.n_qubits() != h.n_qubits()) {
      throw std::invalid_argument("constraint qubit count mismatch");
    }
    if (c.eigenvalue != 1 && c.eigenvalue != -1) {
      throw std::invalid_argument("constraint eigenvalue must be +1 or -1");
    }
    const PauliString sq = c.op * c.op;
    if (!sq.is_identity() || sq.phase_exponent() != 0) {
      throw std::invalid_argument("constraint must square to identity");
    }
    // A Pauli operator commutes with a sum iff with every term: the nonzero
    // commutators O*P_t involve distinct Pauli strings, hence independent.
    if (!commutes_with_all_terms(c.op, h)) {
      throw std::invalid_argument(
          "constraint does not commute with the Hamiltonian");
    }
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints.size(); ++j) {
      if (!constraints[i].op.commutes_with(constraints[j].op)) {
        throw std::invalid_argument("constraints do not commute pairwise");
      }
    }
  }
}

}  // namespace

SectorProjection project_sector(
    const PauliSum& h, const std::vector<SectorConstraint>& constraints) {
  validate_constraints(h, constraints);
  const std::size_t n = h.n_qubits();
  const std::int64_t dim = std::int64_t{1} << n;

  bool all_diagonal = true;
  for (const SectorConstraint& c : constraints) {
    all_diagonal &= c.op.x_mask() == 0;
  }

  SectorProjection result;
  if (all_diagonal) {
    std::vector<std::int64_t> kept;
    for (std::int64_t m = 0; m < dim; ++m) {
      bool ok = true;
      for (const SectorConstraint& c : constraints) {
        const int sign = (c.op.phase_exponent() == 2) ? -1 : 1;
        const int par =
            std::popcount(c.op.z_mask() & static_cast<std::uint64_t>(m)) & 1;
        ok &= (par ? -sign : sign) == c.eigenvalue;
      }
      if (ok) kept.push_back(m);
    }
    if (kept.empty()) {
      throw std::runtime_error("sector constraints admit no states");
    }
    const std::int64_t s = static_cast<std::int64_t>(kept.size());
    result.basis.reserve(static_cast<std::size_t>(s));
    for (std::int64_t mstate : kept) {
      result.basis.push_back(
          StateVector::basis_state(n, static_cast<std::uint64_t>(mstate)));
    }
    result.h_projected.resize(s, s);
    Eigen::VectorXcd col(dim);
    for (std::int64_t jcol = 0; jcol < s; ++jcol) {
      h.apply_into(result.basis[static_cast<std::size_t>(jcol)].amplitudes,
                   col);
      for (std::int64_t i = 0; i < s; ++i) {
        result.h_projected(i, jcol) = col[kept[static_cast<std::size_t>(i)]];
      }
    }
  } else {
    if (dim > dense_dim_limit) {
      throw std::invalid_argument(
          "non-diagonal sector constraints limited to 12 qubits");
    }
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::VectorXcd in(dim), tmp(dim);
    for (const SectorConstraint& c : constraints) {
      for (std::int64_t jcol = 0; jcol < dim; ++jcol) {
        in = proj.col(jcol);
        apply_into(c.op, in, tmp);
        proj.col(jcol) = 0.5 * (in + static_cast<double>(c.eigenvalue) * tmp);
      }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(proj);
    qr.setThreshold(1e-8);
    const std::int64_t rank = qr.rank();
    if (rank == 0) {
      throw std::runtime_error("sector constraints admit no states");
    }
    Eigen::MatrixXcd q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(dim, rank);
    result.basis.reserve(static_cast<std::size_t>(rank));
    for (std::int64_t i = 0; i < rank; ++i) {
      StateVector sv;
      sv.n_qubits = n;
      sv.amplitudes = q.col(i);
      result.basis.push_back(std::move(sv));
    }
    Eigen::MatrixXcd hq(dim, rank);
    Eigen::VectorXcd col(dim);
    for (std::int64_t jcol = 0; jcol < rank; ++jcol) {
      in = q.col(jcol);
      h.apply_into(in, col);
      hq.col(jcol) = col;
    }
    result.h_projected = q.adjoint() * hq;
  }
  result.h_projected =
      0.5 * (result.h_projected +
             Eigen::MatrixXcd(result.h_projected.adjoint()));
  return result;
}

namespace {

double real_expectation(const StateVector& state, const Eigen::VectorXcd& opv,
                        double scale) {
  if (std::abs(state.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("state must be normalized");
  }
  const std::complex<double> val = state.amplitudes.dot(opv);
  if (std::abs(val.imag()) > 1e-12 * std::max(1.0, scale)) {
    throw std::runtime_error("expectation has a non-negligible imaginary part");
  }
  return val.real();
}

}  // namespace

double expectation(const StateVector& state, const PauliString& op) {
  Eigen::VectorXcd tmp;
  apply_into(op, state.amplitudes, tmp);
  return real_expectation(state, tmp, 1.0);
}

double expectation(const StateVector& state, const PauliSum& op) {
  Eigen::VectorXcd tmp;
  op.apply_into(state.amplitudes, tmp);
  return real_expectation(state, tmp, op.coefficient_scale());
}

double measure_wilson(const std::vector<StateVector>& multiplet,
                      const Lattice& l, const WilsonRegion& region) {
  if (multiplet.empty()) {
    throw std::invalid_argument("multiplet must contain at least one state");
  }
  PauliString w(l.n_edges());
  for (int s : region.vertices) w = w * vertex_operator(l, s);
  double acc = 0.0;
  for (const StateVector& state : multiplet) acc += expectation(state, w);
  return acc / static_cast<double>(multiplet.size());
}

}  // namespace kising
