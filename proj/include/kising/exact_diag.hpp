#pragma once
// Matrix-free low-spectrum eigensolver (thick-restart Lanczos with locking
// and full reorthogonalization), dense LAPACK spectra for cross-checks,
// symmetry-sector projection, and Wilson loop averages over multiplets.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "kising/lattice.hpp"
#include "kising/model.hpp"
#include "kising/pauli.hpp"

namespace kising {

struct LanczosOptions {
  std::uint64_t seed = 12345;
  // Residual target is tol * max(1, sum |coefficient|); the scale-relative
  // form keeps the certificate meaningful across coupling magnitudes.
  double tol = 1e-10;
  double degeneracy_tol = 1e-8;  // eigenvalue gap that closes a multiplet
  int max_basis = 120;           // active Krylov vectors between restarts
  int max_restarts = 400;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<StateVector> eigenvectors;
  std::vector<double> residuals;  // ||H v - theta v|| per returned pair
  std::vector<std::vector<int>> degeneracies;  // index partition by gaps
  double degeneracy_tolerance = 0.0;
  double residual_target = 0.0;
  std::uint64_t seed = 0;
  bool converged = true;
  long n_matvecs = 0;
  nlohmann::json to_json() const;  // eigenvectors omitted
};

// Partition of indices [0, eigenvalues.size()) into runs separated by gaps
// larger than the tolerance. Eigenvalues must be ascending.
std::vector<std::vector<int>> group_multiplets(
    const std::vector<double>& eigenvalues, double degeneracy_tol);

// k lowest eigenpairs of a Hermitian operator sum. Deterministic for a
// fixed seed: the start vector comes from a fixed mt19937_64 mapping and
// the matvec is order-stable under threading. Non-convergence within the
// restart budget is reported through the converged flag and the achieved
// residuals, not thrown.
SpectrumResult lowest_eigenpairs(const PauliSum& h, int k,
                                 const LanczosOptions& opts = {});

// Dense cross-check path. Eigenvalues always; eigenvectors on request.
// Real symmetric matrices take the faster real LAPACK route.
bool is_real_in_z_basis(const PauliSum& h);
Eigen::MatrixXcd to_dense(const PauliSum& h);
Eigen::MatrixXd to_dense_real(const PauliSum& h);
std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a);
std::vector<double> hermitian_eigenvalues(Eigen::MatrixXcd a);
SpectrumResult dense_spectrum(const PauliSum& h, bool with_vectors = false,
                              double degeneracy_tol = 1e-8);

struct SectorConstraint {
  PauliString op;
  int eigenvalue = +1;  // +1 or -1
};

struct SectorProjection {
  std::vector<StateVector> basis;  // orthonormal, spans the joint eigenspace
  Eigen::MatrixXcd h_projected;    // Hermitian in that basis
  std::size_t dimension() const { return basis.size(); }
};

// Joint eigenspace basis from projector products prod (1 + eps*O)/2 with
// orthonormalization. Pure-Z constraints keep the computational basis
// (each projector only filters basis states), so that path scales to the
// full qubit range; general constraints build dense projector columns and
// are capped at 12 qubits. Throws on non-commuting or inconsistent
// constraints and on an empty sector.
SectorProjection project_sector(const PauliSum& h,
                                const std::vector<SectorConstraint>& constraints);

// <state|op|state> with the imaginary part asserted negligible.
double expectation(const StateVector& state, const PauliString& op);
double expectation(const StateVector& state, const PauliSum& op);

// Multiplet-averaged Wilson loop Tr(P W_C)/Tr(P) where P projects onto the
// span of the given orthonormal states and W_C = prod_{s in S} A_s.
double measure_wilson(const std::vector<StateVector>& multiplet,
                      const Lattice& l, const WilsonRegion& region);

}  // namespace kising
