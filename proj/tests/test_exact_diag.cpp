#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "dense_oracle.hpp"
#include "kising/exact_diag.hpp"
#include "kising/lattice.hpp"
#include "kising/model.hpp"

using kising::build_hamiltonian;
using kising::build_ladder;
using kising::build_torus;
using kising::dense_spectrum;
using kising::LanczosOptions;
using kising::lowest_eigenpairs;
using kising::PauliString;
using kising::PauliSum;
using kising::project_sector;
using kising::SectorConstraint;
using kising::StateVector;

namespace {

// every value of `sub` appears in `full`, respecting multiplicity
bool spectrum_contained(const std::vector<double>& sub,
                        const std::vector<double>& full, double tol) {
  std::size_t j = 0;
  for (double v : sub) {
    while (j < full.size() && full[j] < v - tol) ++j;
    if (j == full.size() || std::abs(full[j] - v) > tol) return false;
    ++j;
  }
  return true;
}

}  // namespace

TEST_CASE("multiplet grouping splits on gaps") {
  const auto groups = kising::group_multiplets({-8, -8, -8, -4, -4, 0}, 1e-8);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0] == std::vector<int>{0, 1, 2});
  CHECK(groups[1] == std::vector<int>{3, 4});
  CHECK(groups[2] == std::vector<int>{5});
  CHECK_THROWS_AS(kising::group_multiplets({1.0, 0.0}, 1e-8),
                  std::invalid_argument);
}

TEST_CASE("pure kitaev spectra carry the topological degeneracy") {
  const auto torus = build_torus(2, 2);
  const auto spec = lowest_eigenpairs(build_hamiltonian(torus, {1, 1, 0}), 6);
  REQUIRE(spec.eigenvalues.size() == 6);
  CHECK(spec.converged);
  for (int i = 0; i < 4; ++i)
    CHECK(spec.eigenvalues[i] == doctest::Approx(-8.0).epsilon(1e-10));
  CHECK(spec.eigenvalues[4] == doctest::Approx(-4.0).epsilon(1e-10));
  REQUIRE_FALSE(spec.degeneracies.empty());
  CHECK(spec.degeneracies[0].size() == 4);
  for (double r : spec.residuals) CHECK(r <= spec.residual_target);
  CHECK(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()));

  const auto ladder = build_ladder(4);
  const auto lspec = lowest_eigenpairs(build_hamiltonian(ladder, {1, 1, 0}), 4);
  CHECK(lspec.converged);
  CHECK(lspec.eigenvalues[0] == doctest::Approx(-12.0).epsilon(1e-10));
  CHECK(lspec.eigenvalues[1] == doctest::Approx(-12.0).epsilon(1e-10));
  CHECK(lspec.eigenvalues[2] == doctest::Approx(-10.0).epsilon(1e-10));
  CHECK(lspec.eigenvalues[3] == doctest::Approx(-10.0).epsilon(1e-10));
  CHECK(lspec.degeneracies[0].size() == 2);
}

TEST_CASE("lanczos eigenvalues match the dense solver off the solvable point") {
  const auto l = build_ladder(4);
  const auto h = build_hamiltonian(l, {1, 1, 0.3});
  const auto sparse = lowest_eigenpairs(h, 3);
  REQUIRE(sparse.converged);
  const auto dense = dense_spectrum(h);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(sparse.eigenvalues[i] - dense.eigenvalues[i]) < 1e-10);
  // eigenvectors are true eigenvectors, not just Ritz artifacts
  for (int i = 0; i < 3; ++i) {
    const auto& v = sparse.eigenvectors[i];
    const auto hv = h.apply(v);
    Eigen::VectorXcd r =
        hv.amplitudes - sparse.eigenvalues[i] * v.amplitudes;
    CHECK(r.norm() <= sparse.residual_target + 1e-12);
  }
  // the coupled ground state still satisfies every plaquette stabilizer
  for (int p = 0; p < l.n_plaquettes(); ++p)
    CHECK(expectation(sparse.eigenvectors[0], plaquette_operator(l, p)) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("small transverse gap is resolved on the ladder") {
  const auto l = build_ladder(4);
  const auto spec = lowest_eigenpairs(build_hamiltonian(l, {1, 1, 0.1}), 2);
  REQUIRE(spec.converged);
  const double gap = spec.eigenvalues[1] - spec.eigenvalues[0];
  CHECK(gap == doctest::Approx(0.0019717875).epsilon(1e-6));
  CHECK(spec.degeneracies.size() == 2);
}

TEST_CASE("dense cross-check on a torus with strong ising coupling") {
  const auto l = build_torus(2, 2);
  const auto h = build_hamiltonian(l, {1, 1, 4});
  const auto sparse = lowest_eigenpairs(h, 6);
  REQUIRE(sparse.converged);
  const auto dense = dense_spectrum(h);
  for (int i = 0; i < 6; ++i)
    CHECK(std::abs(sparse.eigenvalues[i] - dense.eigenvalues[i]) < 1e-9);
  // deep ising regime: near-degenerate doublet below a wide gap
  CHECK(sparse.eigenvalues[0] == doctest::Approx(-68.1248781).epsilon(1e-7));
  CHECK(sparse.eigenvalues[1] == doctest::Approx(-68.0).epsilon(1e-9));
  CHECK(sparse.eigenvalues[2] > -33.0);
}

TEST_CASE("fixed seed reproduces the full result, other seeds the values") {
  const auto h = build_hamiltonian(build_ladder(4), {1, 1, 0.5});
  LanczosOptions opts;
  const auto a = lowest_eigenpairs(h, 3, opts);
  const auto b = lowest_eigenpairs(h, 3, opts);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    CHECK(a.eigenvalues[i] == b.eigenvalues[i]);
    CHECK(a.eigenvectors[i].amplitudes == b.eigenvectors[i].amplitudes);
  }
  CHECK(a.n_matvecs == b.n_matvecs);
  opts.seed = 999;
  const auto c = lowest_eigenpairs(h, 3, opts);
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
    CHECK(std::abs(a.eigenvalues[i] - c.eigenvalues[i]) < 1e-9);
}

TEST_CASE("budget-starved runs stay variational and report non-convergence") {
  const auto h = build_hamiltonian(build_ladder(4), {1, 1, 0.3});
  LanczosOptions starved;
  starved.max_basis = 12;
  starved.max_restarts = 1;
  const auto rough = lowest_eigenpairs(h, 4, starved);
  const auto sharp = lowest_eigenpairs(h, 4);
  REQUIRE(sharp.converged);
  for (int i = 0; i < 4; ++i)
    CHECK(rough.eigenvalues[i] >= sharp.eigenvalues[i] - 1e-12);
  // the starved run must not claim convergence it does not have
  const double worst =
      *std::max_element(rough.residuals.begin(), rough.residuals.end());
  CHECK(rough.converged == (worst <= rough.residual_target));
}

TEST_CASE("eigenpair count guards") {
  const auto h = build_hamiltonian(build_torus(2, 2), {1, 1, 0});
  CHECK_THROWS_AS(lowest_eigenpairs(h, 0), std::invalid_argument);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 257), std::invalid_argument);
}

TEST_CASE("dense paths agree with an independent eigensolver") {
  // real path: the full hamiltonian is real in the z basis
  const auto h = build_hamiltonian(build_ladder(2), {1, 0.5, 0.7});
  CHECK(kising::is_real_in_z_basis(h));
  const auto lapack = dense_spectrum(h, true);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::dense(h));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    CHECK(std::abs(lapack.eigenvalues[i] - es.eigenvalues()[i]) < 1e-11);
  // returned vectors diagonalize the operator
  for (int i : {0, 17, 63}) {
    const auto& v = lapack.eigenvectors[i];
    Eigen::VectorXcd r =
        h.apply(v).amplitudes - lapack.eigenvalues[i] * v.amplitudes;
    CHECK(r.norm() < 1e-11);
  }

  // complex path: a Y term forces the hermitian route
  PauliSum hy(3);
  hy.add_term(0.8, PauliString::y_at(3, 0) * PauliString::x_at(3, 1));
  hy.add_term(-1.1, PauliString::z_at(3, 1) * PauliString::z_at(3, 2));
  hy.add_term(0.3, PauliString::x_at(3, 2));
  CHECK_FALSE(kising::is_real_in_z_basis(hy));
  const auto spec = dense_spectrum(hy);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esy(oracle::dense(hy));
  for (Eigen::Index i = 0; i < esy.eigenvalues().size(); ++i)
    CHECK(std::abs(spec.eigenvalues[i] - esy.eigenvalues()[i]) < 1e-12);
}

TEST_CASE("sector projection dimensions follow the stabilizer counting") {
  const auto torus = build_torus(2, 2);
  const auto h = build_hamiltonian(torus, {1, 1, 0.3});
  std::vector<SectorConstraint> plaqs;
  for (int p = 0; p < torus.n_plaquettes(); ++p)
    plaqs.push_back({plaquette_operator(torus, p), +1});
  // one plaquette is the product of the others, so 4 constraints cut 3 bits
  CHECK(project_sector(h, plaqs).dimension() == 32);

  auto with_loops = plaqs;
  with_loops.push_back(
      {loop_operator(torus, cycle_named(torus, kising::CycleLabel::tz1)), +1});
  with_loops.push_back(
      {loop_operator(torus, cycle_named(torus, kising::CycleLabel::tz2)), +1});
  CHECK(project_sector(h, with_loops).dimension() == 8);

  const auto ladder = build_ladder(4);
  const auto hl = build_hamiltonian(ladder, {1, 1, 0.3});
  std::vector<SectorConstraint> lplaqs;
  for (int p = 0; p < ladder.n_plaquettes(); ++p)
    lplaqs.push_back({plaquette_operator(ladder, p), +1});
  CHECK(project_sector(hl, lplaqs).dimension() == 256);
}

TEST_CASE("projected spectra are sub-multisets of the full spectrum") {
  const auto l = build_ladder(2);
  const auto h = build_hamiltonian(l, {1, 1, 0.7});
  const auto full = dense_spectrum(h).eigenvalues;
  std::vector<SectorConstraint> cs;
  for (int p = 0; p < l.n_plaquettes(); ++p)
    cs.push_back({plaquette_operator(l, p), +1});
  const auto sector = project_sector(h, cs);
  CHECK(sector.dimension() == 16);
  auto evals = kising::hermitian_eigenvalues(sector.h_projected);
  CHECK(spectrum_contained(evals, full, 1e-9));
  // basis vectors live in the sector and are orthonormal
  for (std::size_t a = 0; a < sector.basis.size(); ++a) {
    for (const auto& c : cs)
      CHECK(expectation(sector.basis[a], c.op) == doctest::Approx(1.0));
    for (std::size_t b = a + 1; b < sector.basis.size(); ++b)
      CHECK(std::abs(inner(sector.basis[a], sector.basis[b])) < 1e-10);
  }
}

TEST_CASE("non-diagonal constraints go through the projector-column path") {
  PauliSum h(3);
  h.add_term(-1.0, PauliString::x_at(3, 0) * PauliString::x_at(3, 1));
  h.add_term(-0.6, PauliString::z_at(3, 1) * PauliString::z_at(3, 2));
  h.add_term(-0.6, PauliString::z_at(3, 0) * PauliString::z_at(3, 1));
  PauliString flip =
      PauliString::x_at(3, 0) * PauliString::x_at(3, 1) * PauliString::x_at(3, 2);
  // x-type constraint cannot take the basis-filter shortcut
  CHECK(flip.x_mask() != 0);
  const auto full = dense_spectrum(h).eigenvalues;
  const auto plus = project_sector(h, {{flip, +1}});
  const auto minus = project_sector(h, {{flip, -1}});
  CHECK(plus.dimension() == 4);
  CHECK(minus.dimension() == 4);
  auto pe = kising::hermitian_eigenvalues(plus.h_projected);
  auto me = kising::hermitian_eigenvalues(minus.h_projected);
  CHECK(spectrum_contained(pe, full, 1e-9));
  CHECK(spectrum_contained(me, full, 1e-9));
  // the two sectors partition the spectrum
  std::vector<double> merged(pe);
  merged.insert(merged.end(), me.begin(), me.end());
  std::sort(merged.begin(), merged.end());
  for (std::size_t i = 0; i < merged.size(); ++i)
    CHECK(merged[i] == doctest::Approx(full[i]).epsilon(1e-9));
}

TEST_CASE("sector projection rejects ill-posed constraints") {
  const auto l = build_torus(2, 2);
  const auto h = build_hamiltonian(l, {1, 1, 0.3});
  // a single star no longer commutes with the coupled hamiltonian
  CHECK_THROWS_AS(project_sector(h, {{vertex_operator(l, 0), +1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(project_sector(h, {{plaquette_operator(l, 0), 2}}),
                  std::invalid_argument);
  // contradictory constraints leave an empty sector
  const auto z0 = PauliString::z_at(8, 0);
  PauliSum hz(8);
  hz.add_term(1.0, z0);
  CHECK_THROWS_AS(project_sector(hz, {{z0, +1}, {z0, -1}}), std::runtime_error);
}

TEST_CASE("expectation values and their guards") {
  const auto s = StateVector::basis_state(2, 0b01);
  CHECK(expectation(s, PauliString::z_at(2, 0)) == doctest::Approx(-1.0));
  CHECK(expectation(s, PauliString::z_at(2, 1)) == doctest::Approx(1.0));
  CHECK(expectation(s, PauliString::x_at(2, 0)) == doctest::Approx(0.0));
  PauliSum sum(2);
  sum.add_term(0.5, PauliString::z_at(2, 0));
  sum.add_identity(2.0);
  CHECK(expectation(s, sum) == doctest::Approx(1.5));
  StateVector unnorm = s;
  unnorm.amplitudes *= 3.0;
  CHECK_THROWS_AS(expectation(unnorm, PauliString::z_at(2, 0)),
                  std::invalid_argument);
}

TEST_CASE("wilson averages are basis-independent within a multiplet") {
  const auto l = build_torus(2, 2);
  const auto region = make_rect_region(l, 0, 0, 1, 1);
  const auto v1 = kising::kitaev_ground_state(l, {0, 0});
  const auto v2 = kising::kitaev_ground_state(l, {1, 0});
  // stabilized states measure exactly 1
  CHECK(kising::measure_wilson({v1}, l, region) == doctest::Approx(1.0));
  StateVector p = v1, m = v1;
  p.amplitudes = (v1.amplitudes + v2.amplitudes) / std::sqrt(2.0);
  m.amplitudes = (v1.amplitudes - v2.amplitudes) / std::sqrt(2.0);
  const double direct = kising::measure_wilson({v1, v2}, l, region);
  const double rotated = kising::measure_wilson({p, m}, l, region);
  CHECK(direct == doctest::Approx(rotated).epsilon(1e-12));
  CHECK_THROWS_AS(kising::measure_wilson({}, l, region), std::invalid_argument);
}

TEST_CASE("spectrum serialization lists the certification data") {
  const auto spec =
      lowest_eigenpairs(build_hamiltonian(build_torus(2, 2), {1, 1, 0}), 2);
  const auto j = spec.to_json();
  CHECK(j.contains("eigenvalues"));
  CHECK(j.contains("degeneracies"));
  CHECK(j.contains("residuals"));
  CHECK(j.contains("seed"));
  CHECK(j.contains("converged"));
  CHECK(j["tolerances"].contains("residual_target"));
  CHECK(j["tolerances"].contains("degeneracy"));
}
