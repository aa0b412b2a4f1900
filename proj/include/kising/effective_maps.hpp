#pragma once
// Effective virtual-spin models: the periodic XY chain equivalent to the
// ladder restricted to the B_p = +1 subspace, and the pair of transverse
// field Ising models equivalent to the torus on that subspace. Includes the
// explicit virtual basis realizations and spectral-equivalence checks.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kising/exact_diag.hpp"
#include "kising/lattice.hpp"
#include "kising/model.hpp"
#include "kising/pauli.hpp"

namespace kising {

// -J sum Z_k Z_{k+1} - 2lambda sum X_k X_{k+1} - K n on a periodic chain of
// 2n virtual spins. Virtual spin k sits on the k-th edge of the ladder's
// zigzag cycle; the doubled X coupling comes from each flip being realizable
// through two plaquette-complementary edge pairs.
PauliSum ladder_effective(int n, const CouplingParams& c);

struct TorusEffective {
  PauliSum h_a;  // -J sum_{i in A} X_i - sum_bonds coeff Z_i Z_j
  PauliSum h_b;  // same on sublattice B
  SectorConstraint constraint;  // prod_i X_i = +1, from prod_i A_i = 1
  double constant = 0.0;        // -K N
  PauliSum combined() const;    // h_a + h_b + constant
};

// Virtual spin i sits on vertex i. Bond coefficients are accumulated pair
// by pair through virtual_bond_image, so coincident bonds on small periodic
// lattices add up instead of being double-counted or merged away.
TorusEffective torus_effective(const Lattice& l, const CouplingParams& c);

// Image of an edge-pair sigma_z sigma_z on the virtual vertex spins:
// Z_a Z_a' where a, a' are exactly the two vertices whose vertex operators
// anticommute with the pair. Determined by commutation, not geometry.
PauliString virtual_bond_image(const IsingPair& pair, const Lattice& l);

// Ladder virtual basis. phi0 = prod_p (1 + B_p) |+>^E normalized; the
// virtual state for label r flips sign history along the zigzag cycle:
// prod_{k: r_k = 1} sigma_z(zigzag edge k) applied to phi0. Phases fixed by
// making the first nonzero amplitude real positive.
StateVector ladder_phi0(int n);
StateVector ladder_virtual_state(int n, std::uint64_t r);

// Torus virtual basis: prod_i A_i^{r_i} |0>^E, a single computational basis
// state per label; r and its bitwise complement realize the same state.
StateVector torus_virtual_state(const Lattice& l, std::uint64_t r);

struct MapReport {
  std::string model;  // "ladder" or "torus"
  int lx = 0;         // ladder: column count n
  int ly = 0;
  CouplingParams couplings;
  double max_abs_spectral_deviation = 0.0;
  std::vector<std::size_t> sector_dimensions;  // original sector, effective
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

// Full spectrum of the ladder Hamiltonian on the B_p = +1 sector against
// the full XY-chain spectrum.
MapReport verify_ladder_map(int n, const CouplingParams& c, double tol = 1e-10);

// Spectrum of the torus Hamiltonian on {B_p = +1, Tz1 = +1, Tz2 = +1}
// against H_A + H_B - KN restricted to the prod X = +1 sector.
MapReport verify_torus_map(int lx, int ly, const CouplingParams& c,
                           double tol = 1e-10);

struct ExtremeStateCheck {
  std::string name;
  double deviation = 0.0;
  bool pass = false;
};

struct ExtremeStateReport {
  std::vector<ExtremeStateCheck> checks;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

// Certifies the closed-form endpoints of the virtual basis: the uniform
// superposition over labels realizes the pure-Kitaev ground state (torus)
// or |0...0> (ladder), and on the torus the labels 0 and "all of one
// sublattice" realize |0...0> and |1...1>.
ExtremeStateReport extreme_state_check(const Lattice& l, double tol = 1e-10);

}  // namespace kising
