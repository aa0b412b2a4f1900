#pragma once
// Kitaev-Ising Hamiltonian H(lambda) = -J sum_s A_s - K sum_p B_p
//                                      - lambda sum_<corner pairs> Z Z
// built over the edge spins of a torus or ladder lattice, together with the
// loop operators and the exactly constructed lambda = 0 ground states.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kising/lattice.hpp"
#include "kising/pauli.hpp"

namespace kising {

struct CouplingParams {
  double j = 1.0;
  double k = 1.0;
  double lambda = 0.0;
  void validate() const;  // requires j > 0, k > 0, lambda >= 0
};

// Real-weighted sum of Hermitian Pauli strings. The constant piece of an
// effective model rides along as an explicit identity term.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}

  std::size_t n_qubits() const { return n_; }
  std::size_t n_terms() const { return terms_.size(); }
  const std::vector<std::pair<double, PauliString>>& terms() const {
    return terms_;
  }

  void add_term(double coefficient, const PauliString& op);
  void add_identity(double coefficient);
  PauliSum& operator+=(const PauliSum& other);

  double coefficient_scale() const;  // sum of |coefficient|

  void apply_into(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  StateVector apply(const StateVector& state) const;

  nlohmann::json to_json() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<double, PauliString>> terms_;
};

PauliString vertex_operator(const Lattice& l, int vertex);     // A_s
PauliString plaquette_operator(const Lattice& l, int plaquette);  // B_p
PauliString loop_operator(const Lattice& l, const CycleSpec& cycle);
PauliString ising_pair_operator(const Lattice& l, const IsingPair& pair);

PauliSum build_hamiltonian(const Lattice& l, const CouplingParams& c);

struct SymmetryCheck {
  std::string name;
  bool commutes = false;
};

struct SymmetryReport {
  std::vector<SymmetryCheck> plaquette_ops;  // expected to commute
  std::vector<SymmetryCheck> vertex_ops;     // fail once lambda > 0
  std::vector<SymmetryCheck> z_loops;        // expected to commute
  std::vector<SymmetryCheck> x_loops;        // fail once lambda > 0
  bool all_plaquettes_commute = false;
  bool any_vertex_commutes = false;
  bool all_z_loops_commute = false;
  bool any_x_loop_commutes = false;
  nlohmann::json to_json() const;
};

// Exact commutation screen of the conserved and broken operator families.
// A Pauli operator commutes with H iff it commutes with every term, so the
// check is algebraic, not numerical.
SymmetryReport check_symmetries(const Lattice& l, const CouplingParams& c);
bool commutes_with_all_terms(const PauliString& op, const PauliSum& h);

// Ground state of the pure Kitaev part (lambda = 0), built by group
// averaging prod_s (1 + A_s) |0...0> and moved between topological sectors
// with Tx strings. Sector labels are Tz eigenvalues: sector (s1, s2) has
// Tz1 = (-1)^s1 and (torus only) Tz2 = (-1)^s2.
struct SectorLabel {
  int s1 = 0;
  int s2 = 0;  // ignored for the ladder
};

StateVector kitaev_ground_state(const Lattice& l, SectorLabel sector = {});

}  // namespace kising
