#pragma once
// Pauli-string algebra over at most 64 qubits.
//
// Conventions fixed for every serialized artifact produced by this library:
//   * qubit q is bit q (least significant = qubit 0) of a basis index
//   * basis bit value 0 means spin up in z, i.e. sigma_z |0> = +|0>
//   * a string is stored internally as i^k * X^x * Z^z with bit masks x, z
//   * reported phases are relative to the per-qubit letters {I, X, Y, Z}
//     with Y == i*X*Z, so the product X0 * Z0 has masks (1, 1) and phase -i

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

namespace kising {

inline constexpr std::size_t max_qubits = 64;

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);  // identity on n qubits

  static PauliString x_at(std::size_t n_qubits, std::size_t qubit);
  static PauliString y_at(std::size_t n_qubits, std::size_t qubit);
  static PauliString z_at(std::size_t n_qubits, std::size_t qubit);
  // Phase-free product of letters selected by the masks (a set bit in both
  // masks reads as Y on that qubit).
  static PauliString from_masks(std::size_t n_qubits, std::uint64_t x_mask,
                                std::uint64_t z_mask);

  std::size_t n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  // Phase relative to the canonical letters, one of {+1, -1, +i, -i}.
  std::complex<double> phase() const;
  int phase_exponent() const;  // the k of phase == i^k, in {0,1,2,3}
  bool is_hermitian() const { return phase_exponent() % 2 == 0; }
  bool is_identity() const;
  int weight() const;  // number of qubits carrying a non-identity letter
  std::string to_string() const;

  bool commutes_with(const PauliString& other) const;
  PauliString& operator*=(const PauliString& other);
  friend PauliString operator*(PauliString a, const PauliString& b) {
    a *= b;
    return a;
  }
  friend bool operator==(const PauliString&, const PauliString&) = default;

  nlohmann::json to_json() const;

 private:
  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int k_ = 0;  // operator value is i^k * X^x * Z^z
};

struct StateVector {
  std::size_t n_qubits = 0;
  Eigen::VectorXcd amplitudes;

  static StateVector zero_state(std::size_t n_qubits);  // |0...0>
  static StateVector basis_state(std::size_t n_qubits, std::uint64_t index);

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
  double norm() const { return amplitudes.norm(); }
  void normalize();
  // Multiplies by the global phase that makes the first nonzero amplitude
  // (in basis order) real and positive; used before state comparisons.
  void fix_global_phase(double tol = 1e-12);
};

// out = P * in, written gather-style so index chunks are independent.
void apply_into(const PauliString& p, const Eigen::VectorXcd& in,
                Eigen::VectorXcd& out);
StateVector apply(const PauliString& p, const StateVector& state);

std::complex<double> inner(const StateVector& a, const StateVector& b);

std::string mask_to_bitstring(std::uint64_t mask, std::size_t n_bits);

}  // namespace kising
