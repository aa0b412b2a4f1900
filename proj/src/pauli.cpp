#include "kising/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace kising {

namespace {

void check_qubit_count(std::size_t n) {
  if (n == 0 || n > max_qubits)
    throw std::invalid_argument("qubit count must be in [1, 64]");
}

int parity64(std::uint64_t v) { return std::popcount(v) & 1; }

}  // namespace

PauliString::PauliString(std::size_t n_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits);
}

PauliString PauliString::x_at(std::size_t n, std::size_t q) {
  return from_masks(n, std::uint64_t{1} << q, 0);
}

PauliString PauliString::z_at(std::size_t n, std::size_t q) {
  return from_masks(n, 0, std::uint64_t{1} << q);
}

PauliString PauliString::y_at(std::size_t n, std::size_t q) {
  return from_masks(n, std::uint64_t{1} << q, std::uint64_t{1} << q);
}

PauliString PauliString::from_masks(std::size_t n, std::uint64_t x,
                                    std::uint64_t z) {
  check_qubit_count(n);
  if (n < max_qubits && ((x | z) >> n) != 0)
    throw std::invalid_argument("mask touches qubits beyond n_qubits");
  PauliString p(n);
  p.x_ = x;
  p.z_ = z;
  // each Y letter contributes i to the X^x Z^z normal form
  p.k_ = std::popcount(x & z) & 3;
  return p;
}

int PauliString::phase_exponent() const {
  return (k_ + 3 * (std::popcount(x_ & z_) & 3)) & 3;
}

std::complex<double> PauliString::phase() const {
  static const std::complex<double> table[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_exponent()];
}

bool PauliString::is_identity() const {
  return x_ == 0 && z_ == 0 && k_ == 0;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_ != other.n_)
    throw std::invalid_argument("Pauli strings act on different qubit counts");
  return (parity64(x_ & other.z_) ^ parity64(z_ & other.x_)) == 0;
}

PauliString& PauliString::operator*=(const PauliString& other) {
  if (n_ != other.n_)
    throw std::invalid_argument("Pauli strings act on different qubit counts");
  // X^x2 moves left through Z^z1, one sign per overlapping qubit
  k_ = (k_ + other.k_ + 2 * parity64(z_ & other.x_)) & 3;
  x_ ^= other.x_;
  z_ ^= other.z_;
  return *this;
}

std::string PauliString::to_string() const {
  static const char* prefix[4] = {"", "i * ", "- ", "-i * "};
  std::string out = prefix[phase_exponent()];
  bool any = false;
  for (std::size_t q = 0; q < n_; ++q) {
    const bool xb = (x_ >> q) & 1, zb = (z_ >> q) & 1;
    if (!xb && !zb) continue;
    if (any) out += ' ';
    out += xb ? (zb ? 'Y' : 'X') : 'Z';
    out += std::to_string(q);
    any = true;
  }
  if (!any) out += 'I';
  return out;
}

std::string mask_to_bitstring(std::uint64_t mask, std::size_t n_bits) {
  std::string s(n_bits, '0');
  for (std::size_t q = 0; q < n_bits; ++q)
    if ((mask >> q) & 1) s[q] = '1';
  return s;
}

nlohmann::json PauliString::to_json() const {
  static const char* phase_name[4] = {"+1", "+i", "-1", "-i"};
  return {{"n_qubits", n_},
          {"x_mask", mask_to_bitstring(x_, n_)},
          {"z_mask", mask_to_bitstring(z_, n_)},
          {"phase", phase_name[phase_exponent()]}};
}

StateVector StateVector::zero_state(std::size_t n) {
  return basis_state(n, 0);
}

StateVector StateVector::basis_state(std::size_t n, std::uint64_t index) {
  check_qubit_count(n);
  if (n > 30) throw std::invalid_argument("state vector too large");
  StateVector s;
  s.n_qubits = n;
  s.amplitudes = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
  s.amplitudes[static_cast<std::int64_t>(index)] = 1.0;
  return s;
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::runtime_error("cannot normalize the zero vector");
  amplitudes /= n;
}

void StateVector::fix_global_phase(double tol) {
  for (std::int64_t i = 0; i < amplitudes.size(); ++i) {
    const auto a = amplitudes[i];
    if (std::abs(a) > tol) {
      amplitudes *= std::conj(a) / std::abs(a);
      return;
    }
  }
}

void apply_into(const PauliString& p, const Eigen::VectorXcd& in,
                Eigen::VectorXcd& out) {
  const auto dim = std::int64_t{1} << p.n_qubits();
  if (in.size() != dim)
    throw std::invalid_argument("state dimension does not match qubit count");
  out.resize(dim);
  static const std::complex<double> iphase[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  // internal normal form: P|j> = i^k (-1)^{|z&j|} |j^x>
  const int k = (p.phase_exponent() + std::popcount(p.x_mask() & p.z_mask())) & 3;
  const std::complex<double> f = iphase[k];
  const auto x = static_cast<std::int64_t>(p.x_mask());
  const std::uint64_t z = p.z_mask();
  for (std::int64_t m = 0; m < dim; ++m) {
    const std::int64_t j = m ^ x;
    const double sign =
        (std::popcount(z & static_cast<std::uint64_t>(j)) & 1) ? -1.0 : 1.0;
    out[m] = f * sign * in[j];
  }
}

StateVector apply(const PauliString& p, const StateVector& state) {
  if (p.n_qubits() != state.n_qubits)
    throw std::invalid_argument("operator and state qubit counts differ");
  StateVector out;
  out.n_qubits = state.n_qubits;
  apply_into(p, state.amplitudes, out.amplitudes);
  return out;
}

std::complex<double> inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("states have different qubit counts");
  return a.amplitudes.dot(b.amplitudes);
}

}  // namespace kising
