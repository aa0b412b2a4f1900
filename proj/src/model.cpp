#include "kising/model.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace kising {

namespace {

int parity64(std::uint64_t v) { return std::popcount(v) & 1; }

// Matvec worker count. Chunking is over output indices, so results are
// bitwise identical for any thread count.
int thread_count_from_env() {
  const char* s = std::getenv("KISING_THREADS");
  if (s == nullptr || *s == '\0') return 1;
  const long v = std::strtol(s, nullptr, 10);
  if (v < 1) return 1;
  if (v > 256) return 256;
  return static_cast<int>(v);
}

}  // namespace

void CouplingParams::validate() const {
  if (!(j > 0.0)) throw std::invalid_argument("coupling j must be positive");
  if (!(k > 0.0)) throw std::invalid_argument("coupling k must be positive");
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("coupling lambda must be non-negative");
  }
}

void PauliSum::add_term(double coefficient, const PauliString& op) {
  if (op.n_qubits() != n_) {
    throw std::invalid_argument("term qubit count does not match operator sum");
  }
  if (!op.is_hermitian()) {
    throw std::invalid_argument("operator sum terms must be Hermitian");
  }
  terms_.emplace_back(coefficient, op);
}

void PauliSum::add_identity(double coefficient) {
  add_term(coefficient, PauliString(n_));
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_) {
    throw std::invalid_argument("operator sums act on different qubit counts");
  }
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

double PauliSum::coefficient_scale() const {
  double s = 0.0;
  for (const auto& [c, op] : terms_) s += std::abs(c);
  return s;
}

void PauliSum::apply_into(const Eigen::VectorXcd& in,
                          Eigen::VectorXcd& out) const {
  const std::int64_t dim = std::int64_t{1} << n_;
  if (in.size() != dim) {
    throw std::invalid_argument("state dimension does not match operator sum");
  }
  out.resize(dim);

  struct TermData {
    std::uint64_t x;
    std::uint64_t z;
    std::complex<double> factor;
  };
  static const std::complex<double> unit_phase[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  std::vector<TermData> data;
  data.reserve(terms_.size());
  for (const auto& [c, op] : terms_) {
    const int k_internal =
        (op.phase_exponent() + std::popcount(op.x_mask() & op.z_mask())) & 3;
    data.push_back({op.x_mask(), op.z_mask(), c * unit_phase[k_internal]});
  }

  auto run_chunk = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t m = begin; m < end; ++m) out[m] = 0.0;
    for (const TermData& t : data) {
      for (std::int64_t m = begin; m < end; ++m) {
        const std::uint64_t src = static_cast<std::uint64_t>(m) ^ t.x;
        const double sign = parity64(t.z & src) ? -1.0 : 1.0;
        out[m] += t.factor * sign * in[static_cast<std::int64_t>(src)];
      }
    }
  };

  const int n_threads = thread_count_from_env();
  if (n_threads == 1 || dim < (std::int64_t{1} << 12)) {
    run_chunk(0, dim);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  const std::int64_t chunk = (dim + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    const std::int64_t begin = t * chunk;
    const std::int64_t end = std::min(dim, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run_chunk, begin, end);
  }
  for (std::thread& th : pool) th.join();
}

StateVector PauliSum::apply(const StateVector& state) const {
  if (state.n_qubits != n_) {
    throw std::invalid_argument("state dimension does not match operator sum");
  }
  StateVector result;
  result.n_qubits = n_;
  apply_into(state.amplitudes, result.amplitudes);
  return result;
}

nlohmann::json PauliSum::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [c, op] : terms_) {
    terms.push_back({{"coefficient", c}, {"pauli", op.to_json()}});
  }
  return {{"n_qubits", n_}, {"terms", terms}};
}

PauliString vertex_operator(const Lattice& l, int vertex) {
  const auto& star = l.stars.at(static_cast<std::size_t>(vertex));
  std::uint64_t x = 0;
  for (int e : star) x |= std::uint64_t{1} << e;
  return PauliString::from_masks(l.n_edges(), x, 0);
}

PauliString plaquette_operator(const Lattice& l, int plaquette) {
  const auto& boundary = l.plaquettes.at(static_cast<std::size_t>(plaquette));
  std::uint64_t z = 0;
  for (int e : boundary) z |= std::uint64_t{1} << e;
  return PauliString::from_masks(l.n_edges(), 0, z);
}

PauliString loop_operator(const Lattice& l, const CycleSpec& cycle) {
  std::uint64_t mask = 0;
  for (int e : cycle.edges) mask ^= std::uint64_t{1} << e;
  if (cycle.dual) return PauliString::from_masks(l.n_edges(), mask, 0);
  return PauliString::from_masks(l.n_edges(), 0, mask);
}

PauliString ising_pair_operator(const Lattice& l, const IsingPair& pair) {
  const std::uint64_t z =
      (std::uint64_t{1} << pair.e1) | (std::uint64_t{1} << pair.e2);
  return PauliString::from_masks(l.n_edges(), 0, z);
}

PauliSum build_hamiltonian(const Lattice& l, const CouplingParams& c) {
  c.validate();
  PauliSum h(l.n_edges());
  for (int v = 0; v < l.n_vertices(); ++v) {
    h.add_term(-c.j, vertex_operator(l, v));
  }
  for (int p = 0; p < l.n_plaquettes(); ++p) {
    h.add_term(-c.k, plaquette_operator(l, p));
  }
  if (c.lambda != 0.0) {
    for (const IsingPair& pair : l.ising_pairs) {
      h.add_term(-c.lambda, ising_pair_operator(l, pair));
    }
  }
  return h;
}

bool commutes_with_all_terms(const PauliString& op, const PauliSum& h) {
  for (const auto& [c, term] : h.terms()) {
    if (!op.commutes_with(term)) return false;
  }
  return true;
}

nlohmann::json SymmetryReport::to_json() const {
  auto dump = [](const std::vector<SymmetryCheck>& checks) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : checks) {
      out.push_back({{"name", c.name}, {"commutes", c.commutes}});
    }
    return out;
  };
  return {{"plaquette_ops", dump(plaquette_ops)},
          {"vertex_ops", dump(vertex_ops)},
          {"z_loops", dump(z_loops)},
          {"x_loops", dump(x_loops)},
          {"all_plaquettes_commute", all_plaquettes_commute},
          {"any_vertex_commutes", any_vertex_commutes},
          {"all_z_loops_commute", all_z_loops_commute},
          {"any_x_loop_commutes", any_x_loop_commutes}};
}

SymmetryReport check_symmetries(const Lattice& l, const CouplingParams& c) {
  const PauliSum h = build_hamiltonian(l, c);
  SymmetryReport report;

  report.all_plaquettes_commute = true;
  for (int p = 0; p < l.n_plaquettes(); ++p) {
    const bool ok = commutes_with_all_terms(plaquette_operator(l, p), h);
    report.plaquette_ops.push_back({"plaquette " + std::to_string(p), ok});
    report.all_plaquettes_commute &= ok;
  }

  report.any_vertex_commutes = false;
  for (int v = 0; v < l.n_vertices(); ++v) {
    const bool ok = commutes_with_all_terms(vertex_operator(l, v), h);
    report.vertex_ops.push_back({"vertex " + std::to_string(v), ok});
    report.any_vertex_commutes |= ok;
  }

  report.all_z_loops_commute = true;
  report.any_x_loop_commutes = false;
  for (const CycleSpec& cycle : cycles(l)) {
    if (cycle.label == CycleLabel::c1prime) continue;
    const bool ok = commutes_with_all_terms(loop_operator(l, cycle), h);
    const SymmetryCheck check{cycle_label_name(cycle.label), ok};
    if (cycle.dual) {
      report.x_loops.push_back(check);
      report.any_x_loop_commutes |= ok;
    } else {
      report.z_loops.push_back(check);
      report.all_z_loops_commute &= ok;
    }
  }
  return report;
}

StateVector kitaev_ground_state(const Lattice& l, SectorLabel sector) {
  if (sector.s1 != 0 && sector.s1 != 1) {
    throw std::invalid_argument("sector labels must be 0 or 1");
  }
  if (l.kind == LatticeKind::torus && sector.s2 != 0 && sector.s2 != 1) {
    throw std::invalid_argument("sector labels must be 0 or 1");
  }
  if (l.n_vertices() > 24) {
    throw std::invalid_argument("vertex group too large to average over");
  }

  std::vector<std::uint64_t> star_mask(l.n_vertices());
  for (int v = 0; v < l.n_vertices(); ++v) {
    star_mask[static_cast<std::size_t>(v)] = vertex_operator(l, v).x_mask();
  }

  // prod_s (1 + A_s) |0...0> expands into one basis state per subset of
  // vertices; every amplitude is +1 before normalization because vertex
  // operators are phase-free X strings.
  StateVector state = StateVector::zero_state(l.n_edges());
  state.amplitudes.setZero();
  const std::size_t n_subsets = std::size_t{1} << l.n_vertices();
  std::vector<std::uint64_t> subset_image(n_subsets, 0);
  state.amplitudes[0] += 1.0;
  for (std::size_t s = 1; s < n_subsets; ++s) {
    const int low = std::countr_zero(s);
    subset_image[s] =
        subset_image[s & (s - 1)] ^ star_mask[static_cast<std::size_t>(low)];
    state.amplitudes[static_cast<std::int64_t>(subset_image[s])] += 1.0;
  }
  state.normalize();

  // Tx strings anticommute with exactly one Tz loop each, so they move the
  // state between topological sectors without disturbing the vertex sector.
  if (sector.s1 == 1) {
    state = apply(loop_operator(l, cycle_named(l, CycleLabel::tx1)), state);
  }
  if (l.kind == LatticeKind::torus && sector.s2 == 1) {
    state = apply(loop_operator(l, cycle_named(l, CycleLabel::tx2)), state);
  }
  return state;
}

}  // namespace kising
