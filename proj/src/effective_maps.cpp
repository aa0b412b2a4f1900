#include "kising/effective_maps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace kising {

namespace {

PauliString two_site_string(std::size_t n, int a, int b, bool x_type) {
  const std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  if (x_type) return PauliString::from_masks(n, mask, 0);
  return PauliString::from_masks(n, 0, mask);
}

double spectra_deviation(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::logic_error("spectra to compare have different lengths");
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dev = std::max(dev, std::abs(a[i] - b[i]));
  }
  return dev;
}

}  // namespace

PauliSum ladder_effective(int n, const CouplingParams& c) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("ladder column count must be even and >= 2");
  }
  c.validate();
  const int m = 2 * n;
  PauliSum h(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    h.add_term(-c.j, two_site_string(m, k, (k + 1) % m, false));
  }
  if (c.lambda != 0.0) {
    for (int k = 0; k < m; ++k) {
      h.add_term(-2.0 * c.lambda, two_site_string(m, k, (k + 1) % m, true));
    }
  }
  h.add_identity(-c.k * n);
  return h;
}

PauliString virtual_bond_image(const IsingPair& pair, const Lattice& l) {
  const PauliString pair_op = ising_pair_operator(l, pair);
  std::vector<int> anti;
  for (int v = 0; v < l.n_vertices(); ++v) {
    if (!vertex_operator(l, v).commutes_with(pair_op)) anti.push_back(v);
  }
  if (anti.size() != 2) {
    throw std::logic_error(
        "edge pair anticommutes with " + std::to_string(anti.size()) +
        " vertex operators instead of 2");
  }
  return two_site_string(static_cast<std::size_t>(l.n_vertices()), anti[0],
                         anti[1], false);
}

PauliSum TorusEffective::combined() const {
  PauliSum h = h_a;
  h += h_b;
  h.add_identity(constant);
  return h;
}

TorusEffective torus_effective(const Lattice& l, const CouplingParams& c) {
  if (l.kind != LatticeKind::torus) {
    throw std::invalid_argument("effective Ising pair requires a torus");
  }
  c.validate();
  const std::size_t n = static_cast<std::size_t>(l.n_vertices());
  TorusEffective out;
  out.h_a = PauliSum(n);
  out.h_b = PauliSum(n);
  for (int v = 0; v < l.n_vertices(); ++v) {
    PauliSum& target =
        l.sublattice[static_cast<std::size_t>(v)] == 0 ? out.h_a : out.h_b;
    target.add_term(
        -c.j, PauliString::from_masks(n, std::uint64_t{1} << v, 0));
  }
  if (c.lambda != 0.0) {
    std::map<std::pair<int, int>, double> bonds;
    for (const IsingPair& pair : l.ising_pairs) {
      const PauliString img = virtual_bond_image(pair, l);
      const std::uint64_t z = img.z_mask();
      const int a = std::countr_zero(z);
      const int b = 63 - std::countl_zero(z);
      if (l.sublattice[static_cast<std::size_t>(a)] !=
          l.sublattice[static_cast<std::size_t>(b)]) {
        throw std::logic_error("edge pair couples vertices across sublattices");
      }
      bonds[{a, b}] += c.lambda;
    }
    for (const auto& [bond, coeff] : bonds) {
      PauliSum& target =
          l.sublattice[static_cast<std::size_t>(bond.first)] == 0 ? out.h_a
                                                                  : out.h_b;
      target.add_term(-coeff,
                      two_site_string(n, bond.first, bond.second, false));
    }
  }
  out.constraint = {
      PauliString::from_masks(
          n, (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1, 0),
      +1};
  out.constant = -c.k * static_cast<double>(l.n_vertices());
  return out;
}

StateVector ladder_phi0(int n) {
  const Lattice l = build_ladder(n);
  if (l.n_edges() > 24) {
    throw std::invalid_argument("ladder too large for explicit virtual states");
  }
  const std::int64_t dim = std::int64_t{1} << l.n_edges();
  StateVector state;
  state.n_qubits = static_cast<std::size_t>(l.n_edges());
  state.amplitudes = Eigen::VectorXcd::Constant(
      dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  Eigen::VectorXcd tmp(dim);
  for (int p = 0; p < l.n_plaquettes(); ++p) {
    apply_into(plaquette_operator(l, p), state.amplitudes, tmp);
    state.amplitudes += tmp;
  }
  state.normalize();
  state.fix_global_phase();
  return state;
}

StateVector ladder_virtual_state(int n, std::uint64_t r) {
  const Lattice l = build_ladder(n);
  const int m = 2 * n;
  if (m < 64 && (r >> m) != 0) {
    throw std::invalid_argument("virtual label out of range");
  }
  StateVector state = ladder_phi0(n);
  const CycleSpec zigzag = cycle_named(l, CycleLabel::c1prime);
  std::uint64_t z = 0;
  for (int k = 0; k < m; ++k) {
    if ((r >> k) & 1) {
      z ^= std::uint64_t{1} << zigzag.edges[static_cast<std::size_t>(k)];
    }
  }
  state = apply(PauliString::from_masks(state.n_qubits, 0, z), state);
  state.fix_global_phase();
  return state;
}

StateVector torus_virtual_state(const Lattice& l, std::uint64_t r) {
  if (l.kind != LatticeKind::torus) {
    throw std::invalid_argument("virtual vertex labels require a torus");
  }
  const int n = l.n_vertices();
  if (n < 64 && (r >> n) != 0) {
    throw std::invalid_argument("virtual label out of range");
  }
  std::uint64_t mask = 0;
  for (int v = 0; v < n; ++v) {
    if ((r >> v) & 1) mask ^= vertex_operator(l, v).x_mask();
  }
  return StateVector::basis_state(static_cast<std::size_t>(l.n_edges()), mask);
}

nlohmann::json MapReport::to_json() const {
  nlohmann::json size;
  if (model == "ladder") {
    size = {{"columns", lx}};
  } else {
    size = {{"lx", lx}, {"ly", ly}};
  }
  return {{"model", model},
          {"size", size},
          {"couplings",
           {{"j", couplings.j}, {"k", couplings.k}, {"lambda", couplings.lambda}}},
          {"max_abs_spectral_deviation", max_abs_spectral_deviation},
          {"sector_dimensions", sector_dimensions},
          {"tolerance", tolerance},
          {"pass", pass}};
}

MapReport verify_ladder_map(int n, const CouplingParams& c, double tol) {
  const Lattice l = build_ladder(n);
  const PauliSum h = build_hamiltonian(l, c);
  std::vector<SectorConstraint> constraints;
  for (int p = 0; p < l.n_plaquettes(); ++p) {
    constraints.push_back({plaquette_operator(l, p), +1});
  }
  const SectorProjection proj = project_sector(h, constraints);
  const std::vector<double> original =
      hermitian_eigenvalues(proj.h_projected);
  const std::vector<double> effective =
      dense_spectrum(ladder_effective(n, c)).eigenvalues;

  MapReport report;
  report.model = "ladder";
  report.lx = n;
  report.couplings = c;
  report.sector_dimensions = {proj.dimension(), effective.size()};
  report.tolerance = tol;
  report.max_abs_spectral_deviation = spectra_deviation(original, effective);
  report.pass = report.max_abs_spectral_deviation < tol;
  return report;
}

MapReport verify_torus_map(int lx, int ly, const CouplingParams& c,
                           double tol) {
  const Lattice l = build_torus(lx, ly);
  const PauliSum h = build_hamiltonian(l, c);
  std::vector<SectorConstraint> constraints;
  for (int p = 0; p < l.n_plaquettes(); ++p) {
    constraints.push_back({plaquette_operator(l, p), +1});
  }
  constraints.push_back({loop_operator(l, cycle_named(l, CycleLabel::tz1)), +1});
  constraints.push_back({loop_operator(l, cycle_named(l, CycleLabel::tz2)), +1});
  const SectorProjection proj = project_sector(h, constraints);
  const std::vector<double> original =
      hermitian_eigenvalues(proj.h_projected);

  const TorusEffective eff = torus_effective(l, c);
  const SectorProjection proj_eff =
      project_sector(eff.combined(), {eff.constraint});
  const std::vector<double> effective =
      hermitian_eigenvalues(proj_eff.h_projected);

  MapReport report;
  report.model = "torus";
  report.lx = lx;
  report.ly = ly;
  report.couplings = c;
  report.sector_dimensions = {proj.dimension(), proj_eff.dimension()};
  report.tolerance = tol;
  report.max_abs_spectral_deviation = spectra_deviation(original, effective);
  report.pass = report.max_abs_spectral_deviation < tol;
  return report;
}

nlohmann::json ExtremeStateReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const ExtremeStateCheck& c : checks) {
    checks_json.push_back(
        {{"name", c.name}, {"deviation", c.deviation}, {"pass", c.pass}});
  }
  return {{"checks", checks_json}, {"tolerance", tolerance}, {"pass", pass}};
}

namespace {

double state_deviation(StateVector a, StateVector b) {
  a.normalize();
  a.fix_global_phase();
  b.normalize();
  b.fix_global_phase();
  return (a.amplitudes - b.amplitudes).norm();
}

}  // namespace

ExtremeStateReport extreme_state_check(const Lattice& l, double tol) {
  ExtremeStateReport report;
  report.tolerance = tol;

  if (l.kind == LatticeKind::torus) {
    const std::int64_t dim = std::int64_t{1} << l.n_edges();
    const std::uint64_t n_labels = std::uint64_t{1} << l.n_vertices();
    StateVector uniform;
    uniform.n_qubits = static_cast<std::size_t>(l.n_edges());
    uniform.amplitudes = Eigen::VectorXcd::Zero(dim);
    for (std::uint64_t r = 0; r < n_labels; ++r) {
      uniform.amplitudes += torus_virtual_state(l, r).amplitudes;
    }
    report.checks.push_back(
        {"uniform label superposition matches the pure-Kitaev ground state",
         state_deviation(uniform, kitaev_ground_state(l, {0, 0})), false});

    report.checks.push_back(
        {"label 0 realizes the all-up product state",
         state_deviation(torus_virtual_state(l, 0),
                         StateVector::basis_state(l.n_edges(), 0)),
         false});

    std::uint64_t r_a = 0;
    for (int v = 0; v < l.n_vertices(); ++v) {
      if (l.sublattice[static_cast<std::size_t>(v)] == 0) {
        r_a |= std::uint64_t{1} << v;
      }
    }
    const std::uint64_t all_edges =
        (std::uint64_t{1} << l.n_edges()) - 1;
    report.checks.push_back(
        {"sublattice-A labels realize the all-down product state",
         state_deviation(torus_virtual_state(l, r_a),
                         StateVector::basis_state(l.n_edges(), all_edges)),
         false});
  } else {
    StateVector uniform = ladder_phi0(l.lx);
    const CycleSpec zigzag = cycle_named(l, CycleLabel::c1prime);
    Eigen::VectorXcd tmp(uniform.amplitudes.size());
    for (int e : zigzag.edges) {
      const PauliString z =
          PauliString::from_masks(uniform.n_qubits, 0, std::uint64_t{1} << e);
      apply_into(z, uniform.amplitudes, tmp);
      uniform.amplitudes += tmp;
    }
    report.checks.push_back(
        {"uniform label superposition realizes the all-up product state",
         state_deviation(uniform, StateVector::basis_state(l.n_edges(), 0)),
         false});
  }

  report.pass = true;
  for (ExtremeStateCheck& c : report.checks) {
    c.pass = c.deviation < tol;
    report.pass &= c.pass;
  }
  return report;
}

}  // namespace kising
