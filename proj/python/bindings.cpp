// Python bindings for the main operations: lattice construction, Hamiltonian
// assembly, eigensolves, mapping verification, Wilson loops, and the
// analytic references. Coupling triples arrive as (j, k, lam) keyword
// arguments because `lambda` is reserved in Python.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kising/analytic.hpp"
#include "kising/effective_maps.hpp"
#include "kising/exact_diag.hpp"
#include "kising/lattice.hpp"
#include "kising/model.hpp"
#include "kising/pauli.hpp"
#include "kising/version.hpp"

namespace py = pybind11;

namespace {

kising::CouplingParams couplings(double j, double k, double lam) {
  kising::CouplingParams c{j, k, lam};
  c.validate();
  return c;
}

std::vector<kising::StateVector> ground_multiplet(
    const kising::SpectrumResult& res) {
  if (res.degeneracies.empty() || res.eigenvectors.empty())
    throw std::invalid_argument("spectrum result carries no eigenvectors");
  std::vector<kising::StateVector> multiplet;
  for (int idx : res.degeneracies.front())
    multiplet.push_back(res.eigenvectors[idx]);
  return multiplet;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kitaev-Ising model toolkit: stabilizer lattices, sparse and "
            "dense spectra, virtual-spin mappings, and analytic references";
  m.attr("__version__") = kising::version;

  py::class_<kising::Lattice>(m, "Lattice")
      .def_property_readonly("kind",
                             [](const kising::Lattice& l) {
                               return l.kind == kising::LatticeKind::torus
                                          ? "torus"
                                          : "ladder";
                             })
      .def_property_readonly("n_vertices", &kising::Lattice::n_vertices)
      .def_property_readonly("n_edges", &kising::Lattice::n_edges)
      .def_property_readonly("n_plaquettes", &kising::Lattice::n_plaquettes)
      .def("to_json",
           [](const kising::Lattice& l) { return lattice_to_json(l).dump(); });

  m.def("build_torus", &kising::build_torus, py::arg("lx"), py::arg("ly"));
  m.def("build_ladder", &kising::build_ladder, py::arg("n"));

  py::class_<kising::PauliSum>(m, "PauliSum")
      .def_property_readonly("n_qubits", &kising::PauliSum::n_qubits)
      .def_property_readonly("n_terms", &kising::PauliSum::n_terms)
      .def("to_json",
           [](const kising::PauliSum& h) { return h.to_json().dump(); });

  m.def(
      "build_hamiltonian",
      [](const kising::Lattice& l, double j, double k, double lam) {
        return build_hamiltonian(l, couplings(j, k, lam));
      },
      py::arg("lattice"), py::arg("j") = 1.0, py::arg("k") = 1.0,
      py::arg("lam") = 0.0);

  py::class_<kising::StateVector>(m, "StateVector")
      .def_property_readonly(
          "n_qubits", [](const kising::StateVector& s) { return s.n_qubits; })
      .def_property_readonly(
          "amplitudes",
          [](const kising::StateVector& s) { return s.amplitudes; });

  py::class_<kising::SpectrumResult>(m, "SpectrumResult")
      .def_readonly("eigenvalues", &kising::SpectrumResult::eigenvalues)
      .def_readonly("eigenvectors", &kising::SpectrumResult::eigenvectors)
      .def_readonly("residuals", &kising::SpectrumResult::residuals)
      .def_readonly("degeneracies", &kising::SpectrumResult::degeneracies)
      .def_readonly("converged", &kising::SpectrumResult::converged)
      .def_readonly("n_matvecs", &kising::SpectrumResult::n_matvecs)
      .def("to_json", [](const kising::SpectrumResult& r) {
        return r.to_json().dump();
      });

  m.def(
      "lowest_eigenpairs",
      [](const kising::PauliSum& h, int k, std::uint64_t seed, double tol,
         double degeneracy_tol) {
        kising::LanczosOptions opts;
        opts.seed = seed;
        opts.tol = tol;
        opts.degeneracy_tol = degeneracy_tol;
        return lowest_eigenpairs(h, k, opts);
      },
      py::arg("h"), py::arg("k"), py::arg("seed") = 12345,
      py::arg("tol") = 1e-10, py::arg("degeneracy_tol") = 1e-8);

  m.def("dense_spectrum", &kising::dense_spectrum, py::arg("h"),
        py::arg("with_vectors") = false, py::arg("degeneracy_tol") = 1e-8);

  m.def(
      "kitaev_ground_state",
      [](const kising::Lattice& l, int s1, int s2) {
        return kitaev_ground_state(l, {s1, s2});
      },
      py::arg("lattice"), py::arg("s1") = 0, py::arg("s2") = 0);

  py::class_<kising::WilsonRegion>(m, "WilsonRegion")
      .def_readonly("vertices", &kising::WilsonRegion::vertices)
      .def_readonly("perimeter", &kising::WilsonRegion::perimeter)
      .def_property_readonly("area", &kising::WilsonRegion::area);

  m.def("make_rect_region", &kising::make_rect_region, py::arg("lattice"),
        py::arg("x0"), py::arg("y0"), py::arg("w"), py::arg("h"));
  m.def("region_from_vertices", &kising::region_from_vertices,
        py::arg("lattice"), py::arg("vertices"));

  m.def("measure_ground_wilson",
        [](const kising::SpectrumResult& res, const kising::Lattice& l,
           const kising::WilsonRegion& region) {
          return measure_wilson(ground_multiplet(res), l, region);
        },
        py::arg("result"), py::arg("lattice"), py::arg("region"));

  m.def("wilson_kitaev_estimate", &kising::wilson_kitaev_estimate,
        py::arg("lambda_over_j"), py::arg("region"));
  m.def("wilson_kitaev_estimate_valid", &kising::wilson_kitaev_estimate_valid,
        py::arg("lambda_over_j"));
  m.def("wilson_ising_estimate", &kising::wilson_ising_estimate,
        py::arg("lambda_over_j"), py::arg("region"));
  m.def("wilson_ising_estimate_valid", &kising::wilson_ising_estimate_valid,
        py::arg("lambda_over_j"));

  py::class_<kising::MapReport>(m, "MapReport")
      .def_readonly("model", &kising::MapReport::model)
      .def_readonly("max_abs_spectral_deviation",
                    &kising::MapReport::max_abs_spectral_deviation)
      .def_readonly("sector_dimensions", &kising::MapReport::sector_dimensions)
      .def_readonly("tolerance", &kising::MapReport::tolerance)
      .def_readonly("passed", &kising::MapReport::pass)
      .def("to_json",
           [](const kising::MapReport& r) { return r.to_json().dump(); });

  m.def(
      "verify_ladder_map",
      [](int n, double j, double k, double lam, double tol) {
        return verify_ladder_map(n, couplings(j, k, lam), tol);
      },
      py::arg("n"), py::arg("j") = 1.0, py::arg("k") = 1.0,
      py::arg("lam") = 0.0, py::arg("tol") = 1e-10);
  m.def(
      "verify_torus_map",
      [](int lx, int ly, double j, double k, double lam, double tol) {
        return verify_torus_map(lx, ly, couplings(j, k, lam), tol);
      },
      py::arg("lx"), py::arg("ly"), py::arg("j") = 1.0, py::arg("k") = 1.0,
      py::arg("lam") = 0.0, py::arg("tol") = 1e-10);

  py::class_<kising::ExtremeStateCheck>(m, "ExtremeStateCheck")
      .def_readonly("name", &kising::ExtremeStateCheck::name)
      .def_readonly("deviation", &kising::ExtremeStateCheck::deviation)
      .def_readonly("passed", &kising::ExtremeStateCheck::pass);

  py::class_<kising::ExtremeStateReport>(m, "ExtremeStateReport")
      .def_readonly("checks", &kising::ExtremeStateReport::checks)
      .def_readonly("tolerance", &kising::ExtremeStateReport::tolerance)
      .def_readonly("passed", &kising::ExtremeStateReport::pass)
      .def("to_json", [](const kising::ExtremeStateReport& r) {
        return r.to_json().dump();
      });

  m.def("extreme_state_check", &kising::extreme_state_check,
        py::arg("lattice"), py::arg("tol") = 1e-10);

  py::class_<kising::MeanFieldResult>(m, "MeanFieldResult")
      .def_readonly("theta", &kising::MeanFieldResult::theta)
      .def_readonly("phi", &kising::MeanFieldResult::phi)
      .def_readonly("energy_per_site",
                    &kising::MeanFieldResult::energy_per_site)
      .def_readonly("x_expectation", &kising::MeanFieldResult::x_expectation)
      .def_readonly("z_expectation_branches",
                    &kising::MeanFieldResult::z_expectation_branches)
      .def_readonly("critical_lambda",
                    &kising::MeanFieldResult::critical_lambda);

  m.def(
      "mean_field",
      [](double j, double k, double lam) {
        return mean_field(couplings(j, k, lam));
      },
      py::arg("j") = 1.0, py::arg("k") = 1.0, py::arg("lam") = 0.0);

  m.def(
      "xy_ground_energy",
      [](int n, double j, double k, double lam) {
        return xy_ground_energy(n, couplings(j, k, lam));
      },
      py::arg("n"), py::arg("j") = 1.0, py::arg("k") = 1.0,
      py::arg("lam") = 0.0);
  m.def(
      "xy_ground_energy_per_spin_limit",
      [](double j, double k, double lam, bool include_constant) {
        return xy_ground_energy_per_spin_limit(couplings(j, k, lam),
                                               include_constant);
      },
      py::arg("j") = 1.0, py::arg("k") = 1.0, py::arg("lam") = 0.0,
      py::arg("include_constant") = true);
}
