"""Kitaev-Ising model toolkit.

Stabilizer lattices on the torus and the periodic two-leg ladder, sparse and
dense spectra of H(lambda), virtual-spin mapping verification, Wilson loop
averages, and the closed-form mean-field and free-fermion references.
"""

from ._core import (
    ExtremeStateCheck,
    ExtremeStateReport,
    Lattice,
    MapReport,
    MeanFieldResult,
    PauliSum,
    SpectrumResult,
    StateVector,
    WilsonRegion,
    __version__,
    build_hamiltonian,
    build_ladder,
    build_torus,
    dense_spectrum,
    extreme_state_check,
    kitaev_ground_state,
    lowest_eigenpairs,
    make_rect_region,
    mean_field,
    measure_ground_wilson,
    region_from_vertices,
    verify_ladder_map,
    verify_torus_map,
    wilson_ising_estimate,
    wilson_ising_estimate_valid,
    wilson_kitaev_estimate,
    wilson_kitaev_estimate_valid,
    xy_ground_energy,
    xy_ground_energy_per_spin_limit,
)

__all__ = [
    "ExtremeStateCheck",
    "ExtremeStateReport",
    "Lattice",
    "MapReport",
    "MeanFieldResult",
    "PauliSum",
    "SpectrumResult",
    "StateVector",
    "WilsonRegion",
    "__version__",
    "build_hamiltonian",
    "build_ladder",
    "build_torus",
    "dense_spectrum",
    "extreme_state_check",
    "kitaev_ground_state",
    "lowest_eigenpairs",
    "make_rect_region",
    "mean_field",
    "measure_ground_wilson",
    "region_from_vertices",
    "verify_ladder_map",
    "verify_torus_map",
    "wilson_ising_estimate",
    "wilson_ising_estimate_valid",
    "wilson_kitaev_estimate",
    "wilson_kitaev_estimate_valid",
    "xy_ground_energy",
    "xy_ground_energy_per_spin_limit",
]
