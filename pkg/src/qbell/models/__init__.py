"""Worked systems: XY dimer, Wen-Plaquette tori, mirrored 2n-qubit family, toric-code cylinder."""

from qbell.models.cylinder import (
    CylinderSpec,
    cylinder_concurrence,
    cylinder_p_from_purity,
    cylinder_purity,
    cylinder_renyi,
    cylinder_spectrum,
    disk_entropy,
)
from qbell.models.ghz2n import ghz2n_bound, ghz2n_entropy, ghz2n_gram_eigenvalues, ghz2n_state
from qbell.models.wen_plaquette import (
    DEFAULT_LABELINGS,
    find_labeling,
    ground_space,
    ground_space_residual,
    wen_plaquette_6_family,
    wen_plaquette_hamiltonian,
    wen_plaquette_states,
)
from qbell.models.xy import (
    XyParams,
    xy_critical_temperature,
    xy_eigensystem,
    xy_hamiltonian,
    xy_thermal,
)

__all__ = [
    "CylinderSpec",
    "DEFAULT_LABELINGS",
    "XyParams",
    "cylinder_concurrence",
    "cylinder_p_from_purity",
    "cylinder_purity",
    "cylinder_renyi",
    "cylinder_spectrum",
    "disk_entropy",
    "find_labeling",
    "ghz2n_bound",
    "ghz2n_entropy",
    "ghz2n_gram_eigenvalues",
    "ghz2n_state",
    "ground_space",
    "ground_space_residual",
    "wen_plaquette_6_family",
    "wen_plaquette_hamiltonian",
    "wen_plaquette_states",
    "xy_critical_temperature",
    "xy_eigensystem",
    "xy_hamiltonian",
    "xy_thermal",
]
