"""Bell-violation bounds, concurrences and entanglement entropies of n-qubit states.

Site ``k`` of an ``n``-qubit register is bit ``n - k`` of the basis index, so
site 1 is the leftmost tensor factor, and ``|0> = (1, 0)``. Entropies are in
nats.
"""

from qbell.bell import (
    BellBoundReport,
    BellOptimum,
    BellSettings,
    OptimizerConfig,
    bell_bound,
    bell_expectation,
    build_bell_operator,
    maximize_bell,
)
from qbell.entanglement import (
    TheoremFamilySpec,
    WoottersReport,
    concurrence_pure,
    f_alpha,
    generalized_concurrence,
    lambda_from_concurrence,
    mixed_bound,
    theorem_state,
    wootters_concurrence,
)
from qbell.errors import CapacityError, DomainError, NotPSDError, QbellError, ValidationError
from qbell.linalg import EigenDecomposition, hermitian_eig, kron, sqrt_psd
from qbell.pauli import GeneralizedRMatrix, PauliString, generalized_r_matrix, pauli_expectation, r_gram
from qbell.states import (
    Bipartition,
    DensityMatrix,
    PureState,
    density_from_pure,
    mix,
    partial_trace,
    pure_from_amplitudes,
    purity,
    renyi_entropy,
    von_neumann_entropy,
)
from qbell.tee import TeeFit, area_law_fit, entropy_from_gamma, lambda_from_gamma

__version__ = "0.1.0"

__all__ = [
    "BellBoundReport",
    "BellOptimum",
    "BellSettings",
    "Bipartition",
    "CapacityError",
    "DensityMatrix",
    "DomainError",
    "EigenDecomposition",
    "GeneralizedRMatrix",
    "NotPSDError",
    "OptimizerConfig",
    "PauliString",
    "PureState",
    "QbellError",
    "TeeFit",
    "TheoremFamilySpec",
    "ValidationError",
    "WoottersReport",
    "area_law_fit",
    "bell_bound",
    "bell_expectation",
    "build_bell_operator",
    "concurrence_pure",
    "density_from_pure",
    "entropy_from_gamma",
    "f_alpha",
    "generalized_concurrence",
    "generalized_r_matrix",
    "hermitian_eig",
    "kron",
    "lambda_from_concurrence",
    "lambda_from_gamma",
    "maximize_bell",
    "mix",
    "mixed_bound",
    "partial_trace",
    "pauli_expectation",
    "pure_from_amplitudes",
    "purity",
    "r_gram",
    "renyi_entropy",
    "sqrt_psd",
    "theorem_state",
    "von_neumann_entropy",
    "wootters_concurrence",
]
