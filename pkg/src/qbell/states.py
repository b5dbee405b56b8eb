"""Quantum state containers, bipartitions, partial trace and entropies.

Conventions
-----------
Sites are numbered from 1. Site ``k`` of an ``n``-site register is bit
``n - k`` of the basis-state integer, so site 1 is the leftmost tensor factor
and ``|0> = (1, 0)^T``, ``|1> = (0, 1)^T``. Entropies are in nats.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from qbell.errors import CapacityError, ValidationError
from qbell.linalg import MAX_QUBITS, hermitian_eigvals, hermiticity_defect

log = logging.getLogger(__name__)

NORM_TOL = 1e-10
NORM_REPAIR_LIMIT = 1e-6
DENSITY_TOL = 1e-10
NEG_EIG_TOL = 1e-9
ENTROPY_CUTOFF = 1e-14


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValidationError(f"number of sites must be a positive integer, got {n!r}")
    if n > MAX_QUBITS:
        raise CapacityError(f"{n} sites exceed the {MAX_QUBITS}-qubit dense cap")
    return int(n)


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector of ``n_sites`` qubits.

    ``renormalized_by`` records the factor applied when the input norm was off
    by more than 1e-10 but less than 1e-6; it is 1.0 otherwise.
    """

    n_sites: int
    amplitudes: np.ndarray
    renormalized_by: float = field(default=1.0, compare=False)

    def __post_init__(self):
        self.amplitudes.setflags(write=False)

    @property
    def dim(self) -> int:
        return 2**self.n_sites


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite ``2^n x 2^n`` matrix."""

    n_sites: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return 2**self.n_sites


State = Union[PureState, DensityMatrix]


def pure_from_amplitudes(n: int, amps: Sequence[complex]) -> PureState:
    n = _check_n(n)
    a = np.array(amps, dtype=complex).reshape(-1)
    if a.size != 2**n:
        raise ValidationError(f"expected {2**n} amplitudes for {n} sites, got {a.size}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("amplitudes must be finite")
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        raise ValidationError("amplitude vector is zero and cannot be normalized")
    deviation = abs(norm - 1.0)
    if deviation >= NORM_REPAIR_LIMIT:
        raise ValidationError(
            f"amplitude norm {norm:.12g} deviates from 1 by {deviation:.3e} (limit {NORM_REPAIR_LIMIT:g})"
        )
    factor = 1.0
    if deviation > NORM_TOL:
        factor = 1.0 / norm
        log.warning("renormalized amplitudes by factor %.15g", factor)
    return PureState(n, a / norm, renormalized_by=factor)


def basis_state(bits: str) -> PureState:
    """Computational basis state from a bit string, site 1 first."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValidationError(f"invalid bit string {bits!r}")
    n = _check_n(len(bits))
    a = np.zeros(2**n, dtype=complex)
    a[int(bits, 2)] = 1.0
    return PureState(n, a)


def superpose(terms: Iterable[tuple[complex, str]]) -> PureState:
    """Normalized superposition ``sum c |bits>`` from (coefficient, bit string) pairs."""
    terms = list(terms)
    if not terms:
        raise ValidationError("empty superposition")
    n = _check_n(len(terms[0][1]))
    a = np.zeros(2**n, dtype=complex)
    for c, bits in terms:
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ValidationError(f"invalid bit string {bits!r} for {n} sites")
        a[int(bits, 2)] += c
    norm = np.linalg.norm(a)
    if norm == 0.0:
        raise ValidationError("superposition vanishes")
    return PureState(n, a / norm)


def density_matrix(n: int, matrix, *, check_psd: bool = True) -> DensityMatrix:
    """Validate and wrap a density matrix."""
    n = _check_n(n)
    m = np.array(matrix, dtype=complex)
    if m.shape != (2**n, 2**n):
        raise ValidationError(f"expected a {2**n}x{2**n} matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("density matrix has non-finite entries")
    defect = hermiticity_defect(m)
    if defect > DENSITY_TOL:
        raise ValidationError(f"density matrix is not Hermitian (defect {defect:.3e})")
    tr = np.trace(m).real
    if abs(tr - 1.0) > DENSITY_TOL:
        raise ValidationError(f"density matrix trace is {tr:.12g}, expected 1")
    m = 0.5 * (m + m.conj().T)
    if check_psd:
        lo = hermitian_eigvals(m)[-1]
        if lo < -NEG_EIG_TOL:
            raise ValidationError(f"density matrix has negative eigenvalue {lo:.3e}")
    return DensityMatrix(n, m)


def density_from_pure(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(psi.n_sites, np.outer(a, a.conj()))


def as_density(state: State) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return density_from_pure(state)
    raise ValidationError(f"expected a PureState or DensityMatrix, got {type(state).__name__}")


def mix(weights: Sequence[float], states: Sequence[PureState]) -> DensityMatrix:
    """Convex combination ``sum_i p_i |psi_i><psi_i|``."""
    w = np.asarray(weights, dtype=float).reshape(-1)
    if len(states) == 0 or w.size != len(states):
        raise ValidationError("need one weight per state and at least one state")
    if np.any(w < 0):
        raise ValidationError("weights must be non-negative")
    if abs(w.sum() - 1.0) > DENSITY_TOL:
        raise ValidationError(f"weights sum to {w.sum():.12g}, expected 1")
    n = states[0].n_sites
    if any(s.n_sites != n for s in states):
        raise ValidationError("all states in a mixture must have the same number of sites")
    m = np.zeros((2**n, 2**n), dtype=complex)
    for p, s in zip(w, states):
        a = s.amplitudes
        m += p * np.outer(a, a.conj())
    return DensityMatrix(n, m)


@dataclass(frozen=True)
class Bipartition:
    """Subsystem A as an ordered tuple of 1-based sites; B is the complement."""

    n_sites: int
    subsystem_a: tuple[int, ...]

    def __post_init__(self):
        a = self.subsystem_a
        if not a:
            raise ValidationError("subsystem A must be non-empty")
        if len(set(a)) != len(a):
            raise ValidationError(f"duplicate sites in subsystem A: {a}")
        if any(int(k) != k or k < 1 or k > self.n_sites for k in a):
            raise ValidationError(f"sites {a} out of range 1..{self.n_sites}")
        if len(a) >= self.n_sites:
            raise ValidationError("subsystem A must be a strict subset of the sites")

    @property
    def subsystem_b(self) -> tuple[int, ...]:
        return tuple(k for k in range(1, self.n_sites + 1) if k not in self.subsystem_a)


def bipartition(n: int, sites: Iterable[int]) -> Bipartition:
    return Bipartition(n, tuple(int(k) for k in sites))


def partial_trace(rho: State, keep: Bipartition | Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on ``keep`` (site order of ``keep`` is kept)."""
    rho = as_density(rho)
    n = rho.n_sites
    if not isinstance(keep, Bipartition):
        keep = bipartition(n, keep)
    if keep.n_sites != n:
        raise ValidationError("bipartition and state have different site counts")
    a = [k - 1 for k in keep.subsystem_a]
    b = [k - 1 for k in keep.subsystem_b]
    t = rho.matrix.reshape((2,) * (2 * n))
    perm = a + b + [n + k for k in a] + [n + k for k in b]
    t = t.transpose(perm).reshape(2 ** len(a), 2 ** len(b), 2 ** len(a), 2 ** len(b))
    red = np.einsum("ibjb->ij", t)
    return DensityMatrix(len(a), 0.5 * (red + red.conj().T))


def reduced_pure(psi: PureState, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state of a pure state via the Schmidt matrix (no 2^n x 2^n product)."""
    n = psi.n_sites
    cut = keep if isinstance(keep, Bipartition) else bipartition(n, keep)
    a = [k - 1 for k in cut.subsystem_a]
    b = [k - 1 for k in cut.subsystem_b]
    m = psi.amplitudes.reshape((2,) * n).transpose(a + b).reshape(2 ** len(a), -1)
    red = m @ m.conj().T
    return DensityMatrix(len(a), 0.5 * (red + red.conj().T))


def reduce(state: State, keep) -> DensityMatrix:
    if isinstance(state, PureState):
        return reduced_pure(state, keep)
    return partial_trace(state, keep)


def purity(rho: State) -> float:
    m = as_density(rho).matrix
    return float(np.real(np.vdot(m, m)))


def spectrum(rho: State) -> np.ndarray:
    """Eigenvalues (descending) with numerical negatives in [-1e-9, 0) clamped to 0."""
    w = hermitian_eigvals(as_density(rho).matrix)
    return np.where((w < 0) & (w >= -NEG_EIG_TOL), 0.0, w)


def entropy_of_spectrum(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > ENTROPY_CUTOFF]
    return float(max(-np.sum(p * np.log(p)), 0.0))


def renyi_of_spectrum(p: np.ndarray, order: float) -> float:
    """``ln(sum p^a) / (1 - a)`` of the normalized spectrum.

    Near ``a = 1`` the sum is written as ``1 + sum p expm1((a-1) ln p)`` so
    that rounding is not amplified by ``1/(1 - a)``; further away the direct
    form is better conditioned.
    """
    if order <= 0:
        raise ValidationError(f"Renyi order must be positive, got {order}")
    if abs(order - 1.0) <= 1e-12:
        return entropy_of_spectrum(p)
    p = np.asarray(p, dtype=float)
    p = p[p > ENTROPY_CUTOFF]
    p = p / p.sum()
    if abs(order - 1.0) < 0.5:
        s = np.sum(p * np.expm1((order - 1.0) * np.log(p)))
        return float(math.log1p(s) / (1.0 - order))
    return float(math.log(np.sum(p**order)) / (1.0 - order))


def von_neumann_entropy(rho: State) -> float:
    """``-Tr rho ln rho`` in nats."""
    return entropy_of_spectrum(spectrum(rho))


def renyi_entropy(rho: State, order: float) -> float:
    """``ln(Tr rho^order) / (1 - order)``; order 1 is the von Neumann entropy."""
    if order <= 0:
        raise ValidationError(f"Renyi order must be positive, got {order}")
    return renyi_of_spectrum(spectrum(rho), order)


def entanglement_entropy(psi: State, cut: Iterable[int], order: float = 1.0) -> float:
    return renyi_entropy(reduce(psi, cut), order)


# state-file JSON ---------------------------------------------------------


def _pairs(z: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in z]


def state_to_dict(state: State) -> dict:
    if isinstance(state, PureState):
        return {"n": state.n_sites, "kind": "pure", "amplitudes": _pairs(state.amplitudes)}
    return {"n": state.n_sites, "kind": "density", "matrix": [_pairs(row) for row in state.matrix]}


def _complex(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.shape[-1] != 2:
        raise ValidationError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def state_from_dict(d: dict) -> State:
    try:
        n = int(d["n"])
        kind = d.get("kind", "pure" if "amplitudes" in d else "density")
        if kind == "pure":
            return pure_from_amplitudes(n, _complex(d["amplitudes"]))
        if kind == "density":
            return density_matrix(n, _complex(d["matrix"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed state file: {exc}") from exc
    raise ValidationError(f"unknown state kind {kind!r}")


def dumps_state(state: State) -> str:
    return json.dumps(state_to_dict(state))


def loads_state(text: str) -> State:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"state file is not valid JSON: {exc}") from exc
    return state_from_dict(d)
