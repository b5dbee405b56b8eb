"""Concurrences, the f_alpha violation maps and the two-branch state family.

The two-branch family on ``n`` qubits is::

    |psi> = |u> (x) (lp |v>|1> + lm |~v>|0>)

with a product prefix ``|u>`` on ``n - alpha`` sites, an ``alpha - 1`` bit
string ``v`` and its complement ``~v``. Its R-matrix eigenvalue bound on the
reduced-form Bell violation evaluates to ``2 f_alpha(C)`` with ``C = 2 lp lm``.
For ``alpha = 2`` the bound is attained. For ``alpha >= 3`` the reduced
form reaches only ``2 sqrt(1 + C^2)`` (even ``alpha``) or
``max(2, 2 sqrt 2 C)`` (odd ``alpha``), both capped at ``2 sqrt 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from qbell.errors import DomainError, NotPSDError, ValidationError
from qbell.linalg import PSD_TOL, hermitian_eig
from qbell.pauli import SIGMA
from qbell.states import (
    Bipartition,
    DensityMatrix,
    PureState,
    State,
    as_density,
    bipartition,
    mix,
    pure_from_amplitudes,
)

RADICAND_TOL = 1e-9
SUPPORT_TOL = 1e-14
_YY = np.kron(SIGMA["y"], SIGMA["y"])


def _cut(state: State, cut) -> Bipartition:
    return cut if isinstance(cut, Bipartition) else bipartition(state.n_sites, cut)


def _require_pure(psi) -> PureState:
    if not isinstance(psi, PureState):
        raise ValidationError("the pure-state concurrence needs a PureState")
    return psi


def concurrence_pure(psi: PureState, cut: Bipartition | Iterable[int]) -> float:
    """``sqrt(2 (1 - Tr rho_A^2))``."""
    return generalized_concurrence(psi, cut, 1)


def schmidt_weights(psi: PureState, cut: Bipartition | Iterable[int]) -> np.ndarray:
    """Squared Schmidt coefficients across the cut, descending."""
    psi = _require_pure(psi)
    bp = _cut(psi, cut)
    n = psi.n_sites
    axes = [k - 1 for k in bp.subsystem_a] + [k - 1 for k in bp.subsystem_b]
    m = np.transpose(psi.amplitudes.reshape((2,) * n), axes).reshape(2 ** len(bp.subsystem_a), -1)
    return np.linalg.svd(m, compute_uv=False) ** 2


def generalized_concurrence(psi: PureState, cut: Bipartition | Iterable[int], delta: int) -> float:
    """``sqrt(2 (1 - 2^(delta-1) Tr rho_A^2))``.

    The rescaling makes the value independent of how many sites of a
    maximally mixed block the cut swallows; ``delta = 1`` is the ordinary
    pure-state concurrence. With Schmidt weights ``q`` the radicand is
    ``4 sum_{i<j} q_i q_j - 2 (2^(delta-1) - 1) sum q^2``, which keeps
    small concurrences accurate.
    """
    psi = _require_pure(psi)
    if int(delta) != delta or delta < 1:
        raise ValidationError(f"delta must be a positive integer, got {delta}")
    q = schmidt_weights(psi, cut)
    q = q / q.sum()
    pairs = float(np.sum(q[1:] * np.cumsum(q)[:-1]))
    p = float(np.sum(q * q))
    radicand = 4.0 * pairs - 2.0 * (2.0 ** (delta - 1) - 1.0) * p
    if radicand < -RADICAND_TOL:
        raise DomainError(
            f"2^(delta-1) * purity = {2.0 ** (delta - 1) * p:.12g} exceeds 1; "
            f"delta={delta} is too large for this cut"
        )
    return math.sqrt(max(radicand, 0.0))


@dataclass(frozen=True)
class WoottersReport:
    xi: np.ndarray
    concurrence: float

    def as_dict(self) -> dict:
        return {"xi": [float(x) for x in self.xi], "concurrence": self.concurrence}


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """``(Y (x) Y) rho* (Y (x) Y)`` in the computational basis."""
    return _YY @ rho.matrix.conj() @ _YY


def wootters_xi(rho: DensityMatrix) -> np.ndarray:
    """Descending eigenvalues of ``sqrt(sqrt(rho) rho~ sqrt(rho))``.

    With ``rho = A A^H`` on its numerical support, these are the singular
    values of ``A^H (Y (x) Y) A*``. Taking singular values directly keeps the
    error absolute; square-rooting eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``
    would turn 1e-16 noise in its null space into 1e-8 spurious ``xi``.
    """
    dec = hermitian_eig(rho.matrix)
    w = dec.eigenvalues
    if w[-1] < -PSD_TOL:
        raise NotPSDError(f"density matrix has eigenvalue {w[-1]:.3e}")
    keep = w > SUPPORT_TOL * max(w[0], 1.0)
    a = dec.eigenvectors[:, keep] * np.sqrt(w[keep])
    s = np.linalg.svd(a.conj().T @ _YY @ a.conj(), compute_uv=False)
    xi = np.zeros(4)
    xi[: s.size] = s
    return xi


def wootters_concurrence(rho: State) -> WoottersReport:
    """Two-qubit mixed-state concurrence ``max(0, xi1 - xi2 - xi3 - xi4)``.

    ``xi`` are the square roots of the spectrum of ``rho rho~``, descending;
    see :func:`wootters_xi`.
    """
    rho = as_density(rho)
    if rho.n_sites != 2:
        raise ValidationError(f"Wootters concurrence needs two qubits, got {rho.n_sites}")
    xi = wootters_xi(rho)
    return WoottersReport(xi, float(max(0.0, wootters_margin(xi))))


def wootters_margin(xi: np.ndarray) -> float:
    """Unclipped ``xi1 - xi2 - xi3 - xi4``; its sign change marks the entanglement edge."""
    return float(xi[0] - xi[1] - xi[2] - xi[3])


def _check_alpha(alpha: int) -> int:
    if int(alpha) != alpha or alpha < 2:
        raise ValidationError(f"alpha must be an integer >= 2, got {alpha}")
    return int(alpha)


def f_alpha(alpha: int, c: float) -> float:
    """Concurrence-to-violation map; the maximal violation is ``2 f_alpha(C)``.

    Even ``alpha``: ``sqrt(1 + 2^(alpha-2) c^2)`` up to ``c^2 = 2^(2-alpha)``,
    then ``2^((alpha-1)/2) c``. Odd ``alpha``: ``sqrt(1 + (2^(alpha-2) - 1) c^2)``
    up to ``c^2 = 1/(1 + 2^(alpha-2))``, then ``2^((alpha-1)/2) c``.
    """
    alpha = _check_alpha(alpha)
    if not -1e-12 <= c <= 1 + 1e-12:
        raise DomainError(f"concurrence {c} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    c2 = c * c
    if alpha % 2 == 0:
        low, edge = 1.0 + 2.0 ** (alpha - 2) * c2, 2.0 ** (2 - alpha)
    else:
        low, edge = 1.0 + (2.0 ** (alpha - 2) - 1.0) * c2, 1.0 / (1.0 + 2.0 ** (alpha - 2))
    if c2 <= edge:
        return math.sqrt(low)
    return 2.0 ** ((alpha - 1) / 2) * c


def lambda_from_concurrence(c: float) -> tuple[float, float]:
    """``(lp^2, lm^2) = ((1 + sqrt(1 - c^2))/2, (1 - sqrt(1 - c^2))/2)``."""
    if not -1e-12 <= c <= 1 + 1e-12:
        raise DomainError(f"concurrence {c} outside [0, 1]")
    root = math.sqrt(max(1.0 - c * c, 0.0))
    return (1.0 + root) / 2.0, (1.0 - root) / 2.0


@dataclass(frozen=True)
class TheoremFamilySpec:
    n: int
    alpha: int
    u_bits: str
    v_bits: str
    lambda_plus: float
    lambda_minus: float

    def __post_init__(self):
        _check_alpha(self.alpha)
        if self.alpha > self.n:
            raise ValidationError(f"alpha={self.alpha} exceeds n={self.n}")
        if len(self.u_bits) != self.n - self.alpha or set(self.u_bits) - set("01"):
            raise ValidationError(f"u_bits must be {self.n - self.alpha} bits")
        if len(self.v_bits) != self.alpha - 1 or set(self.v_bits) - set("01"):
            raise ValidationError(f"v_bits must be {self.alpha - 1} bits")
        norm = self.lambda_plus**2 + self.lambda_minus**2
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"lambda_plus^2 + lambda_minus^2 = {norm:.15g}, expected 1")

    @property
    def v_complement(self) -> str:
        return "".join("1" if b == "0" else "0" for b in self.v_bits)

    @property
    def concurrence(self) -> float:
        return 2.0 * abs(self.lambda_plus * self.lambda_minus)


def theorem_state(spec: TheoremFamilySpec) -> PureState:
    """``|u> (x) (lp |v>|1> + lm |~v>|0>)``; the single-site region A is site ``n``."""
    amps = np.zeros(2**spec.n, dtype=complex)
    amps[int(spec.u_bits + spec.v_bits + "1", 2)] += spec.lambda_plus
    amps[int(spec.u_bits + spec.v_complement + "0", 2)] += spec.lambda_minus
    return pure_from_amplitudes(spec.n, amps)


def mixed_bound(weights: Sequence[float], states: Sequence[PureState], alpha: int) -> float:
    """``2 sum_i p_i f_alpha(C(psi_i))`` with ``C`` taken across the last site.

    The maximum over settings is convex in the state, so this bounds the
    reduced-form violation of ``sum_i p_i |psi_i><psi_i|`` whenever each
    ``psi_i`` lies in the two-branch family of order ``alpha``.
    """
    mix(weights, states)
    total = 0.0
    for p, psi in zip(weights, states):
        c = concurrence_pure(psi, [psi.n_sites])
        total += p * f_alpha(alpha, min(c, 1.0))
    return 2.0 * total
