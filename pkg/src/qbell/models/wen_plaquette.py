"""Wen-Plaquette ground states on the 4-site and 6-site tori.

``H = sum_p X(i) Y(i+x) X(i+x+y) Y(i+y)`` with one plaquette per vertex
``i`` of a periodic ``rows x cols`` lattice; ``x`` steps along a row
(column index + 1) and ``y`` steps down a column (row index + 1). Listed
ground states span the lowest eigenspace.

A *labeling* maps lattice position ``r * cols + c`` to a 0-based qubit
index. The 2x3 torus uses the row-major labeling directly; on the 2x2 torus
the listed states require the second row to be read right to left.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

import numpy as np

from qbell.errors import ValidationError
from qbell.linalg import hermitian_eig, kron_all
from qbell.pauli import SIGMA
from qbell.states import PureState, pure_from_amplitudes, superpose

WEN4_TERMS = (
    ((1, "0000"), (1, "1111")),
    ((1, "1010"), (1, "0101")),
    ((1, "0011"), (-1, "1100")),
    ((1, "1001"), (-1, "0110")),
)
# psi_1: (lp/sqrt2)(-|111000> + |001110>) + (lm/sqrt2)(|100011> + |010101>)
WEN6_TERMS = {
    1: (((-1, "111000"), (1, "001110")), ((1, "100011"), (1, "010101"))),
    2: (((-1, "000111"), (1, "110001")), ((1, "011100"), (1, "101010"))),
}
DEFAULT_LABELINGS = {
    (2, 2): (0, 1, 3, 2),
    (2, 3): (0, 1, 2, 3, 4, 5),
}
FAMILY_NORM_TOL = 1e-10


def wen_plaquette_states(sites: int, index: int) -> PureState:
    """Listed ground states: ``index`` 0..3 for 4 sites, 1 or 2 (``G_1``, ``G_2``) for 6."""
    if sites == 4:
        if index not in range(4):
            raise ValidationError(f"4-site ground state index must be 0..3, got {index}")
        return superpose(WEN4_TERMS[index])
    if sites == 6:
        if index not in (1, 2):
            raise ValidationError(f"6-site ground state index must be 1 or 2, got {index}")
        h = 1 / math.sqrt(2)
        return wen_plaquette_6_family(index, h, h)
    raise ValidationError(f"sites must be 4 or 6, got {sites}")


def wen_plaquette_6_family(which: int, lp: float, lm: float) -> PureState:
    """Two-parameter deformation ``psi_1`` / ``psi_2`` of ``G_1`` / ``G_2``."""
    if which not in (1, 2):
        raise ValidationError(f"family selector must be 1 or 2, got {which}")
    if abs(lp * lp + lm * lm - 1.0) > FAMILY_NORM_TOL:
        raise ValidationError(f"lp^2 + lm^2 = {lp * lp + lm * lm:.15g}, expected 1")
    plus, minus = WEN6_TERMS[which]
    h = 1 / math.sqrt(2)
    amps = np.zeros(64, dtype=complex)
    for coef, branch in ((lp * h, plus), (lm * h, minus)):
        for sign, bits in branch:
            amps[int(bits, 2)] += sign * coef
    return pure_from_amplitudes(6, amps)


def _check_geometry(rows: int, cols: int) -> None:
    if (rows, cols) not in DEFAULT_LABELINGS:
        raise ValidationError(f"unsupported torus {rows}x{cols}; use 2x2 or 2x3")


def plaquettes(rows: int, cols: int, labeling: Sequence[int]) -> list[tuple[int, int, int, int]]:
    """Qubit indices ``(i, i+x, i+x+y, i+y)`` of every plaquette."""
    at = lambda r, c: labeling[(r % rows) * cols + (c % cols)]
    return [
        (at(r, c), at(r, c + 1), at(r + 1, c + 1), at(r + 1, c))
        for r in range(rows)
        for c in range(cols)
    ]


def wen_plaquette_hamiltonian(
    rows: int, cols: int, labeling: Sequence[int] | None = None
) -> np.ndarray:
    """Dense plaquette Hamiltonian on a periodic ``rows x cols`` torus."""
    _check_geometry(rows, cols)
    n = rows * cols
    labeling = tuple(DEFAULT_LABELINGS[(rows, cols)] if labeling is None else labeling)
    if sorted(labeling) != list(range(n)):
        raise ValidationError(f"labeling must be a permutation of 0..{n - 1}")
    h = np.zeros((2**n, 2**n), dtype=complex)
    for corners in plaquettes(rows, cols, labeling):
        ops = [SIGMA["i"]] * n
        for q, sym in zip(corners, "xyxy"):
            ops[q] = SIGMA[sym]
        h += kron_all(*ops)
    return h


def ground_space(h: np.ndarray, tol: float = 1e-9) -> tuple[float, np.ndarray]:
    """Lowest eigenvalue and an orthonormal basis of its eigenspace."""
    dec = hermitian_eig(h)
    e0 = dec.eigenvalues[-1]
    mask = dec.eigenvalues < e0 + tol
    return float(e0), dec.eigenvectors[:, mask]


def ground_space_residual(h: np.ndarray, states: Sequence[PureState]) -> float:
    """Largest ``|| (1 - P0) psi ||`` over the states, ``P0`` the ground projector."""
    _, v = ground_space(h)
    worst = 0.0
    for psi in states:
        a = psi.amplitudes
        worst = max(worst, float(np.linalg.norm(a - v @ (v.conj().T @ a))))
    return worst


def listed_ground_states(rows: int, cols: int) -> list[PureState]:
    _check_geometry(rows, cols)
    if rows * cols == 4:
        return [wen_plaquette_states(4, k) for k in range(4)]
    return [wen_plaquette_states(6, k) for k in (1, 2)]


def find_labeling(rows: int, cols: int, tol: float = 1e-9) -> tuple[int, ...] | None:
    """First labeling, in lexicographic order, whose ground space holds every listed state."""
    _check_geometry(rows, cols)
    states = listed_ground_states(rows, cols)
    for labeling in itertools.permutations(range(rows * cols)):
        h = wen_plaquette_hamiltonian(rows, cols, labeling)
        if ground_space_residual(h, states) < tol:
            return labeling
    return None
