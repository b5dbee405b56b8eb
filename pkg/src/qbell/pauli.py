"""Pauli-string expectation values and the generalized R-matrix.

The generalized R-matrix of an ``n``-qubit state collects every correlator
``Tr(rho s_1 (x) ... (x) s_n)`` with ``s_k`` in ``{x, y, z}`` into a
``3^(n-1) x 3`` array. One site, the *pivot*, supplies the column index; the
remaining sites, taken in ``site_order``, form a big-endian base-3 row index
with digits ``x -> 0, y -> 1, z -> 2``.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qbell.errors import CapacityError, ValidationError
from qbell.states import DensityMatrix, PureState, State, as_density

MAX_RMATRIX_SITES = 10
IMAG_TOL = 1e-10

SIGMA = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
XYZ = "xyz"
_PAULI_STACK = np.stack([SIGMA[c] for c in "ixyz"])


@dataclass(frozen=True)
class PauliString:
    symbols: str

    def __post_init__(self):
        s = self.symbols.lower()
        object.__setattr__(self, "symbols", s)
        if not s or set(s) - set("ixyz"):
            raise ValidationError(f"Pauli string {self.symbols!r} must use only i, x, y, z")

    def __len__(self) -> int:
        return len(self.symbols)


def _apply_site(t: np.ndarray, axis: int, symbol: str) -> np.ndarray:
    """Act with one Pauli on tensor axis ``axis`` (axis length 2)."""
    if symbol == "i":
        return t
    lo = np.take(t, 0, axis=axis)
    hi = np.take(t, 1, axis=axis)
    if symbol == "x":
        parts = (hi, lo)
    elif symbol == "y":
        parts = (-1j * hi, 1j * lo)
    else:
        parts = (lo, -hi)
    return np.stack(parts, axis=axis)


def apply_pauli(psi: np.ndarray, p: str, n: int) -> np.ndarray:
    """``(s_1 (x) ... (x) s_n) |psi>`` by single-site action on the amplitude tensor."""
    t = psi.reshape((2,) * n)
    for k, sym in enumerate(p):
        t = _apply_site(t, k, sym)
    return t.reshape(-1)


def pauli_expectation(state: State, p: PauliString | str) -> float:
    """Real expectation value of a Pauli string, never forming the 2^n x 2^n operator."""
    if not isinstance(p, PauliString):
        p = PauliString(p)
    n = state.n_sites
    if len(p) != n:
        raise ValidationError(f"Pauli string has length {len(p)} but the state has {n} sites")
    if isinstance(state, PureState):
        val = np.vdot(state.amplitudes, apply_pauli(state.amplitudes, p.symbols, n))
    elif isinstance(state, DensityMatrix):
        # P rho acting on the row index, then the trace
        m = state.matrix.reshape((2,) * n + (2**n,))
        for k, sym in enumerate(p.symbols):
            m = _apply_site(m, k, sym)
        val = np.trace(m.reshape(2**n, 2**n))
    else:
        raise ValidationError(f"unsupported state type {type(state).__name__}")
    if abs(val.imag) > IMAG_TOL:
        raise ValidationError(f"Pauli expectation has imaginary residue {val.imag:.3e}")
    return float(val.real)


def correlation_tensor(state: State, include_identity: bool = False) -> np.ndarray:
    """All Pauli correlators as an ``n``-axis real tensor.

    Axis ``k`` runs over ``x, y, z`` (or ``i, x, y, z`` with ``include_identity``)
    for site ``k + 1``. The density matrix is contracted site by site against
    the Pauli basis, so the cost is ``O(n 4^n)`` rather than one state
    evaluation per string.
    """
    n = state.n_sites
    if n > MAX_RMATRIX_SITES:
        raise CapacityError(f"correlation tensors are capped at {MAX_RMATRIX_SITES} sites")
    if isinstance(state, PureState):
        a = state.amplitudes
        rho = np.outer(a, a.conj())
    else:
        rho = as_density(state).matrix
    basis = _PAULI_STACK if include_identity else _PAULI_STACK[1:]
    # T[i..] = sum_{s,s'} rho[s, s'] prod_k sigma_{i_k}[s'_k, s_k]
    t = rho.reshape((2,) * (2 * n))
    for k in range(n):
        # axes now: (done paulis k) + (row bits k..n-1) + (col bits k..n-1)
        row_axis = k
        col_axis = k + (n - k)
        t = np.tensordot(t, basis, axes=([row_axis, col_axis], [2, 1]))
        # new pauli axis is last; move it in front of the remaining bits
        t = np.moveaxis(t, -1, k)
    if np.max(np.abs(t.imag)) > IMAG_TOL:
        raise ValidationError("correlation tensor has a non-negligible imaginary part")
    return np.ascontiguousarray(t.real)


def _resolve_order(n: int, pivot: int | None, site_order: Sequence[int] | None) -> tuple[int, tuple[int, ...]]:
    if n < 2:
        raise ValidationError("the generalized R-matrix needs at least two sites")
    pivot = n if pivot is None else int(pivot)
    if not 1 <= pivot <= n:
        raise ValidationError(f"pivot {pivot} out of range 1..{n}")
    rest = tuple(k for k in range(1, n + 1) if k != pivot)
    if site_order is None:
        order = rest
    else:
        order = tuple(int(k) for k in site_order)
        if sorted(order) != sorted(rest):
            raise ValidationError(
                f"site_order {order} must be a permutation of the non-pivot sites {rest}"
            )
    return pivot, order


@dataclass(frozen=True)
class GeneralizedRMatrix:
    """Real ``3^(n-1) x 3`` matrix of Pauli correlators with a pivot column site."""

    n_sites: int
    pivot: int
    site_order: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    def row_label(self, row: int) -> str:
        digits = np.base_repr(row, 3).zfill(self.n_sites - 1) if self.n_sites > 1 else ""
        return "".join(XYZ[int(d)] for d in digits)

    def entry(self, symbols: str) -> float:
        """Look up ``R`` by a full length-n string written in physical site order."""
        if len(symbols) != self.n_sites or set(symbols) - set(XYZ):
            raise ValidationError(f"expected an x/y/z string of length {self.n_sites}")
        row = 0
        for k in self.site_order:
            row = 3 * row + XYZ.index(symbols[k - 1])
        return float(self.entries[row, XYZ.index(symbols[self.pivot - 1])])

    def nonzero(self, tol: float = 1e-12) -> dict[str, float]:
        """Non-vanishing entries keyed by the physical-order Pauli string."""
        out = {}
        for row, col in zip(*np.nonzero(np.abs(self.entries) > tol)):
            label = [""] * self.n_sites
            for k, sym in zip(self.site_order, self.row_label(row)):
                label[k - 1] = sym
            label[self.pivot - 1] = XYZ[col]
            out["".join(label)] = float(self.entries[row, col])
        return dict(sorted(out.items()))

    def to_csv(self) -> str:
        m = self.n_sites - 1
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index"] + [f"i{k}" for k in range(1, m + 1)] + ["col_x", "col_y", "col_z"])
        for row in range(self.entries.shape[0]):
            w.writerow(
                [row]
                + list(self.row_label(row))
                + [f"{v + 0.0:.12g}" for v in self.entries[row]]
            )
        return buf.getvalue()


def r_matrix_from_tensor(
    t: np.ndarray, pivot: int | None = None, site_order: Sequence[int] | None = None
) -> GeneralizedRMatrix:
    n = t.ndim
    pivot, order = _resolve_order(n, pivot, site_order)
    axes = [k - 1 for k in order] + [pivot - 1]
    entries = np.ascontiguousarray(np.transpose(t, axes).reshape(3 ** (n - 1), 3))
    return GeneralizedRMatrix(n, pivot, order, entries)


def generalized_r_matrix(
    state: State, pivot: int | None = None, site_order: Sequence[int] | None = None
) -> GeneralizedRMatrix:
    """Build the R-matrix with the given pivot (default: last site)."""
    _resolve_order(state.n_sites, pivot, site_order)
    return r_matrix_from_tensor(correlation_tensor(state), pivot, site_order)


def r_gram(r: GeneralizedRMatrix | np.ndarray) -> np.ndarray:
    """``R^T R``, contracted over the multi-index; a 3x3 symmetric PSD matrix."""
    e = r.entries if isinstance(r, GeneralizedRMatrix) else np.asarray(r, dtype=float)
    g = e.T @ e
    return 0.5 * (g + g.T)


def all_strings(n: int, alphabet: str = XYZ):
    """Pauli strings in big-endian order, matching tensor flattening."""
    return ("".join(s) for s in itertools.product(alphabet, repeat=n))
