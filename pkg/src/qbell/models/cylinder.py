"""Toric-code ground states on a cylinder, described by their reduced spectrum.

Cutting the cylinder through ``n_L`` plaquettes gives a region-A spectrum of
``p1/N_q`` and ``p2/N_q``, each ``N_q = 2^(n_L-1)``-fold degenerate, where
``p1 = |a00 + a01|^2 / 2`` and ``p2 = |a00 - a01|^2 / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qbell.errors import DomainError, ValidationError
from qbell.states import renyi_of_spectrum

COEF_TOL = 1e-12
DISCRIMINANT_TOL = 1e-12
LN2 = math.log(2)


@dataclass(frozen=True)
class CylinderSpec:
    n_L: int
    alpha00: complex
    alpha01: complex

    def __post_init__(self):
        if int(self.n_L) != self.n_L or self.n_L < 1:
            raise ValidationError(f"n_L must be a positive integer, got {self.n_L}")
        norm = abs(self.alpha00) ** 2 + abs(self.alpha01) ** 2
        if abs(norm - 1.0) > COEF_TOL:
            raise ValidationError(f"|a00|^2 + |a01|^2 = {norm:.15g}, expected 1")

    @property
    def N_q(self) -> int:
        return 2 ** (self.n_L - 1)

    @property
    def p(self) -> tuple[float, float]:
        a, b = complex(self.alpha00), complex(self.alpha01)
        return abs(a + b) ** 2 / 2, abs(a - b) ** 2 / 2


def cylinder_spectrum(spec: CylinderSpec) -> np.ndarray:
    """All ``2^n_L`` reduced-density eigenvalues, descending."""
    p1, p2 = spec.p
    q = spec.N_q
    return np.sort(np.concatenate([np.full(q, p1 / q), np.full(q, p2 / q)]))[::-1]


def cylinder_renyi(spec: CylinderSpec, order: float) -> float:
    """``n_L ln 2 - (ln 2 - ln(p1^a + p2^a)/(1 - a))``; order 1 uses ``-sum p ln p``."""
    if order <= 0:
        raise ValidationError(f"Renyi order must be positive, got {order}")
    p = np.array(spec.p)
    return spec.n_L * LN2 - (LN2 - renyi_of_spectrum(p, order))


def cylinder_topological_part(spec: CylinderSpec) -> float:
    """Boundary-independent piece ``ln 2 + sum p ln p``; ``ln 2`` at most, 0 at ``p = 1/2``."""
    return LN2 - renyi_of_spectrum(np.array(spec.p), 1.0)


def cylinder_purity(spec: CylinderSpec) -> float:
    p1, p2 = spec.p
    return (p1 * p1 + p2 * p2) / spec.N_q


def cylinder_p_from_purity(n_L: int, purity: float) -> tuple[float, float]:
    """Invert ``Tr rho_A^2 = (p1^2 + p2^2) / 2^(n_L-1)`` with ``p1 >= p2``."""
    disc = 1.0 - 2.0 * (1.0 - 2.0 ** (n_L - 1) * purity)
    if disc < -DISCRIMINANT_TOL:
        raise DomainError(
            f"purity {purity:.12g} is below 2^-n_L for n_L={n_L}; discriminant {disc:.3e} < 0"
        )
    root = math.sqrt(max(disc, 0.0))
    return (1.0 + root) / 2.0, (1.0 - root) / 2.0


def cylinder_concurrence(spec: CylinderSpec, n_A: int | None = None) -> float:
    """``sqrt(2 (1 - 2^(n_A-1) Tr rho_A^2))`` with ``n_A`` defaulting to ``n_L``."""
    n_A = spec.n_L if n_A is None else n_A
    radicand = 2.0 * (1.0 - 2.0 ** (n_A - 1) * cylinder_purity(spec))
    if radicand < -1e-9:
        raise DomainError(f"n_A={n_A} gives a negative radicand {radicand:.3e}")
    return math.sqrt(max(radicand, 0.0))


def disk_entropy(n_L: int) -> float:
    """``n_L ln 2`` for a disk with ``n_L`` holes, at every Renyi order."""
    if int(n_L) != n_L or n_L < 0:
        raise ValidationError(f"n_L must be a non-negative integer, got {n_L}")
    return n_L * LN2
