"""Mirrored ``2n``-qubit family.

Region A is sites ``1..n`` and region B sites ``n+1..2n``; both halves carry
the same bit string. Strings ending in 0 share amplitude ``lp``, strings
ending in 1 share ``lm``, each divided by ``sqrt(2^(n-1))`` so that
``lp^2 + lm^2 = 1`` normalizes the state.
"""

from __future__ import annotations

import math

import numpy as np

from qbell.errors import CapacityError, ValidationError
from qbell.states import PureState, pure_from_amplitudes

MAX_HALF_SITES = 5
NORM_TOL = 1e-10


def ghz2n_state(n: int, lp: float, lm: float) -> PureState:
    if int(n) != n or n < 2:
        raise ValidationError(f"n must be an integer >= 2, got {n}")
    if n > MAX_HALF_SITES:
        raise CapacityError(f"n={n} exceeds the {2 * MAX_HALF_SITES}-qubit cap of this family")
    if abs(lp * lp + lm * lm - 1.0) > NORM_TOL:
        raise ValidationError(f"lp^2 + lm^2 = {lp * lp + lm * lm:.15g}, expected 1")
    scale = 1.0 / math.sqrt(2 ** (n - 1))
    amps = np.zeros(4**n, dtype=complex)
    for s in range(2**n):
        amps[(s << n) | s] = (lm if s & 1 else lp) * scale
    return pure_from_amplitudes(2 * n, amps)


def ghz2n_entropy(n: int, lp: float, lm: float) -> float:
    """``(n-1) ln 2 - lp^2 ln lp^2 - lm^2 ln lm^2`` for region A."""
    out = (n - 1) * math.log(2)
    for x in (lp * lp, lm * lm):
        if x > 0:
            out -= x * math.log(x)
    return out


def ghz2n_gram_eigenvalues(n: int, c: float) -> tuple[float, float, float]:
    """``(3^(n-1) C^2, 3^(n-1) C^2, 3^(n-1))``."""
    k = 3.0 ** (n - 1)
    return k * c * c, k * c * c, k


def ghz2n_bound(n: int, c: float) -> float:
    """``2 sqrt(3^(n-1)) sqrt(1 + C^2)``."""
    return 2.0 * math.sqrt(3.0 ** (n - 1) * (1.0 + c * c))
