"""Topological entanglement entropy from Bell-bound values.

For the deformed 6-site Wen-Plaquette ground states with sites 1 and 6
exchanged in the Bell operator, the bound reads ``gamma = 2 sqrt(5 + 4 C^2)``.
Inverting it gives the Schmidt weights::

    lp^2, lm^2 = (1 +/- sqrt(9/4 - gamma^2/16)) / 2

and from them the entanglement entropy of the one-site (``delta = 1``) and
two-site (``delta = 2``) cuts. A straight-line fit ``S = alpha L - S_TEE``
over cuts of different boundary length ``L`` isolates ``S_TEE``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qbell.errors import DomainError, ValidationError

GAMMA_MIN = 2.0 * math.sqrt(5.0)
GAMMA_MAX = 6.0
GAMMA_TOL = 1e-12
BOND_COUNTS = {1: 4, 2: 6}


def _radicand(gamma_m: float) -> float:
    if not GAMMA_MIN - GAMMA_TOL <= gamma_m <= GAMMA_MAX + GAMMA_TOL:
        raise DomainError(
            f"gamma_M={gamma_m!r} outside [2 sqrt 5, 6]; the inversion only holds on the "
            "branch where the bound equals 2 sqrt(5 + 4 C^2)"
        )
    return min(max(9.0 / 4.0 - gamma_m * gamma_m / 16.0, 0.0), 1.0)


def lambda_from_gamma(gamma_m: float) -> tuple[float, float]:
    """Schmidt weights ``(lp^2, lm^2)`` from the bound value."""
    r = math.sqrt(_radicand(gamma_m))
    return (1.0 + r) / 2.0, (1.0 - r) / 2.0


def entropy_from_gamma(gamma_m: float, delta: int) -> float:
    """Entanglement entropy (nats) of the ``delta = 1`` or ``delta = 2`` cut.

    ``S(1) = -ln(gamma^2/64 - 5/16)/2 - (r/2) ln((1 + r)/(1 - r))`` with
    ``r = sqrt(9/4 - gamma^2/16)``; ``S(2) = S(1) + ln 2``. At ``r = 1`` the
    state is a product across the cut and ``S(1) = 0``.
    """
    if delta not in (1, 2):
        raise ValidationError(f"delta must be 1 or 2, got {delta}")
    r2 = _radicand(gamma_m)
    r = math.sqrt(r2)
    if r >= 1.0:
        s1 = 0.0
    else:
        s1 = -0.5 * math.log((1.0 - r2) / 4.0)
        if r > 0:
            s1 -= 0.5 * r * math.log((1.0 + r) / (1.0 - r))
    return s1 + (delta - 1) * math.log(2.0)


@dataclass(frozen=True)
class TeeFit:
    slope_alpha: float
    s_tee: float
    d_quasi: float
    residual: float

    def as_dict(self) -> dict:
        return {
            "alpha": self.slope_alpha,
            "s_tee": self.s_tee,
            "d": self.d_quasi,
            "residual": self.residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def area_law_fit(points: Sequence[tuple[float, float]]) -> TeeFit:
    """Least-squares line ``S = alpha L - S_TEE``; exact for two points.

    ``residual`` is the root-sum-square misfit; ``d_quasi = exp(2 S_TEE)``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValidationError("need at least two (L, S) points")
    L, s = pts[:, 0], pts[:, 1]
    if np.ptp(L) == 0:
        raise ValidationError("all boundary lengths are equal; the slope is undetermined")
    a = np.column_stack([L, -np.ones_like(L)])
    (alpha, s_tee), *_ = np.linalg.lstsq(a, s, rcond=None)
    residual = float(np.linalg.norm(a @ np.array([alpha, s_tee]) - s))
    return TeeFit(float(alpha), float(s_tee), float(math.exp(2.0 * s_tee)), residual)
