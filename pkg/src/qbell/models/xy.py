"""Two-qubit XY model in a non-uniform transverse field.

In the computational basis ``(|00>, |01>, |10>, |11>)`` the Hamiltonian is::

    [[-2B,   0,    0,   -J g],
     [ 0,   2Bd,  -J,    0  ],
     [ 0,   -J,  -2Bd,   0  ],
     [-J g,  0,    0,   2B  ]]

with ``g`` the anisotropy and ``d`` the field asymmetry. As a Pauli sum this
is ``-(J/2)(1+g) XX - (J/2)(1-g) YY - B(1-d) ZI - B(1+d) IZ``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qbell.entanglement import wootters_concurrence, wootters_margin
from qbell.errors import ValidationError
from qbell.linalg import hermitian_eig
from qbell.states import DensityMatrix, PureState, pure_from_amplitudes

TC_REL_TOL = 1e-10
TC_SCAN_POINTS = 241
TC_MARGIN_NOISE = 1e-12


@dataclass(frozen=True)
class XyParams:
    J: float
    gamma_tilde: float
    B: float
    delta_field: float = 0.0

    def __post_init__(self):
        if not self.J >= 0:
            raise ValidationError(f"J must be >= 0, got {self.J}")
        if not self.B >= 0:
            raise ValidationError(f"B must be >= 0, got {self.B}")
        if not 0 <= self.gamma_tilde <= 1:
            raise ValidationError(f"anisotropy must lie in [0, 1], got {self.gamma_tilde}")
        if not 0 <= self.delta_field <= 1:
            raise ValidationError(f"field asymmetry must lie in [0, 1], got {self.delta_field}")

    @property
    def lambda1(self) -> float:
        """``sqrt(4B^2 + J^2 g^2)``; the ``|00>, |11>`` block has energies ``+/-lambda1``."""
        return math.hypot(2 * self.B, self.J * self.gamma_tilde)

    @property
    def lambda2(self) -> float:
        """``sqrt(J^2 + 4B^2 d^2)``; the ``|01>, |10>`` block has energies ``+/-lambda2``."""
        return math.hypot(self.J, 2 * self.B * self.delta_field)


def xy_hamiltonian(p: XyParams) -> np.ndarray:
    J, g, B, d = p.J, p.gamma_tilde, p.B, p.delta_field
    return np.array(
        [
            [-2 * B, 0, 0, -J * g],
            [0, 2 * B * d, -J, 0],
            [0, -J, -2 * B * d, 0],
            [-J * g, 0, 0, 2 * B],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class XyEigenpair:
    label: str
    state: PureState
    energy: float


@dataclass(frozen=True)
class XyEigensystem:
    pairs: tuple[XyEigenpair, ...]
    degenerate: bool

    def __getitem__(self, label: str) -> XyEigenpair:
        for pair in self.pairs:
            if pair.label == label:
                return pair
        raise KeyError(label)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(pair.label for pair in self.pairs)


def _branch(lam: float, shift: float, off: float, sign: int) -> tuple[float, float]:
    """``(-sign sqrt((lam - sign shift)/2lam), sqrt((lam + sign shift)/2lam))``.

    The smaller component comes from ``lo * hi = |off| / (2 lam)``, which
    avoids cancellation when ``|shift|`` is close to ``lam``.
    """
    r = sign * shift / lam
    big = math.sqrt((1.0 + abs(r)) / 2)
    small = abs(off) / (2 * lam * big)
    lo, hi = (small, big) if r >= 0 else (big, small)
    return -sign * lo, hi


def xy_eigensystem(p: XyParams) -> XyEigensystem:
    """Closed-form eigenvectors ``Psi_{1,+}, Psi_{1,-}, Psi_{2,+}, Psi_{2,-}``.

    ``Psi_1`` lives on ``|00>, |11>`` with energies ``+/-lambda1``; ``Psi_2``
    on indices 1 and 2 with energies ``+/-lambda2``. When ``lambda1 = 0``
    (``B = 0`` and ``g = 0``) the first block is degenerate: the basis states
    ``|00>``, ``|11>`` are returned under the labels ``0a``, ``0b`` and the
    result is flagged.
    """
    l1, l2 = p.lambda1, p.lambda2
    pairs = []
    degenerate = l1 == 0.0 or l2 == 0.0
    if l1 > 0:
        for sign, tag in ((1, "1+"), (-1, "1-")):
            c0, c3 = _branch(l1, 2 * p.B, p.J * p.gamma_tilde, sign)
            amps = np.array([c0, 0, 0, c3], dtype=complex)
            pairs.append(XyEigenpair(tag, pure_from_amplitudes(2, amps), sign * l1))
    else:
        pairs.append(XyEigenpair("0a", pure_from_amplitudes(2, [1, 0, 0, 0]), 0.0))
        pairs.append(XyEigenpair("0b", pure_from_amplitudes(2, [0, 0, 0, 1]), 0.0))
    if l2 > 0:
        for sign, tag in ((1, "2+"), (-1, "2-")):
            c1, c2 = _branch(l2, -2 * p.B * p.delta_field, p.J, sign)
            amps = np.array([0, c1, c2, 0], dtype=complex)
            pairs.append(XyEigenpair(tag, pure_from_amplitudes(2, amps), sign * l2))
    else:
        pairs.append(XyEigenpair("0c", pure_from_amplitudes(2, [0, 1, 0, 0]), 0.0))
        pairs.append(XyEigenpair("0d", pure_from_amplitudes(2, [0, 0, 1, 0]), 0.0))
    return XyEigensystem(tuple(pairs), degenerate)


def xy_concurrence_closed_form(p: XyParams, label: str) -> float:
    """``sqrt((lambda^2 - 4B^2)/lambda^2)`` for ``Psi_1``, ``sqrt((lambda^2 - 4B^2 d^2)/lambda^2)`` for ``Psi_2``.

    Since ``lambda^2`` minus the squared field term is the squared coupling,
    this is evaluated as ``J g / lambda1`` or ``J / lambda2``, which stays
    accurate when the field dominates.
    """
    if label.startswith("1"):
        lam, off = p.lambda1, p.J * p.gamma_tilde
    elif label.startswith("2"):
        lam, off = p.lambda2, p.J
    else:
        raise ValidationError(f"no closed form for label {label!r}")
    if lam == 0.0:
        raise ValidationError(f"state {label!r} is not defined at a degenerate point")
    return min(abs(off) / lam, 1.0)


def xy_thermal(p: XyParams, T: float) -> DensityMatrix:
    """Normalized Gibbs state ``exp(-H/T)/Z``.

    Energies are shifted by the ground energy before exponentiation so that
    very low temperatures do not overflow.
    """
    if not T > 0:
        raise ValidationError(f"temperature must be positive, got {T}")
    dec = hermitian_eig(xy_hamiltonian(p))
    e = dec.eigenvalues
    w = np.exp(-(e - e.min()) / T)
    w /= w.sum()
    v = dec.eigenvectors
    m = (v * w) @ v.conj().T
    return DensityMatrix(2, 0.5 * (m + m.conj().T))


def xy_thermal_unnormalized(p: XyParams, T: float) -> np.ndarray:
    """``exp(-H/T)`` without the partition function."""
    if not T > 0:
        raise ValidationError(f"temperature must be positive, got {T}")
    dec = hermitian_eig(xy_hamiltonian(p))
    v = dec.eigenvectors
    return (v * np.exp(-dec.eigenvalues / T)) @ v.conj().T


def xy_concurrence_margin(p: XyParams, T: float) -> float:
    """Unclipped ``xi1 - xi2 - xi3 - xi4`` of the thermal state."""
    return wootters_margin(wootters_concurrence(xy_thermal(p, T)).xi)


def xy_critical_temperature(p: XyParams) -> float | None:
    """Temperature above which the thermal Wootters concurrence stays zero.

    The concurrence need not fall monotonically, so the unclipped margin
    ``xi1 - xi2 - xi3 - xi4`` is first scanned on a log grid over
    ``[1e-6 s, 100 s]`` (``s = max(J, B, 1e-12)``) to bracket its highest
    sign change, then bisected to relative tolerance 1e-10. Margins below
    1e-12 on the grid count as rounding noise. Returns ``None`` when the
    margin is never positive or is still positive at ``100 s``.
    The partition function cancels out of the sign, so the root is the
    same as for the unnormalized Gibbs operator.
    """
    s = max(p.J, p.B, 1e-12)
    grid = np.geomspace(1e-6 * s, 100.0 * s, TC_SCAN_POINTS)
    margins = np.array([xy_concurrence_margin(p, T) for T in grid])
    if margins[-1] > 0:
        return None
    positive = np.flatnonzero(margins > TC_MARGIN_NOISE)
    if positive.size == 0:
        return None
    i = positive[-1]
    lo, hi = float(grid[i]), float(grid[i + 1])
    while hi - lo > TC_REL_TOL * hi:
        mid = 0.5 * (lo + hi)
        if xy_concurrence_margin(p, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def tc_closed_form_isotropic(J: float, B: float) -> float:
    """``sqrt(J^2 + 4B^2) / asinh(sqrt(1 + 4B^2/J^2))`` at zero anisotropy, ``d = 1``."""
    return math.sqrt(J * J + 4 * B * B) / math.asinh(math.sqrt(1 + 4 * B * B / (J * J)))
