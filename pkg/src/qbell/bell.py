"""Bell operators, the R-matrix eigenvalue bound and a settings optimizer.

Two operator families are supported, both written in *slot* order (slot 1
carries ``b, b'``, the last slot carries ``(A_n +/- A_n')/2``):

``full``
    The recursive operator ``B_n = B_{n-1} (x) (A_n + A_n')/2 + B'_{n-1} (x) (A_n - A_n')/2``
    with ``B_1/2 = b.s`` and ``B'_1/2 = b'.s``. ``B'_k`` is ``B_k`` with every
    primed and unprimed vector exchanged.
``reduced``
    ``B_1 (x) A_2 ... A_{n-1} (x) (A_n + A_n')/2 + B'_1 (x) A'_2 ... A'_{n-1} (x) (A_n - A_n')/2``.

The maximal reduced-form expectation is bounded by ``2 sqrt(u1^2 + u2^2)``
where ``u1^2 >= u2^2`` are the two largest eigenvalues of ``R^T R``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from qbell.errors import CapacityError, ValidationError
from qbell.linalg import MAX_QUBITS, hermitian_eigvals, kron
from qbell.pauli import (
    SIGMA,
    correlation_tensor,
    r_gram,
    r_matrix_from_tensor,
    _resolve_order,
)
from qbell.states import State, as_density

Form = Literal["full", "reduced"]
UNIT_TOL = 1e-12
MAX_OPTIMIZE_SITES = 10


# --- settings -------------------------------------------------------------


@dataclass(frozen=True)
class BellSettings:
    """Measurement directions in slot order.

    ``unprimed[0]``/``primed[0]`` are ``b``/``b'``; rows ``1..n-1`` are the
    ``a_k``/``a_k'`` pairs of slots ``2..n``.
    """

    unprimed: np.ndarray
    primed: np.ndarray

    def __post_init__(self):
        u = np.array(self.unprimed, dtype=float)
        p = np.array(self.primed, dtype=float)
        if u.ndim != 2 or u.shape[1] != 3 or u.shape != p.shape or u.shape[0] < 1:
            raise ValidationError("settings must be two (n, 3) arrays of equal shape")
        norms = np.concatenate([np.linalg.norm(u, axis=1), np.linalg.norm(p, axis=1)])
        if np.max(np.abs(norms - 1.0)) > UNIT_TOL:
            raise ValidationError("every measurement direction must be a unit vector")
        u.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "unprimed", u)
        object.__setattr__(self, "primed", p)

    @classmethod
    def from_vectors(cls, b, b_prime, pairs: Sequence[tuple]) -> "BellSettings":
        """Build from ``b, b'`` and ``(a_k, a_k')`` pairs, normalizing each vector."""
        unit = lambda v: np.asarray(v, dtype=float) / np.linalg.norm(v)
        u = [unit(b)] + [unit(a) for a, _ in pairs]
        p = [unit(b_prime)] + [unit(ap) for _, ap in pairs]
        return cls(np.array(u), np.array(p))

    @property
    def n_sites(self) -> int:
        return self.unprimed.shape[0]

    @property
    def b(self) -> np.ndarray:
        return self.unprimed[0]

    @property
    def b_prime(self) -> np.ndarray:
        return self.primed[0]

    @property
    def pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return list(zip(self.unprimed[1:], self.primed[1:]))


def random_settings(n: int, rng: np.random.Generator) -> BellSettings:
    v = rng.normal(size=(2, n, 3))
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    return BellSettings(v[0], v[1])


def _dot_sigma(v) -> np.ndarray:
    return v[0] * SIGMA["x"] + v[1] * SIGMA["y"] + v[2] * SIGMA["z"]


def build_bell_operator(n: int, s: BellSettings, form: Form = "reduced") -> np.ndarray:
    """Dense ``2^n x 2^n`` Bell operator."""
    if n > MAX_QUBITS:
        raise CapacityError(f"dense Bell operators are capped at {MAX_QUBITS} qubits")
    if s.n_sites != n:
        raise ValidationError(f"settings describe {s.n_sites} sites, expected {n}")
    if n < 1:
        raise ValidationError("need at least one site")
    a = [_dot_sigma(v) for v in s.unprimed]
    ap = [_dot_sigma(v) for v in s.primed]
    if n == 1:
        return 2.0 * a[0]
    if form == "full":
        big, big_p = 2.0 * a[0], 2.0 * ap[0]
        for k in range(1, n):
            plus = 0.5 * (a[k] + ap[k])
            minus = 0.5 * (a[k] - ap[k])
            big, big_p = (
                kron(big, plus) + kron(big_p, minus),
                kron(big_p, plus) - kron(big, minus),
            )
        return big
    if form == "reduced":
        left, left_p = 2.0 * a[0], 2.0 * ap[0]
        for k in range(1, n - 1):
            left, left_p = kron(left, a[k]), kron(left_p, ap[k])
        return kron(left, 0.5 * (a[-1] + ap[-1])) + kron(left_p, 0.5 * (a[-1] - ap[-1]))
    raise ValidationError(f"unknown Bell operator form {form!r}")


def bell_expectation(rho: State, op: np.ndarray) -> float:
    """``Tr(rho op)`` with the imaginary residue (< 1e-10) discarded."""
    m = as_density(rho).matrix
    op = np.asarray(op)
    if op.shape != m.shape:
        raise ValidationError(f"operator shape {op.shape} does not match state {m.shape}")
    val = np.sum(m.T * op)
    if abs(val.imag) > 1e-10:
        raise ValidationError(f"expectation has imaginary residue {val.imag:.3e}")
    return float(val.real)


def tsirelson_cap(n: int) -> float:
    """``2^((n+1)/2)``, the quantum maximum of the full recursive operator."""
    return 2.0 ** ((n + 1) / 2)


# --- analytic bound -------------------------------------------------------


@dataclass(frozen=True)
class BellBoundReport:
    gram_eigenvalues: np.ndarray
    gamma_bound: float
    pivot: int
    site_order: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "gram_eigenvalues": [float(x) for x in self.gram_eigenvalues],
            "gamma_bound": self.gamma_bound,
            "pivot": self.pivot,
            "site_order": list(self.site_order),
        }


def bound_from_gram(gram: np.ndarray) -> tuple[np.ndarray, float]:
    w = hermitian_eigvals(np.asarray(gram, dtype=complex))
    top = max(w[0] + w[1], 0.0)
    return w, 2.0 * math.sqrt(top)


def bell_bound(
    state: State, pivot: int | None = None, site_order: Sequence[int] | None = None
) -> BellBoundReport:
    """Upper bound on the reduced-form violation from the R^T R spectrum.

    For two qubits the bound is attained.
    """
    n = state.n_sites
    pivot, order = _resolve_order(n, pivot, site_order)
    r = r_matrix_from_tensor(correlation_tensor(state), pivot, order)
    w, gamma = bound_from_gram(r_gram(r))
    return BellBoundReport(w, gamma, pivot, order)


# --- optimizer ------------------------------------------------------------


_MASK64 = (1 << 64) - 1


class XorShift64Star:
    """xorshift64* generator seeded through one splitmix64 step.

    ``state = splitmix64(seed)``; each draw does ``x ^= x >> 12;
    x ^= x << 25; x ^= x >> 27`` and returns ``x * 0x2545F4914F6CDD1D mod 2^64``.
    Uniform floats use the top 53 bits.
    """

    def __init__(self, seed: int):
        z = (int(seed) + 0x9E3779B97F4A7C15) & _MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z ^= z >> 31
        self._x = z or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self._x
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self._x = x
        return (x * 0x2545F4914F6CDD1D) & _MASK64

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def unit_vector(self) -> np.ndarray:
        """Uniform direction on the sphere (Box-Muller normals, normalized)."""
        while True:
            g = []
            for _ in range(2):
                u1 = 1.0 - self.uniform()
                u2 = self.uniform()
                r = math.sqrt(-2.0 * math.log(u1))
                g += [r * math.cos(2 * math.pi * u2), r * math.sin(2 * math.pi * u2)]
            v = np.array(g[:3])
            nv = np.linalg.norm(v)
            if nv > 1e-12:
                return v / nv


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 64
    max_iterations: int = 500
    tolerance: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError("restarts must be at least 1")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be at least 1")
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class BellOptimum:
    gamma_star: float
    settings: BellSettings
    form: str
    bound: float
    restarts_used: int
    converged: bool
    best_restart: int
    slot_sites: tuple[int, ...] = field(default=())

    def as_dict(self) -> dict:
        settings = {}
        for slot, site in enumerate(self.slot_sites):
            settings[str(site)] = {
                "a": [float(x) for x in self.settings.unprimed[slot]],
                "a_prime": [float(x) for x in self.settings.primed[slot]],
            }
        return {
            "gamma_star": self.gamma_star,
            "bound": self.bound,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "settings": settings,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _chains(form: Form, n: int):
    """Per-chain coefficient pairs ``(c_a, c_a')`` for each slot.

    The objective is ``sum_chains Re T.(v_1 (x) ... (x) v_n)`` with
    ``v_k = c_a a_k + c_a' a'_k``.
    """
    if form == "reduced":
        first = [(2.0, 0.0)] + [(1.0, 0.0)] * (n - 2) + [(0.5, 0.5)]
        second = [(0.0, 2.0)] + [(0.0, 1.0)] * (n - 2) + [(0.5, -0.5)]
        return [first, second]
    if form == "full":
        # B_n + i B'_n = 2(b + i b') (x) prod_k (u_k - i w_k), u/w = (a +/- a')/2
        chain = [(2.0 + 0j, 2.0j)] + [((1 - 1j) / 2, (1 + 1j) / 2)] * (n - 1)
        return [chain]
    raise ValidationError(f"unknown Bell operator form {form!r}")


def _contract_last(t: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.einsum("r...j,rj->r...", t, v)


def _contract_first(t: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.einsum("rj...,rj->r...", t, v)


def _objective(t: np.ndarray, chains, a: np.ndarray, ap: np.ndarray) -> np.ndarray:
    total = np.zeros(a.shape[0])
    for chain in chains:
        acc = np.broadcast_to(t, (a.shape[0],) + t.shape)
        for k in range(len(chain) - 1, -1, -1):
            ca, cp = chain[k]
            acc = _contract_last(acc, ca * a[:, k] + cp * ap[:, k])
        total += np.real(acc)
    return total


def _sweep(t: np.ndarray, chains, a: np.ndarray, ap: np.ndarray, active: np.ndarray) -> None:
    """One pass of exact per-slot maximization, in place on the active restarts."""
    n = a.shape[1]
    r = a.shape[0]
    lefts = [np.broadcast_to(t, (r,) + t.shape) for _ in chains]
    for k in range(n):
        grad_a = np.zeros((r, 3))
        grad_p = np.zeros((r, 3))
        for c, chain in enumerate(chains):
            g = lefts[c]
            for j in range(n - 1, k, -1):
                ca, cp = chain[j]
                g = _contract_last(g, ca * a[:, j] + cp * ap[:, j])
            ca, cp = chain[k]
            grad_a += np.real(ca * g)
            grad_p += np.real(cp * g)
        for grad, target in ((grad_a, a), (grad_p, ap)):
            norm = np.linalg.norm(grad, axis=1)
            ok = active & (norm > 1e-300)
            target[ok, k] = grad[ok] / norm[ok, None]
        for c, chain in enumerate(chains):
            ca, cp = chain[k]
            lefts[c] = _contract_first(lefts[c], ca * a[:, k] + cp * ap[:, k])


def _initial_settings(n: int, cfg: OptimizerConfig) -> tuple[np.ndarray, np.ndarray]:
    a = np.empty((cfg.restarts, n, 3))
    ap = np.empty((cfg.restarts, n, 3))
    for r in range(cfg.restarts):
        gen = XorShift64Star(int(cfg.seed) ^ r)
        for k in range(n):
            a[r, k] = gen.unit_vector()
            ap[r, k] = gen.unit_vector()
    return a, ap


def maximize_bell(
    state: State,
    form: Form = "reduced",
    cfg: OptimizerConfig | None = None,
    pivot: int | None = None,
    site_order: Sequence[int] | None = None,
) -> BellOptimum:
    """Maximize ``Tr(rho B)`` over all measurement directions.

    The expectation is linear in every single direction when the others are
    held fixed, so each inner step replaces a direction by its normalized
    gradient (the exact maximizer). Sweeps repeat until the per-restart gain
    drops below ``cfg.tolerance`` or ``cfg.max_iterations`` is reached; the
    best restart wins, ties going to the lowest restart index.

    ``pivot``/``site_order`` relabel which physical site fills each slot
    (default: slot k is site k).

    Each reduced-form term is a product of unit observables times
    ``(a_n +/- a_n') . sigma / 2``, so that form never exceeds
    ``|a_n + a_n'| + |a_n - a_n'| <= 2 sqrt 2``, whatever the state.
    """
    cfg = cfg or OptimizerConfig()
    n = state.n_sites
    if n < 2:
        raise ValidationError("Bell optimization needs at least two sites")
    if n > MAX_OPTIMIZE_SITES:
        raise CapacityError(f"optimizer is capped at {MAX_OPTIMIZE_SITES} sites")
    pivot, order = _resolve_order(n, pivot, site_order)
    slots = tuple(order) + (pivot,)
    t = np.transpose(correlation_tensor(state), [k - 1 for k in slots])
    chains = _chains(form, n)

    a, ap = _initial_settings(n, cfg)
    value = _objective(t, chains, a, ap)
    active = np.ones(cfg.restarts, dtype=bool)
    converged = np.zeros(cfg.restarts, dtype=bool)
    for _ in range(cfg.max_iterations):
        _sweep(t, chains, a, ap, active)
        new = _objective(t, chains, a, ap)
        gain = new - value
        value = np.where(active, new, value)
        done = active & (gain < cfg.tolerance)
        converged |= done
        active &= ~done
        if not active.any():
            break

    best = float(np.max(value))
    winner = int(np.flatnonzero(value >= best - cfg.tolerance)[0])
    if form == "reduced":
        bound = bell_bound(state, pivot, order).gamma_bound
    else:
        bound = tsirelson_cap(n)
    return BellOptimum(
        gamma_star=float(value[winner]),
        settings=BellSettings(a[winner], ap[winner]),
        form=form,
        bound=bound,
        restarts_used=cfg.restarts,
        converged=bool(converged[winner]),
        best_restart=winner,
        slot_sites=slots,
    )


def settings_expectation(
    state: State, s: BellSettings, form: Form = "reduced", slot_sites: Sequence[int] | None = None
) -> float:
    """Expectation through the correlation tensor; agrees with the dense operator."""
    n = state.n_sites
    t = correlation_tensor(state)
    if slot_sites is not None:
        t = np.transpose(t, [k - 1 for k in slot_sites])
    return float(_objective(t, _chains(form, n), s.unprimed[None], s.primed[None])[0])
