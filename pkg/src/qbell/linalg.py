"""Dense complex linear algebra kernel.

All operator matrices in the package are plain ``numpy.ndarray`` objects of
complex dtype. The eigensolver is a cyclic Jacobi iteration on the Hermitian
matrix; it is accurate to machine precision and fast enough for the small
matrices (3x3 Gram matrices, 4x4 two-qubit density matrices, reduced states of
at most a few qubits) that dominate the workload. Above ``JACOBI_MAX_DIM`` the
solver hands over to LAPACK's ``zheevd`` through ``numpy.linalg.eigh``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qbell.errors import CapacityError, NotPSDError, ValidationError

MAX_QUBITS = 12
MAX_DIM = 2**MAX_QUBITS
JACOBI_MAX_DIM = 64
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10

_JACOBI_REL_TOL = 1e-13
_JACOBI_MAX_SWEEPS = 100
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted descending with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValidationError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a (x) b`` with the 2**12 dimension cap."""
    a = as_matrix(a)
    b = as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise CapacityError(
            f"Kronecker product of shape {rows}x{cols} exceeds the {MAX_DIM} dimension cap"
        )
    return np.kron(a, b)


def kron_all(*factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = kron(out, f)
    return out


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def _check_hermitian(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValidationError(f"matrix must be square, got {a.shape}")
    defect = hermiticity_defect(a)
    if defect > HERMITIAN_TOL:
        raise ValidationError(f"matrix is not Hermitian (max |M - M^H| = {defect:.3e})")
    return a


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi sweeps; returns (eigenvalues, eigenvectors) unsorted."""
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 1:
        return a.real.diagonal().copy(), v
    for _ in range(_JACOBI_MAX_SWEEPS):
        d = a.diagonal()
        off = np.linalg.norm(a - np.diag(d))
        diag = np.linalg.norm(d)
        if off == 0.0 or off < _JACOBI_REL_TOL * diag:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < _TINY:
                    a[p, q] = a[q, p] = 0.0
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # phase-strip the pivot, then a real symmetric 2x2 rotation
                phase = apq / mag
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    return a.real.diagonal().copy(), v


def hermitian_eig(m, method: str = "auto") -> EigenDecomposition:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Parameters
    ----------
    m : array_like
        Square matrix, Hermitian within 1e-10 (max-abs of ``M - M^H``).
    method : {"auto", "jacobi", "lapack"}
        ``auto`` uses Jacobi up to ``JACOBI_MAX_DIM`` and LAPACK above.

    Within a degenerate cluster the eigenvector basis is arbitrary.
    """
    a = _check_hermitian(m)
    n = a.shape[0]
    if method == "auto":
        method = "jacobi" if n <= JACOBI_MAX_DIM else "lapack"
    if method == "jacobi":
        w, v = _jacobi(a.copy())
    elif method == "lapack":
        w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    else:
        raise ValidationError(f"unknown eigensolver method {method!r}")
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(eigenvalues=w[order], eigenvectors=v[:, order])


def hermitian_eigvals(m, method: str = "auto") -> np.ndarray:
    return hermitian_eig(m, method=method).eigenvalues


def sqrt_psd(m) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero; anything more
    negative raises :class:`NotPSDError`.
    """
    dec = hermitian_eig(m)
    w = dec.eigenvalues
    if w.size and w[-1] < -PSD_TOL:
        raise NotPSDError(f"matrix is not positive semidefinite (min eigenvalue {w[-1]:.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    v = dec.eigenvectors
    out = (v * root) @ v.conj().T
    return 0.5 * (out + out.conj().T)
