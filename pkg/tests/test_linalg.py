import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbell.errors import CapacityError, NotPSDError, ValidationError
from qbell.linalg import MAX_DIM, hermitian_eig, hermitian_eigvals, kron, kron_all, sqrt_psd

from conftest import random_hermitian


@pytest.mark.parametrize("dim", [1, 2, 3, 8, 16, 33])
def test_jacobi_matches_lapack(dim, rng):
    m = random_hermitian(dim, rng)
    jac = hermitian_eig(m, method="jacobi")
    ref = np.sort(np.linalg.eigvalsh(m))[::-1]
    np.testing.assert_allclose(jac.eigenvalues, ref, atol=1e-11)
    np.testing.assert_allclose(jac.reconstruct(), m, atol=1e-11)
    v = jac.eigenvectors
    np.testing.assert_allclose(v.conj().T @ v, np.eye(dim), atol=1e-12)


def test_eigenvalues_descending(rng):
    w = hermitian_eigvals(random_hermitian(12, rng))
    assert np.all(np.diff(w) <= 0)


def test_auto_switches_to_lapack_above_64(rng):
    m = random_hermitian(80, rng)
    np.testing.assert_allclose(hermitian_eig(m).reconstruct(), m, atol=1e-10)


def test_degenerate_cluster_spans_same_subspace():
    # diag(4, 4, 1) rotated; only the 2-dim projector is basis independent
    q, _ = np.linalg.qr(np.array([[1.0, 2, 0], [0, 1, 3], [1, 0, 1]]))
    m = q @ np.diag([4.0, 4.0, 1.0]) @ q.T
    dec = hermitian_eig(m)
    np.testing.assert_allclose(dec.eigenvalues, [4, 4, 1], atol=1e-12)
    top = dec.eigenvectors[:, :2]
    np.testing.assert_allclose(top @ top.conj().T, q[:, :2] @ q[:, :2].T, atol=1e-12)


def test_subnormal_off_diagonal(recwarn):
    dec = hermitian_eig(np.array([[1.0, 1e-310], [1e-310, 2.0]]), method="jacobi")
    np.testing.assert_allclose(dec.eigenvalues, [2, 1])
    assert not [w for w in recwarn if issubclass(w.category, RuntimeWarning)]


def test_non_hermitian_rejected():
    with pytest.raises(ValidationError, match="not Hermitian"):
        hermitian_eig([[0, 1], [0, 0]])


def test_non_square_rejected():
    with pytest.raises(ValidationError):
        hermitian_eig(np.zeros((2, 3)))


def test_unknown_method():
    with pytest.raises(ValidationError):
        hermitian_eig(np.eye(2), method="qr")


def test_kron_order_and_cap():
    a = np.array([[0, 1], [1, 0]])
    b = np.diag([1, -1])
    np.testing.assert_array_equal(kron(a, b), np.kron(a, b))
    np.testing.assert_array_equal(kron_all(a, b, a), np.kron(np.kron(a, b), a))
    with pytest.raises(CapacityError):
        kron(np.eye(MAX_DIM), np.eye(2))


def test_sqrt_psd(rng):
    g = rng.normal(size=(6, 3)) + 1j * rng.normal(size=(6, 3))
    m = g @ g.conj().T
    r = sqrt_psd(m)
    np.testing.assert_allclose(r @ r, m, atol=1e-10)
    np.testing.assert_allclose(r, r.conj().T, atol=1e-12)


def test_sqrt_psd_clamps_noise_and_rejects_negative():
    r = sqrt_psd(np.diag([1.0, -1e-12]))
    np.testing.assert_allclose(r, np.diag([1.0, 0.0]))
    with pytest.raises(NotPSDError):
        sqrt_psd(np.diag([1.0, -1e-3]))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=10), st.integers(min_value=0, max_value=2**32 - 1))
def test_trace_and_spectrum_invariant(dim, seed):
    m = random_hermitian(dim, np.random.default_rng(seed))
    w = hermitian_eigvals(m, method="jacobi")
    assert np.sum(w) == pytest.approx(np.trace(m).real, abs=1e-10)
    assert np.sum(w**2) == pytest.approx(np.linalg.norm(m) ** 2, rel=1e-11)
