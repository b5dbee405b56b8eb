import numpy as np
import pytest

from qbell.states import DensityMatrix, pure_from_amplitudes


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_pure(n, rng):
    z = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return pure_from_amplitudes(n, z / np.linalg.norm(z))


def random_density(n, rng, rank=None):
    rank = rank or 2**n
    g = rng.normal(size=(2**n, rank)) + 1j * rng.normal(size=(2**n, rank))
    m = g @ g.conj().T
    return DensityMatrix(n, m / np.trace(m).real)


def random_hermitian(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2
