import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qbell.errors import DomainError, ValidationError
from qbell.tee import GAMMA_MAX, GAMMA_MIN, area_law_fit, entropy_from_gamma, lambda_from_gamma

LN2 = math.log(2)


def binary_entropy(x):
    return -sum(v * math.log(v) for v in (x, 1 - x) if v > 0)


@given(st.floats(GAMMA_MIN, GAMMA_MAX))
def test_inversion_reproduces_gamma(gamma):
    lp2, lm2 = lambda_from_gamma(gamma)
    assert lp2 + lm2 == pytest.approx(1, abs=1e-15)
    assert lp2 >= lm2
    c2 = 4 * lp2 * lm2
    assert 2 * math.sqrt(5 + 4 * c2) == pytest.approx(gamma, abs=1e-12)


@given(st.floats(GAMMA_MIN, GAMMA_MAX))
def test_entropy_is_schmidt_entropy(gamma):
    lp2, _ = lambda_from_gamma(gamma)
    assert entropy_from_gamma(gamma, 1) == pytest.approx(binary_entropy(lp2), abs=1e-12)
    assert entropy_from_gamma(gamma, 2) - entropy_from_gamma(gamma, 1) == pytest.approx(LN2, abs=1e-15)


def test_endpoints():
    assert entropy_from_gamma(GAMMA_MIN, 1) == pytest.approx(0, abs=1e-14)
    assert entropy_from_gamma(GAMMA_MAX, 1) == pytest.approx(LN2, abs=1e-15)
    assert lambda_from_gamma(GAMMA_MAX) == pytest.approx((0.5, 0.5))


def test_domain_errors():
    with pytest.raises(DomainError, match="outside"):
        lambda_from_gamma(7.0)
    with pytest.raises(DomainError):
        entropy_from_gamma(4.0, 1)
    with pytest.raises(ValidationError):
        entropy_from_gamma(5.0, 3)


def test_fit_recovers_toric_code_values():
    fit = area_law_fit([(4, 0.693147180560), (6, 1.386294361120)])
    assert fit.s_tee == pytest.approx(LN2, abs=1e-11)
    assert fit.d_quasi == pytest.approx(4, abs=1e-10)
    assert fit.slope_alpha == pytest.approx(LN2 / 2, abs=1e-12)
    assert set(json.loads(fit.to_json())) == {"alpha", "s_tee", "d", "residual"}


def test_fit_residual():
    exact = [(L, 0.3 * L - 0.5) for L in (2, 4, 6, 8)]
    assert area_law_fit(exact).residual < 1e-14
    noisy = [(L, s + (0.01 if i % 2 else -0.01)) for i, (L, s) in enumerate(exact)]
    fit = area_law_fit(noisy)
    assert fit.residual > 0.01
    assert fit.s_tee == pytest.approx(0.5, abs=0.05)


def test_fit_input_checks():
    with pytest.raises(ValidationError):
        area_law_fit([(4, 1.0)])
    with pytest.raises(ValidationError):
        area_law_fit([(4, 1.0), (4, 2.0)])
    with pytest.raises(ValidationError):
        area_law_fit(np.zeros((3, 3)))
