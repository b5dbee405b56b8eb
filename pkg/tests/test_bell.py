import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbell.bell import (
    BellSettings,
    OptimizerConfig,
    XorShift64Star,
    bell_bound,
    bell_expectation,
    build_bell_operator,
    maximize_bell,
    random_settings,
    settings_expectation,
    tsirelson_cap,
)
from qbell.errors import CapacityError, ValidationError
from qbell.linalg import hermitian_eigvals
from qbell.states import basis_state, superpose

from conftest import random_density, random_pure

BELL = superpose([(1, "00"), (1, "11")])
GHZ3 = superpose([(1, "000"), (1, "111")])
FAST = OptimizerConfig(restarts=16, max_iterations=400, tolerance=1e-12, seed=3)


def test_chsh_operator_for_two_sites():
    x, z = np.eye(3)[0], np.eye(3)[2]
    s = BellSettings.from_vectors(z, x, [((x + z), (z - x))])
    assert bell_expectation(BELL, build_bell_operator(2, s)) == pytest.approx(2 * math.sqrt(2))


def test_forms_coincide_for_two_sites(rng):
    s = random_settings(2, rng)
    np.testing.assert_allclose(build_bell_operator(2, s, "reduced"), build_bell_operator(2, s, "full"), atol=1e-14)


@pytest.mark.parametrize("form", ["reduced", "full"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_tensor_expectation_matches_dense(form, n, rng):
    rho = random_density(n, rng)
    s = random_settings(n, rng)
    dense = bell_expectation(rho, build_bell_operator(n, s, form))
    assert settings_expectation(rho, s, form) == pytest.approx(dense, abs=1e-12)


def test_full_operator_spectrum_obeys_cap(rng):
    for n in (2, 3, 4):
        w = hermitian_eigvals(build_bell_operator(n, random_settings(n, rng), "full"))
        assert max(abs(w[0]), abs(w[-1])) <= tsirelson_cap(n) + 1e-10


def test_settings_validation():
    with pytest.raises(ValidationError, match="unit"):
        BellSettings(np.ones((2, 3)), np.ones((2, 3)))
    with pytest.raises(ValidationError):
        BellSettings(np.eye(3)[:2], np.eye(3))
    with pytest.raises(ValidationError):
        build_bell_operator(3, random_settings(2, np.random.default_rng(0)))
    with pytest.raises(ValidationError):
        build_bell_operator(2, random_settings(2, np.random.default_rng(0)), "other")


def test_bound_for_bell_pair():
    rep = bell_bound(BELL)
    np.testing.assert_allclose(rep.gram_eigenvalues, [1, 1, 1], atol=1e-14)
    assert rep.gamma_bound == pytest.approx(2 * math.sqrt(2), abs=1e-14)
    assert rep.as_dict()["pivot"] == 2


def test_bound_for_product_state_is_classical():
    assert bell_bound(basis_state("010")).gamma_bound == pytest.approx(2.0, abs=1e-14)


@pytest.mark.parametrize("seed", range(4))
def test_two_qubit_optimizer_attains_bound(seed):
    rho = random_density(2, np.random.default_rng(seed), rank=2)
    opt = maximize_bell(rho, cfg=FAST)
    assert opt.gamma_star == pytest.approx(opt.bound, abs=1e-7)
    assert opt.converged
    s = opt.settings
    assert bell_expectation(rho, build_bell_operator(2, s)) == pytest.approx(opt.gamma_star, abs=1e-10)


def test_ghz3_full_form_reaches_tsirelson():
    opt = maximize_bell(GHZ3, "full", FAST)
    assert opt.bound == 4.0
    assert opt.gamma_star == pytest.approx(4.0, abs=1e-7)


def test_ghz3_reduced_form_ceiling():
    # the product b (x) a_2 in both terms caps the reduced form at 2 sqrt 2
    opt = maximize_bell(GHZ3, "reduced", FAST)
    assert bell_bound(GHZ3).gamma_bound == pytest.approx(4.0, abs=1e-12)
    assert opt.gamma_star == pytest.approx(2 * math.sqrt(2), abs=1e-7)


@pytest.mark.parametrize("n", [3, 4])
def test_reduced_optimum_below_bound(n, rng):
    psi = random_pure(n, rng)
    opt = maximize_bell(psi, cfg=FAST)
    assert opt.gamma_star <= opt.bound + 1e-9


def test_optimizer_is_deterministic_and_serializable():
    psi = random_pure(3, np.random.default_rng(5))
    a = maximize_bell(psi, cfg=FAST, pivot=1, site_order=[3, 2])
    b = maximize_bell(psi, cfg=FAST, pivot=1, site_order=[3, 2])
    assert a.to_json() == b.to_json()
    d = json.loads(a.to_json())
    assert set(d) == {"gamma_star", "bound", "restarts_used", "converged", "settings"}
    assert set(d["settings"]) == {"1", "2", "3"}
    assert a.slot_sites == (3, 2, 1)
    assert settings_expectation(psi, a.settings, "reduced", a.slot_sites) == pytest.approx(a.gamma_star, abs=1e-12)


def test_seed_changes_starting_points():
    psi = random_pure(3, np.random.default_rng(1))
    a = maximize_bell(psi, cfg=OptimizerConfig(restarts=1, max_iterations=1, seed=1))
    b = maximize_bell(psi, cfg=OptimizerConfig(restarts=1, max_iterations=1, seed=2))
    assert not np.allclose(a.settings.unprimed, b.settings.unprimed)


def test_optimizer_limits():
    with pytest.raises(ValidationError):
        maximize_bell(basis_state("0"))
    with pytest.raises(CapacityError):
        maximize_bell(basis_state("0" * 11))
    with pytest.raises(ValidationError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValidationError):
        OptimizerConfig(tolerance=0)


def test_xorshift_seeding():
    # splitmix64 from seed 0 gives 0xE220A8397B1DCDAF as its first output
    assert XorShift64Star(0)._x == 0xE220A8397B1DCDAF
    r = XorShift64Star(7)
    v = np.array([r.unit_vector() for _ in range(200)])
    np.testing.assert_allclose(np.linalg.norm(v, axis=1), 1, atol=1e-15)
    assert np.all(np.abs(v.mean(axis=0)) < 0.2)
    u = [XorShift64Star(3).uniform() for _ in range(2)]
    assert u[0] == u[1] and 0 <= u[0] < 1


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_settings_never_beat_bound(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    rho = random_density(n, rng, rank=1)
    val = settings_expectation(rho, random_settings(n, rng), "reduced")
    assert abs(val) <= bell_bound(rho).gamma_bound + 1e-10


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=3, max_value=5), st.integers(min_value=0, max_value=2**32 - 1))
def test_reduced_form_ceiling(n, seed):
    # |<B>| <= |a_n + a_n'| + |a_n - a_n'| <= 2 sqrt 2 for any state
    psi = random_pure(n, np.random.default_rng(seed))
    opt = maximize_bell(psi, cfg=OptimizerConfig(restarts=8, seed=seed))
    assert opt.gamma_star <= 2 * math.sqrt(2) + 1e-12
