import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbell.bell import bell_bound
from qbell.entanglement import concurrence_pure, wootters_concurrence
from qbell.errors import CapacityError, DomainError, ValidationError
from qbell.linalg import kron_all
from qbell.models import cylinder, ghz2n, wen_plaquette, xy
from qbell.pauli import SIGMA
from qbell.states import entanglement_entropy, renyi_of_spectrum

I2, X, Y, Z = np.eye(2), SIGMA["x"], SIGMA["y"], SIGMA["z"]

xy_params = st.builds(
    xy.XyParams,
    st.floats(0.05, 3.0),
    st.floats(0.0, 1.0),
    st.floats(0.0, 3.0),
    st.floats(0.0, 1.0),
)


def test_xy_pauli_form():
    J, g, B, d = 1.3, 0.4, 0.7, 0.25
    pauli = (
        -(J / 2) * (1 + g) * kron_all(X, X)
        - (J / 2) * (1 - g) * kron_all(Y, Y)
        - B * (1 - d) * kron_all(Z, I2)
        - B * (1 + d) * kron_all(I2, Z)
    )
    np.testing.assert_allclose(xy.xy_hamiltonian(xy.XyParams(J, g, B, d)), pauli, atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(xy_params)
def test_xy_eigenpairs(p):
    h = xy.xy_hamiltonian(p)
    es = xy.xy_eigensystem(p)
    for pair in es.pairs:
        a = pair.state.amplitudes
        np.testing.assert_allclose(h @ a, pair.energy * a, atol=1e-10)
        if pair.label[0] in "12":
            closed = xy.xy_concurrence_closed_form(p, pair.label)
            assert concurrence_pure(pair.state, [1]) == pytest.approx(closed, abs=1e-10)
    w = np.sort([pr.energy for pr in es.pairs])
    np.testing.assert_allclose(w, np.sort(np.linalg.eigvalsh(h)), atol=1e-10)


def test_xy_degenerate_labels():
    es = xy.xy_eigensystem(xy.XyParams(1.0, 0.0, 0.0))
    assert es.degenerate
    assert es.labels == ("0a", "0b", "2+", "2-")
    with pytest.raises(ValidationError):
        xy.xy_concurrence_closed_form(xy.XyParams(1.0, 0.0, 0.0), "0a")
    with pytest.raises(KeyError):
        es["1+"]


def test_xy_parameter_validation():
    for args in ((-1, 0, 0), (1, 1.5, 0), (1, 0, -1), (1, 0, 0, 2)):
        with pytest.raises(ValidationError):
            xy.XyParams(*args)


def test_xy_thermal_state():
    p = xy.XyParams(1.0, 0.3, 0.5, 0.2)
    rho = xy.xy_thermal(p, 0.8)
    h = xy.xy_hamiltonian(p)
    assert np.trace(rho.matrix).real == pytest.approx(1)
    np.testing.assert_allclose(rho.matrix @ h, h @ rho.matrix, atol=1e-13)
    un = xy.xy_thermal_unnormalized(p, 0.8)
    np.testing.assert_allclose(un / np.trace(un).real, rho.matrix, atol=1e-13)
    np.testing.assert_allclose(xy.xy_thermal(p, 1e6).matrix, np.eye(4) / 4, atol=1e-5)
    with pytest.raises(ValidationError):
        xy.xy_thermal(p, 0)


def test_xy_low_temperature_is_ground_state():
    p = xy.XyParams(1.0, 0.5, 0.3, 0.0)
    ground = min(xy.xy_eigensystem(p).pairs, key=lambda pr: pr.energy)
    rep = wootters_concurrence(xy.xy_thermal(p, 1e-3))
    assert rep.concurrence == pytest.approx(concurrence_pure(ground.state, [1]), abs=1e-9)


@pytest.mark.parametrize("J,B", [(1.0, 0.0), (1.0, 0.5), (0.7, 1.2), (2.0, 3.0)])
def test_isotropic_critical_temperature(J, B):
    tc = xy.xy_critical_temperature(xy.XyParams(J, 0.0, B, 1.0))
    assert tc == pytest.approx(xy.tc_closed_form_isotropic(J, B), rel=1e-9)
    p = xy.XyParams(J, 0.0, B, 1.0)
    assert xy.xy_concurrence_margin(p, 0.99 * tc) > 0
    assert xy.xy_concurrence_margin(p, 1.01 * tc) < 0


def test_critical_temperature_is_highest_zero():
    # this concurrence curve nearly dies near 0.6 T_c and revives before vanishing
    p = xy.XyParams(1.0, 0.5, 0.8, 0.3)
    tc = xy.xy_critical_temperature(p)
    assert xy.xy_concurrence_margin(p, 0.999 * tc) > 0
    above = [xy.xy_concurrence_margin(p, T) for T in np.geomspace(1.001 * tc, 100, 60)]
    assert max(above) < 0


def test_critical_temperature_absent_without_coupling():
    assert xy.xy_critical_temperature(xy.XyParams(0.0, 0.0, 1.0)) is None


def test_wen4_ground_space():
    h = wen_plaquette.wen_plaquette_hamiltonian(2, 2)
    e0, v = wen_plaquette.ground_space(h)
    assert e0 == pytest.approx(-4)
    assert v.shape[1] == 4
    states = wen_plaquette.listed_ground_states(2, 2)
    assert wen_plaquette.ground_space_residual(h, states) < 1e-12
    gram = np.array([[np.vdot(a.amplitudes, b.amplitudes) for b in states] for a in states])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-14)


def test_wen6_ground_space():
    h = wen_plaquette.wen_plaquette_hamiltonian(2, 3)
    e0, v = wen_plaquette.ground_space(h)
    assert e0 == pytest.approx(-6)
    assert v.shape[1] == 2
    assert wen_plaquette.ground_space_residual(h, wen_plaquette.listed_ground_states(2, 3)) < 1e-12


def test_row_major_labeling_misses_wen4_states():
    h = wen_plaquette.wen_plaquette_hamiltonian(2, 2, (0, 1, 2, 3))
    assert wen_plaquette.ground_space_residual(h, wen_plaquette.listed_ground_states(2, 2)) > 0.1


def test_find_labeling_recovers_defaults():
    assert wen_plaquette.find_labeling(2, 2) == (0, 1, 3, 2)
    assert wen_plaquette.find_labeling(2, 3) == tuple(range(6))


def test_plaquettes_are_periodic():
    plaq = wen_plaquette.plaquettes(2, 3, tuple(range(6)))
    assert len(plaq) == 6
    assert plaq[5] == (5, 3, 0, 2)


@pytest.mark.parametrize("index", range(4))
def test_wen4_bound(index):
    rep = bell_bound(wen_plaquette.wen_plaquette_states(4, index), pivot=4)
    assert rep.gamma_bound == pytest.approx(4 * math.sqrt(2), abs=1e-12)


def test_wen6_family_validation():
    with pytest.raises(ValidationError):
        wen_plaquette.wen_plaquette_6_family(3, 0.6, 0.8)
    with pytest.raises(ValidationError):
        wen_plaquette.wen_plaquette_6_family(1, 0.6, 0.6)
    with pytest.raises(ValidationError):
        wen_plaquette.wen_plaquette_states(6, 0)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("lp", [0.2, 0.6, 1 / math.sqrt(2)])
def test_ghz2n_gram_and_entropy(n, lp):
    lm = math.sqrt(1 - lp * lp)
    psi = ghz2n.ghz2n_state(n, lp, lm)
    c = 2 * lp * lm
    rep = bell_bound(psi)
    np.testing.assert_allclose(
        np.sort(rep.gram_eigenvalues), np.sort(ghz2n.ghz2n_gram_eigenvalues(n, c)), atol=1e-10
    )
    assert rep.gamma_bound == pytest.approx(ghz2n.ghz2n_bound(n, c), abs=1e-10)
    region_a = list(range(1, n + 1))
    assert entanglement_entropy(psi, region_a) == pytest.approx(ghz2n.ghz2n_entropy(n, lp, lm), abs=1e-12)


def test_ghz2n_limits():
    with pytest.raises(CapacityError):
        ghz2n.ghz2n_state(6, 0.6, 0.8)
    with pytest.raises(ValidationError):
        ghz2n.ghz2n_state(2, 0.6, 0.6)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 6),
    st.floats(0, 2 * math.pi),
    st.floats(0, math.pi / 2),
    st.floats(0.3, 4.0),
)
def test_cylinder_renyi_matches_spectrum(n_L, phase, theta, order):
    spec = cylinder.CylinderSpec(n_L, math.cos(theta), math.sin(theta) * complex(math.cos(phase), math.sin(phase)))
    spectrum = cylinder.cylinder_spectrum(spec)
    assert spectrum.sum() == pytest.approx(1, abs=1e-13)
    assert cylinder.cylinder_renyi(spec, order) == pytest.approx(renyi_of_spectrum(spectrum, order), abs=1e-11)
    assert cylinder.cylinder_purity(spec) == pytest.approx(np.sum(spectrum**2), abs=1e-14)
    p1, p2 = cylinder.cylinder_p_from_purity(n_L, cylinder.cylinder_purity(spec))
    assert sorted([p1, p2]) == pytest.approx(sorted(spec.p), abs=1e-6)


def test_cylinder_purity_edges():
    assert cylinder.cylinder_p_from_purity(3, 2.0**-3) == pytest.approx((0.5, 0.5))
    assert cylinder.cylinder_p_from_purity(3, 2.0**-2) == pytest.approx((1.0, 0.0))
    with pytest.raises(DomainError):
        cylinder.cylinder_p_from_purity(3, 0.1)


def test_cylinder_topological_part():
    equal = cylinder.CylinderSpec(2, 1.0, 0.0)
    assert equal.p == pytest.approx((0.5, 0.5))
    assert cylinder.cylinder_topological_part(equal) == pytest.approx(0, abs=1e-15)
    assert cylinder.cylinder_concurrence(equal) == pytest.approx(1)
    h = 1 / math.sqrt(2)
    sector = cylinder.CylinderSpec(2, h, h)
    assert cylinder.cylinder_topological_part(sector) == pytest.approx(math.log(2))
    assert cylinder.cylinder_renyi(sector, 2) == pytest.approx(math.log(2))
    assert cylinder.disk_entropy(4) == pytest.approx(4 * math.log(2))
    with pytest.raises(ValidationError):
        cylinder.CylinderSpec(2, 0.6, 0.6)
