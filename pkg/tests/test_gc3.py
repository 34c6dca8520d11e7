import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.linalg import expm as scipy_expm

from gcriccati import abel
from gcriccati.errors import DegenerateRoots, Indeterminate, NearPole
from gcriccati.gc3 import (
    GVector3,
    PhasePoint,
    TangentPair,
    companion3,
    g3_add,
    g3_det,
    g3_det_expected,
    g3_eval,
    g3_partials,
    pair_from_phase,
    phase_matrix,
    tangent_add,
)
from gcriccati.polynomial import CubicCoefficients, solve_cubic

CUBIC = CubicCoefficients(6, 11, 6)
CYCLIC = CubicCoefficients(0, 0, 1)  # x**3 = 1

small = st.builds(complex, st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))
coef = st.builds(complex, st.floats(-3, 3), st.floats(-3, 3))
phases = st.builds(PhasePoint, small, st.builds(lambda z: z / 4, small))


def oracle(c, psi):
    return scipy_expm(phase_matrix(c, psi))[:, 0]


def cubic_or_reject(a2, a1, a0):
    c = CubicCoefficients(a2, a1, a0)
    try:
        solve_cubic(c, sep_min=0.05)
    except DegenerateRoots:
        assume(False)
    return c


def test_companion_examples():
    E = companion3(CYCLIC)
    assert np.array_equal(E @ E @ E, np.eye(3))
    assert np.allclose(sorted(np.linalg.eigvals(companion3(CUBIC)).real), [1, 2, 3])


@settings(max_examples=50)
@given(coef, coef, coef)
def test_companion_characteristic_residual(a2, a1, a0):
    c = CubicCoefficients(a2, a1, a0)
    E = companion3(c)
    res = E @ E @ E - a2 * E @ E + a1 * E - a0 * np.eye(3)
    assert np.abs(res).max() < 1e-12 * (1 + abs(a2) + abs(a1) + abs(a0)) ** 3


@pytest.mark.parametrize("method", ["spectral", "series", "auto"])
def test_zero_phase_is_identity(method):
    g = g3_eval(CUBIC, PhasePoint(0, 0), method)
    assert np.allclose(g.as_array(), [1, 0, 0], atol=1e-15)


@pytest.mark.parametrize("phi1", [0.4, -1.3, 0.7 + 0.5j])
def test_cyclic_series_oracle(phi1):
    g = g3_eval(CYCLIC, PhasePoint(phi1, 0))
    for k in range(3):
        ref = sum(phi1 ** (3 * n + k) / math.factorial(3 * n + k) for n in range(30))
        assert abs(g.as_array()[k] - ref) < 1e-13


def test_vandermonde_residual_on_factored_cubic():
    rng = np.random.default_rng(7)
    for _ in range(20):
        psi = PhasePoint(complex(*rng.uniform(-0.5, 0.5, 2)), complex(*rng.uniform(-0.1, 0.1, 2)))
        g = g3_eval(CUBIC, psi)
        for x in (1, 2, 3):
            lhs = cmath.exp(x * psi.phi1 + x * x * psi.phi2)
            assert abs(g.g0 + x * g.g1 + x * x * g.g2 - lhs) <= 1e-10 * abs(lhs)


def test_degenerate_roots_fall_back_to_series():
    c = CubicCoefficients(3, 3, 1)
    psi = PhasePoint(0.3, -0.2)
    assert np.allclose(g3_eval(c, psi).as_array(), oracle(c, psi), atol=1e-13)
    with pytest.raises(DegenerateRoots):
        g3_eval(c, psi, "spectral")


@settings(max_examples=100)
@given(coef, coef, coef, phases)
def test_spectral_and_series_agree(a2, a1, a0, psi):
    c = cubic_or_reject(a2, a1, a0)
    ref = oracle(c, psi)
    for method in ("spectral", "series"):
        got = g3_eval(c, psi, method).as_array()
        assert np.abs(got - ref).max() <= 1e-9 * max(1.0, np.abs(ref).max())


def test_partials_at_origin():
    d1, d2 = g3_partials(CUBIC, PhasePoint(0, 0))
    assert np.allclose(d1, [0, 1, 0]) and np.allclose(d2, [0, 0, 1])


def test_cyclic_phi1_derivative_rotates():
    psi = PhasePoint(0.8, 0)
    g = g3_eval(CYCLIC, psi)
    d1, _ = g3_partials(CYCLIC, psi, g)
    assert np.allclose(d1, [g.g2, g.g0, g.g1], atol=1e-14)


@settings(max_examples=100)
@given(coef, coef, coef, phases)
def test_partials_finite_difference(a2, a1, a0, psi):
    c = cubic_or_reject(a2, a1, a0)
    h = 1e-6
    g = g3_eval(c, psi)
    d1, d2 = g3_partials(c, psi, g)
    scale = max(1.0, np.abs(g.as_array()).max())
    for d, dpsi in ((d1, PhasePoint(h, 0)), (d2, PhasePoint(0, h))):
        back = PhasePoint(-dpsi.phi1, -dpsi.phi2)
        fd = (g3_eval(c, psi + dpsi).as_array() - g3_eval(c, psi + back).as_array()) / (2 * h)
        assert np.abs(fd - d).max() <= 1e-5 * scale


def test_add_identity_and_doubling():
    gb = g3_eval(CUBIC, PhasePoint(0.2, -0.05))
    same = g3_add(GVector3(1, 0, 0, PhasePoint(0, 0)), gb, CUBIC)
    assert np.allclose(same.as_array(), gb.as_array(), rtol=0, atol=1e-15)
    doubled = g3_add(gb, gb, CUBIC)
    assert np.allclose(doubled.as_array(), g3_eval(CUBIC, PhasePoint(0.4, -0.1)).as_array(), rtol=1e-12)


@settings(max_examples=150)
@given(coef, coef, coef, phases, phases)
def test_addition_law_and_determinant(a2, a1, a0, pa, pb):
    c = cubic_or_reject(a2, a1, a0)
    ga, gb = g3_eval(c, pa), g3_eval(c, pb)
    got = g3_add(ga, gb, c).as_array()
    ref = oracle(c, pa + pb)
    assert np.abs(got - ref).max() <= 1e-9 * max(1.0, np.abs(ref).max())
    expected = g3_det_expected(c, pa)
    assert abs(g3_det(ga, c) - expected) <= 1e-9 * abs(expected)


def test_tangent_add_matches_g_ratios():
    pa, pb = PhasePoint(0.3 + 0.1j, 0.05), PhasePoint(-0.2, 0.1 - 0.02j)
    ta = TangentPair.from_g(g3_eval(CUBIC, pa))
    tb = TangentPair.from_g(g3_eval(CUBIC, pb))
    g = g3_add(g3_eval(CUBIC, pa), g3_eval(CUBIC, pb), CUBIC)
    t = tangent_add(ta, tb, CUBIC)
    assert abs(t.T1 - g.g1 / g.g2) < 1e-9 * abs(g.g1 / g.g2)
    assert abs(t.T0 - g.g0 / g.g2) < 1e-9 * abs(g.g0 / g.g2)


def test_tangent_add_indeterminate():
    a2, a1 = CUBIC.a2, CUBIC.a1
    ta, r1 = TangentPair(0.5, 1.5), 2.0
    r0 = -((ta.T1 + a2) * r1 + ta.T0 + ta.T1 * a2 + a2 * a2 - a1)
    with pytest.raises(Indeterminate):
        tangent_add(ta, TangentPair(r1, r0), CUBIC)


def test_pair_extraction_vieta_and_ratios():
    psi = PhasePoint(0.25 - 0.1j, 0.04 + 0.02j)
    g = g3_eval(CUBIC, psi)
    pair, u, v = pair_from_phase(CUBIC, psi, g)
    assert abs(u + v + g.g1 / g.g2) < 1e-12 * abs(g.g1 / g.g2)
    assert abs(u * v - g.g0 / g.g2) < 1e-12 * abs(g.g0 / g.g2)
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            if k != l:
                lhs = cmath.exp((k - l) * psi.phi1 + (k * k - l * l) * psi.phi2)
                rhs = (u - k) * (v - k) / ((u - l) * (v - l))
                assert abs(lhs - rhs) < 1e-9 * max(1, abs(lhs))


def test_pair_extraction_near_pole_on_constraint_curve():
    st = abel.bridge_start(CUBIC, 0.5)
    with pytest.raises(NearPole):
        pair_from_phase(CUBIC, PhasePoint(st.phi1, st.phi2))
