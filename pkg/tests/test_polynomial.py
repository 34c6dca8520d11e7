import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcriccati.errors import DegenerateRoots, DomainError
from gcriccati.polynomial import (
    CubicCoefficients,
    PairState,
    QuadraticCoefficients,
    abel_transform,
    companion_matrix,
    multiply_pairs_reduced,
    partial_fraction_weights,
    reduce_monomial,
    solve_cubic,
    solve_quadratic,
)

CUBIC = CubicCoefficients(6, 11, 6)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def close(a, b, tol=1e-12):
    return np.allclose(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex), atol=tol, rtol=0)


@pytest.mark.parametrize(
    "a1, a0, expected",
    [
        (0, 1, (-1j, 1j)),
        (3, 2, (1, 2)),
        (0, -1, (-1, 1)),
    ],
)
def test_quadratic_examples(a1, a0, expected):
    assert close(solve_quadratic(QuadraticCoefficients(a1, a0)), expected)


def test_quadratic_double_root_allowed():
    x1, x2 = solve_quadratic(QuadraticCoefficients(2, 1))
    assert x1 == pytest.approx(1) and x2 == pytest.approx(1)


@given(complexes, complexes)
def test_quadratic_residual_and_order(a1, a0):
    q = QuadraticCoefficients(a1, a0)
    r = solve_quadratic(q)
    for x in r:
        assert abs(x * x - a1 * x + a0) <= 1e-12 * (1 + abs(x) ** 2) * (1 + abs(a1) + abs(a0))
    assert (r[0].real, r[0].imag) <= (r[1].real, r[1].imag) or abs(r[0].real - r[1].real) < 1e-9


def test_cubic_factored_example():
    r = solve_cubic(CUBIC)
    assert close(r.roots, (1, 2, 3))
    assert r.V == pytest.approx(2)


def test_cubic_roots_of_unity():
    r = solve_cubic(CubicCoefficients(0, 0, 1))
    expected = sorted((cmath.exp(2j * cmath.pi * k / 3) for k in range(3)), key=lambda z: (z.real, z.imag))
    assert close(r.roots, expected)


def test_triple_root_is_degenerate():
    with pytest.raises(DegenerateRoots):
        solve_cubic(CubicCoefficients(3, 3, 1))


def test_sep_min_is_honoured():
    c = CubicCoefficients.from_roots(1, 1 + 1e-4, 2)
    solve_cubic(c, sep_min=1e-6)
    with pytest.raises(DegenerateRoots):
        solve_cubic(c, sep_min=1e-3)


@settings(max_examples=200)
@given(complexes, complexes, complexes)
def test_cubic_residual(a2, a1, a0):
    c = CubicCoefficients(a2, a1, a0)
    try:
        r = solve_cubic(c)
    except DegenerateRoots:
        return
    for x in r.roots:
        scale = 1 + abs(x) ** 3 + abs(a2) * abs(x) ** 2 + abs(a1) * abs(x) + abs(a0)
        assert abs(c(x)) <= 1e-12 * scale


def test_companion_eigenvalues_and_cyclic_case():
    assert close(sorted(np.linalg.eigvals(companion_matrix(CUBIC)).real), [1, 2, 3], 1e-10)
    E = companion_matrix(CubicCoefficients(0, 0, 1))
    assert close(np.linalg.matrix_power(E, 3), np.eye(3))


def test_partial_fraction_examples():
    assert close(partial_fraction_weights(solve_cubic(CUBIC)), (0.5, -1, 0.5))
    r = solve_cubic(CubicCoefficients(0, -1, 0))  # roots 0, 1, -1
    w = partial_fraction_weights(r)
    assert abs(sum(w)) < 1e-14
    probe = 2.0
    assert abs(1 / r.coefficients()(probe) - sum(wk / (probe - x) for wk, x in zip(w, r.roots))) < 1e-12


@pytest.mark.parametrize("k, expected", [(0, (0, 0, 1)), (1, (0, 1, 0)), (2, (1, 0, 0)), (3, (6, -11, 6)), (4, (25, -60, 36))])
def test_reduce_monomial(k, expected):
    assert close(reduce_monomial(k, CUBIC), expected)


@pytest.mark.parametrize("k", [-1, 5])
def test_reduce_monomial_domain(k):
    with pytest.raises(DomainError):
        reduce_monomial(k, CUBIC)


def test_reduction_matches_long_division():
    _, rem = np.polydiv([1, 0, 0, 0, 0], [1, -6, 11, -6])
    assert close(reduce_monomial(4, CUBIC), rem)


def test_pair_reduction_examples():
    zero = PairState(0, 0)
    assert close(multiply_pairs_reduced(zero, zero, CUBIC), (25, -60, 36))
    assert close(multiply_pairs_reduced(zero, zero, CubicCoefficients(0, 0, 0)), (0, 0, 0))


@settings(max_examples=200)
@given(complexes, complexes, complexes, complexes, complexes, complexes, complexes)
def test_pair_reduction_by_polynomial_division(t, s, v, u, a2, a1, a0):
    c = CubicCoefficients(a2, a1, a0)
    prod = np.polymul([1, t, s], [1, v, u])
    _, rem = np.polydiv(prod, [1, -a2, a1, -a0])
    rem = np.concatenate([np.zeros(3 - len(rem)), rem])
    got = multiply_pairs_reduced(PairState(t, s), PairState(v, u), c)
    scale = max(1.0, np.abs(prod).max()) * (1 + abs(a2) + abs(a1) + abs(a0)) ** 2
    assert np.abs(np.array(got) - rem).max() <= 1e-12 * scale


@pytest.mark.parametrize(
    "args, expected",
    [((0, 0, 0, 0), (0, 0, 0)), ((1, 0, 0, 0), (0, 0, 1)), ((0, 1, 1, 1), (1, -1, 0))],
)
def test_abel_transform_examples(args, expected):
    assert close(abel_transform(*args), expected)


def test_pair_state_from_values_roundtrip():
    p = PairState.from_values(2 + 1j, -0.5)
    assert close(sorted(np.roots([1, p.t, p.s]), key=lambda z: z.real), [-0.5, 2 + 1j])


@given(complexes, complexes, complexes, complexes, complexes)
def test_abel_transform_substitution(p, q, r, s, z):
    # with y + s = 1/z, Abel's equation holds exactly when dz = c1 z + c2 z^2 + c3 z^3
    if abs(z) < 1e-2:
        return
    c1, c2, c3 = abel_transform(p, q, r, s)
    dz = c1 * z + c2 * z * z + c3 * z**3
    y, dy = 1 / z - s, -dz / (z * z)
    lhs = (y + s) * dy + p + q * y + r * y * y
    scale = (1 + abs(p) + abs(q) + abs(r)) * (1 + abs(s)) ** 2 * (1 + abs(y)) ** 2 * (1 + abs(dy))
    assert abs(lhs) <= 1e-12 * scale
