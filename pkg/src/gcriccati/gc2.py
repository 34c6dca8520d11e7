"""Order-2 general complex algebra and the ordinary Riccati equation.

The algebra is generated by ``E`` with ``E**2 - a1*E + a0 = 0``. Writing
``exp(E*phi) = g0 + g1*E`` defines the g-functions; the ratio ``-g0/g1``
solves ``du/dphi = u**2 - a1*u + a0``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRoots, Indeterminate, NearPole
from .matexp import expm
from .polynomial import SEP_MIN, QuadraticCoefficients, as_complex, solve_quadratic

POLE_EPS = 1e-8


@dataclass(frozen=True)
class GVector2:
    g0: complex
    g1: complex
    phi: complex = 0j


@dataclass(frozen=True)
class Riccati2Solution:
    """Canonical solution family of ``u' = u**2 - a1*u + a0``."""

    coeffs: QuadraticCoefficients
    x1: complex
    x2: complex

    @property
    def m12(self):
        return self.x1 - self.x2

    @classmethod
    def from_coeffs(cls, q: QuadraticCoefficients, sep_min: float = SEP_MIN):
        x1, x2 = solve_quadratic(q)
        if abs(x1 - x2) < sep_min:
            raise DegenerateRoots(f"roots of {q} separated by {abs(x1 - x2):.3g}")
        return cls(q, x1, x2)


def companion2(q: QuadraticCoefficients) -> np.ndarray:
    # trace must equal a1 for E**2 - a1 E + a0 = 0
    return np.array([[0, -q.a0], [1, q.a1]], dtype=complex)


def _expm1(z: complex) -> complex:
    return complex(np.expm1(z))


def g2_eval(q: QuadraticCoefficients, phi, method: str = "auto", sep_min: float = SEP_MIN) -> GVector2:
    """g-functions of the order-2 algebra at phase ``phi``.

    ``method`` is ``"spectral"`` (solve ``exp(x_k phi) = x_k g1 + g0``),
    ``"series"`` (first column of ``exp(E phi)``) or ``"auto"``, which picks
    the spectral route when the roots are at least ``sep_min`` apart.
    """
    phi = as_complex(phi)
    x1, x2 = solve_quadratic(q)
    if method == "auto":
        method = "spectral" if abs(x1 - x2) >= sep_min else "series"
    if method == "spectral":
        m = x1 - x2
        e2 = cmath.exp(x2 * phi)
        # (e1 - e2)/m without cancellation for small m*phi
        g1 = e2 * _expm1(m * phi) / m
        g0 = e2 - x2 * g1
        return GVector2(g0, g1, phi)
    if method == "series":
        col = expm(companion2(q) * phi)[:, 0]
        return GVector2(complex(col[0]), complex(col[1]), phi)
    raise ValueError(f"unknown method {method!r}")


def g2_derivative(q: QuadraticCoefficients, g: GVector2) -> GVector2:
    """d/dphi of (g0, g1): ``g0' = -a0 g1``, ``g1' = g0 + a1 g1``."""
    return GVector2(-q.a0 * g.g1, g.g0 + q.a1 * g.g1, g.phi)


def g2_add(ga: GVector2, gb: GVector2, q: QuadraticCoefficients) -> GVector2:
    """g-functions at ``phi_a + phi_b`` from their values at each phase."""
    g0 = ga.g0 * gb.g0 - q.a0 * ga.g1 * gb.g1
    g1 = ga.g1 * gb.g0 + ga.g0 * gb.g1 + q.a1 * ga.g1 * gb.g1
    return GVector2(g0, g1, ga.phi + gb.phi)


def g2_norm(q: QuadraticCoefficients, g: GVector2) -> complex:
    """``det(g0 + g1 E)``; equals ``exp(a1 phi)``."""
    return g.g0 * g.g0 + q.a1 * g.g0 * g.g1 + q.a0 * g.g1 * g.g1


def riccati2_eval(sol: Riccati2Solution, phi, pole_eps: float = POLE_EPS) -> complex:
    """Canonical solution ``u`` with ``exp(m12 phi) = (u - x1)/(u - x2)``."""
    phi = as_complex(phi)
    em1 = _expm1(sol.m12 * phi)  # E - 1
    if abs(em1) <= pole_eps:
        raise NearPole(f"riccati2 solution unbounded near phi={phi}")
    # (x1 - x2 E)/(1 - E) = x1 - m12 E/(E - 1) ... rewritten around x2
    return sol.x2 - sol.m12 / em1


def riccati2_phi0(sol: Riccati2Solution) -> complex:
    """Phase where the canonical solution vanishes (principal log)."""
    if sol.x1 == 0 or sol.x2 == 0:
        raise NearPole("zero is a root; the canonical solution never vanishes")
    return cmath.log(sol.x1 / sol.x2) / sol.m12


def _coth_term(m: complex, phi: complex, pole_eps: float) -> complex:
    em1 = _expm1(m * phi)
    if abs(em1) <= pole_eps:
        raise NearPole(f"coth pole near phi={phi}")
    # coth(z/2) = (e^z + 1)/(e^z - 1)
    return 0.5 * m * (em1 + 2) / em1


def riccati2_coth(sol: Riccati2Solution, phi, phi0, pole_eps: float = POLE_EPS) -> complex:
    """``m/2 coth(m phi0/2) - m/2 coth(m phi/2)`` with ``m = m12``.

    This solves the Riccati equation (and coincides with
    :func:`riccati2_eval`) when ``phi0`` is :func:`riccati2_phi0`; other
    ``phi0`` shift it by a constant.
    """
    phi, phi0 = as_complex(phi), as_complex(phi0)
    m = sol.m12
    return _coth_term(m, phi0, pole_eps) - _coth_term(m, phi, pole_eps)


def riccati2_sum(u, v, q: QuadraticCoefficients) -> complex:
    """Summation formula ``w = (u v - a0)/(u + v - a1)``."""
    u, v = as_complex(u), as_complex(v)
    den = u + v - q.a1
    if abs(den) <= 1e-12 * (1 + abs(u) + abs(v)):
        raise Indeterminate("u + v - a1 vanishes; the sum is at infinity")
    return (u * v - q.a0) / den


def riccati2_tangent(q: QuadraticCoefficients, phi, sep_min: float = SEP_MIN) -> complex:
    """``-g0/g1``, the tangent-like solution built from the g-functions."""
    g = g2_eval(q, phi, sep_min=sep_min)
    if abs(g.g1) <= 1e-12:
        raise NearPole(f"g1 vanishes at phi={phi}")
    return -g.g0 / g.g1
