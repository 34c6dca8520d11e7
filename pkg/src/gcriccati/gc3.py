"""Order-3 general complex algebra with two phases.

The generator ``E`` is the companion matrix of the cubic, and
``exp(E*phi1 + E**2*phi2) = g0 + g1*E + g2*E**2``. Since the first column of
``E**k`` is the k-th unit vector, (g0, g1, g2) is the first column of that
exponential.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRoots, Indeterminate, NearPole
from .matexp import expm
from .polynomial import (
    SEP_MIN,
    CubicCoefficients,
    PairState,
    as_complex,
    companion_matrix,
    solve_cubic,
    solve_quadratic,
    QuadraticCoefficients,
)

G2_EPS = 1e-12


@dataclass(frozen=True)
class PhasePoint:
    phi1: complex
    phi2: complex

    def __post_init__(self):
        object.__setattr__(self, "phi1", as_complex(self.phi1))
        object.__setattr__(self, "phi2", as_complex(self.phi2))

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        return PhasePoint(self.phi1 + other.phi1, self.phi2 + other.phi2)


@dataclass(frozen=True)
class GVector3:
    g0: complex
    g1: complex
    g2: complex
    phase: PhasePoint = PhasePoint(0j, 0j)

    def as_array(self) -> np.ndarray:
        return np.array([self.g0, self.g1, self.g2], dtype=complex)

    @classmethod
    def from_array(cls, arr, phase: PhasePoint) -> "GVector3":
        return cls(complex(arr[0]), complex(arr[1]), complex(arr[2]), phase)


@dataclass(frozen=True)
class TangentPair:
    """Ratios ``T1 = g1/g2`` and ``T0 = g0/g2``."""

    T1: complex
    T0: complex

    def as_pair(self) -> PairState:
        return PairState(self.T1, self.T0)

    @classmethod
    def from_pair(cls, p: PairState) -> "TangentPair":
        return cls(p.t, p.s)

    @classmethod
    def from_g(cls, g: GVector3) -> "TangentPair":
        if abs(g.g2) <= G2_EPS:
            raise NearPole(f"g2 vanishes at {g.phase}")
        return cls(g.g1 / g.g2, g.g0 / g.g2)


def companion3(c: CubicCoefficients) -> np.ndarray:
    """``[[0, 0, a0], [1, 0, -a1], [0, 1, a2]]``."""
    return companion_matrix(c)


def phase_matrix(c: CubicCoefficients, psi: PhasePoint) -> np.ndarray:
    E = companion3(c)
    return E * psi.phi1 + (E @ E) * psi.phi2


def _spectral(c: CubicCoefficients, psi: PhasePoint, sep_min: float) -> np.ndarray:
    x1, x2, x3 = solve_cubic(c, sep_min).roots
    e1, e2, e3 = (cmath.exp(x * psi.phi1 + x * x * psi.phi2) for x in (x1, x2, x3))
    # Newton divided differences of the interpolant g0 + g1 x + g2 x^2
    d12 = (e2 - e1) / (x2 - x1)
    d23 = (e3 - e2) / (x3 - x2)
    g2 = (d23 - d12) / (x3 - x1)
    g1 = d12 - g2 * (x1 + x2)
    g0 = e1 - x1 * d12 + g2 * x1 * x2
    return np.array([g0, g1, g2], dtype=complex)


def _series(c: CubicCoefficients, psi: PhasePoint) -> np.ndarray:
    return expm(phase_matrix(c, psi))[:, 0]


def g3_eval(c: CubicCoefficients, psi: PhasePoint, method: str = "auto", sep_min: float = SEP_MIN) -> GVector3:
    """g-functions at the phase point ``psi``.

    ``"spectral"`` interpolates ``exp(x_k phi1 + x_k**2 phi2)`` at the three
    roots; ``"series"`` takes the first column of the matrix exponential.
    ``"auto"`` uses the spectral route unless the roots are degenerate.
    """
    if method == "auto":
        try:
            return GVector3.from_array(_spectral(c, psi, sep_min), psi)
        except DegenerateRoots:
            method = "series"
    if method == "spectral":
        return GVector3.from_array(_spectral(c, psi, sep_min), psi)
    if method == "series":
        return GVector3.from_array(_series(c, psi), psi)
    raise ValueError(f"unknown method {method!r}")


def d_phi1_matrix(c: CubicCoefficients) -> np.ndarray:
    return companion3(c)


def d_phi2_matrix(c: CubicCoefficients) -> np.ndarray:
    a2, a1, a0 = c.a2, c.a1, c.a0
    return np.array(
        [[0, a0, a0 * a2],
         [0, -a1, a0 - a1 * a2],
         [1, a2, -a1 + a2 * a2]],
        dtype=complex,
    )


def g3_partials(c: CubicCoefficients, psi: PhasePoint, g: GVector3 | None = None):
    """Partial derivatives of (g0, g1, g2) in ``phi1`` and ``phi2``.

    Returns two length-3 arrays. Pass ``g`` to skip re-evaluation.
    """
    if g is None:
        g = g3_eval(c, psi)
    vec = g.as_array()
    return d_phi1_matrix(c) @ vec, d_phi2_matrix(c) @ vec


def addition_matrix(g: GVector3, c: CubicCoefficients) -> np.ndarray:
    """Matrix of multiplication by ``g0 + g1 E + g2 E**2`` acting on g-vectors."""
    g0, g1, g2 = g.g0, g.g1, g.g2
    a2, a1, a0 = c.a2, c.a1, c.a0
    return np.array(
        [[g0, g2 * a0, g1 * a0 + g2 * a0 * a2],
         [g1, g0 - g2 * a1, -g1 * a1 + g2 * (a0 - a1 * a2)],
         [g2, g1 + g2 * a2, g0 + g1 * a2 + g2 * (-a1 + a2 * a2)]],
        dtype=complex,
    )


def g3_add(ga: GVector3, gb: GVector3, c: CubicCoefficients) -> GVector3:
    """g-functions at ``psi_a + psi_b``."""
    return GVector3.from_array(addition_matrix(ga, c) @ gb.as_array(), ga.phase + gb.phase)


def g3_det(g: GVector3, c: CubicCoefficients) -> complex:
    """``det(g0 I + g1 E + g2 E**2)``; equals ``exp(a2 phi1 + (a2**2 - 2 a1) phi2)``."""
    return complex(np.linalg.det(addition_matrix(g, c)))


def g3_det_expected(c: CubicCoefficients, psi: PhasePoint) -> complex:
    return cmath.exp(c.a2 * psi.phi1 + (c.a2 * c.a2 - 2 * c.a1) * psi.phi2)


def tangent_add(ta: TangentPair, tb: TangentPair, c: CubicCoefficients) -> TangentPair:
    """Addition law for the tangent pairs ``(g1/g2, g0/g2)``."""
    a2, a1, a0 = c.a2, c.a1, c.a0
    t0, t1 = ta.T0, ta.T1
    r0, r1 = tb.T0, tb.T1
    den = r0 + (t1 + a2) * r1 + t0 + t1 * a2 + (-a1 + a2 * a2)
    scale = 1 + abs(r0) + abs(t0) + abs(t1 * r1) + abs(a2 * (t1 + r1)) + abs(a2 * a2 - a1)
    if abs(den) <= 1e-12 * scale:
        raise Indeterminate("g2 of the summed phase vanishes")
    T0 = (t0 * r0 + a0 * (r1 + t1) + a0 * a2) / den
    T1 = (t1 * r0 + t0 * r1 - a1 * (r1 + t1) + (a0 - a1 * a2)) / den
    return TangentPair(T1, T0)


def pair_from_phase(c: CubicCoefficients, psi: PhasePoint, g: GVector3 | None = None):
    """The pair state ``(g1/g2, g0/g2)`` at ``psi`` and its two roots (u, v).

    u and v are the roots of ``g0 + y g1 + y**2 g2 = 0``.
    """
    if g is None:
        g = g3_eval(c, psi)
    tp = TangentPair.from_g(g)
    pair = tp.as_pair()
    u, v = solve_quadratic(QuadraticCoefficients(-pair.t, pair.s))
    return pair, u, v
