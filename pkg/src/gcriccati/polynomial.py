"""Complex polynomial machinery for monic quadratics and cubics.

Sign conventions follow the Riccati problems built on top of this module:
quadratics are written ``x**2 - a1*x + a0`` and cubics
``x**3 - a2*x**2 + a1*x - a0``, so that (a2, a1, a0) are the elementary
symmetric functions of the roots.
"""
from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRoots, DomainError

SEP_MIN = 1e-6

# residual target used when polishing eigenvalue roots
_POLISH_STEPS = 3


def as_complex(value) -> complex:
    """Coerce ``value`` to a finite Python complex."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite complex value {z!r}")
    return z


@dataclass(frozen=True)
class QuadraticCoefficients:
    """The monic quadratic ``x**2 - a1*x + a0``."""

    a1: complex
    a0: complex

    def __post_init__(self):
        object.__setattr__(self, "a1", as_complex(self.a1))
        object.__setattr__(self, "a0", as_complex(self.a0))

    def __call__(self, x):
        return x * x - self.a1 * x + self.a0


@dataclass(frozen=True)
class CubicCoefficients:
    """The monic cubic ``x**3 - a2*x**2 + a1*x - a0``."""

    a2: complex
    a1: complex
    a0: complex

    def __post_init__(self):
        for name in ("a2", "a1", "a0"):
            object.__setattr__(self, name, as_complex(getattr(self, name)))

    def __call__(self, x):
        return ((x - self.a2) * x + self.a1) * x - self.a0

    def derivative(self, x):
        return (3 * x - 2 * self.a2) * x + self.a1

    @classmethod
    def from_roots(cls, x1, x2, x3) -> "CubicCoefficients":
        return cls(x1 + x2 + x3, x1 * x2 + x2 * x3 + x3 * x1, x1 * x2 * x3)


@dataclass(frozen=True)
class RootSet3:
    """Three labelled roots of a cubic with their differences and Vandermonde."""

    x1: complex
    x2: complex
    x3: complex

    @property
    def roots(self) -> tuple[complex, complex, complex]:
        return (self.x1, self.x2, self.x3)

    @property
    def m12(self):
        return self.x1 - self.x2

    @property
    def m13(self):
        return self.x1 - self.x3

    @property
    def m21(self):
        return self.x2 - self.x1

    @property
    def m23(self):
        return self.x2 - self.x3

    @property
    def m31(self):
        return self.x3 - self.x1

    @property
    def m32(self):
        return self.x3 - self.x2

    @property
    def V(self):
        return (self.x1 - self.x2) * (self.x2 - self.x3) * (self.x3 - self.x1)

    def min_separation(self) -> float:
        return min(abs(self.m12), abs(self.m23), abs(self.m13))

    def coefficients(self) -> CubicCoefficients:
        return CubicCoefficients.from_roots(self.x1, self.x2, self.x3)


@dataclass(frozen=True)
class PairState:
    """The monic quadratic ``x**2 + t*x + s`` carrying two solution values."""

    t: complex
    s: complex

    def __post_init__(self):
        object.__setattr__(self, "t", as_complex(self.t))
        object.__setattr__(self, "s", as_complex(self.s))

    @classmethod
    def from_values(cls, u, v) -> "PairState":
        return cls(-(u + v), u * v)

    def __call__(self, x):
        return (x + self.t) * x + self.s

    def values(self) -> tuple[complex, complex]:
        """The two roots (u, v) of the carried quadratic."""
        return solve_quadratic(QuadraticCoefficients(-self.t, self.s))


def _root_order(a: complex, b: complex) -> int:
    # lexicographic on (re, im); real parts equal up to rounding count as ties
    tol = 1e-12 * max(1.0, abs(a), abs(b))
    if abs(a.real - b.real) > tol:
        return -1 if a.real < b.real else 1
    if a.imag != b.imag:
        return -1 if a.imag < b.imag else 1
    return 0


def sort_roots(roots) -> list[complex]:
    return sorted((complex(r) for r in roots), key=functools.cmp_to_key(_root_order))


def solve_quadratic(q: QuadraticCoefficients) -> tuple[complex, complex]:
    """Roots of ``x**2 - a1*x + a0``, sorted lexicographically by (re, im).

    Uses the cancellation-free pairing of the quadratic formula with
    Vieta's product relation.
    """
    a1, a0 = q.a1, q.a0
    if a0 == 0:
        x1, x2 = sort_roots((0j, a1))
        return x1, x2
    d = cmath.sqrt(a1 * a1 - 4 * a0)
    big = a1 + d if abs(a1 + d) >= abs(a1 - d) else a1 - d
    r1 = big / 2
    try:
        r2 = a0 / r1
    except ZeroDivisionError:
        # subnormal inputs: fall back to the symmetric formula
        r1, r2 = (a1 + d) / 2, (a1 - d) / 2
    x1, x2 = sort_roots((r1, r2))
    return x1, x2


def companion_matrix(c: CubicCoefficients) -> np.ndarray:
    """Companion matrix whose characteristic polynomial is ``c``."""
    return np.array(
        [[0, 0, c.a0],
         [1, 0, -c.a1],
         [0, 1, c.a2]],
        dtype=complex,
    )


def discriminant(c: CubicCoefficients) -> tuple[complex, float]:
    """Discriminant of the cubic and a bound on its rounding error."""
    # x^3 + b x^2 + cc x + d
    b, cc, d = -c.a2, c.a1, -c.a0
    terms = (
        18 * b * cc * d,
        -4 * b**3 * d,
        b * b * cc * cc,
        -4 * cc**3,
        -27 * d * d,
    )
    bound = 32 * np.finfo(float).eps * sum(abs(t) for t in terms)
    return sum(terms), bound


def _polish(c: CubicCoefficients, r: complex) -> complex:
    for _ in range(_POLISH_STEPS):
        fp = c.derivative(r)
        if fp == 0:
            break
        step = c(r) / fp
        r_new = r - step
        if not cmath.isfinite(r_new) or not abs(c(r_new)) < abs(c(r)):
            break
        r = r_new
    return r


@functools.lru_cache(maxsize=256)
def _cubic_roots_cached(c: CubicCoefficients, sep_min: float) -> RootSet3:
    disc, bound = discriminant(c)
    if abs(disc) <= bound:
        raise DegenerateRoots(f"cubic {c} has a repeated root (discriminant {disc:.3g})")
    E = companion_matrix(c)
    if not E.imag.any():
        # real eigensolver keeps real roots exactly real and pairs conjugate
        E = E.real
    eig = np.linalg.eigvals(E)
    roots = sort_roots(_polish(c, complex(r)) for r in eig)
    rs = RootSet3(*roots)
    if rs.min_separation() < sep_min:
        raise DegenerateRoots(
            f"roots of {c} separated by {rs.min_separation():.3g} < sep_min={sep_min:g}"
        )
    return rs


def solve_cubic(c: CubicCoefficients, sep_min: float = SEP_MIN) -> RootSet3:
    """Distinct roots of the cubic, labelled in lexicographic (re, im) order.

    Roots are eigenvalues of the companion matrix refined by a few Newton
    steps. Raises DegenerateRoots when two roots are closer than ``sep_min``
    or the discriminant is zero within rounding.
    """
    return _cubic_roots_cached(c, float(sep_min))


def partial_fraction_weights(r: RootSet3) -> tuple[complex, complex, complex]:
    """Weights ``w_k`` with ``1/f(x) = sum(w_k / (x - x_k))``."""
    V = r.V
    if V == 0:
        raise DegenerateRoots("Vandermonde determinant vanishes")
    return (r.m32 / V, r.m13 / V, r.m21 / V)


def reduce_monomial(k: int, c: CubicCoefficients) -> tuple[complex, complex, complex]:
    """Coefficients (A, B, C) with ``x**k == A*x**2 + B*x + C`` modulo the cubic."""
    if not 0 <= k <= 4:
        raise DomainError(f"monomial degree {k} outside 0..4")
    A, B, C = [(0j, 0j, 1 + 0j), (0j, 1 + 0j, 0j), (1 + 0j, 0j, 0j)][min(k, 2)]
    for _ in range(k - 2):
        # x * (A x^2 + B x + C) with x^3 -> a2 x^2 - a1 x + a0
        A, B, C = A * c.a2 + B, -A * c.a1 + C, A * c.a0
    return A, B, C


def multiply_pairs_reduced(
    p: PairState, q: PairState, c: CubicCoefficients
) -> tuple[complex, complex, complex]:
    """Reduce ``(x**2 + t*x + s)(x**2 + v*x + u)`` to ``A*x**2 + B*x + C``.

    The identity holds at every root of the cubic ``c``.
    """
    t, s = p.t, p.s
    v, u = q.t, q.s
    a2, a1, a0 = c.a2, c.a1, c.a0
    A = (a2 * a2 - a1) + a2 * (v + t) + (s + u + t * v)
    B = (a0 - a1 * a2) - a1 * (v + t) + (t * u + v * s)
    C = a0 * a2 + a0 * (v + t) + s * u
    return A, B, C


def abel_transform(p, q, r, s) -> tuple[complex, complex, complex]:
    """Coefficients of ``dz/dx = c1*z + c2*z**2 + c3*z**3``.

    Obtained from Abel's ``(y + s) y' + p + q y + r y**2 = 0`` with constant
    ``s`` under ``y + s = 1/z``; returned as ``(c1, c2, c3)``.
    """
    p, q, r, s = (as_complex(x) for x in (p, q, r, s))
    return (r, q - 2 * r * s, p - q * s + r * s * s)
