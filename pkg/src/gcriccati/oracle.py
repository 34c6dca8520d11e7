"""Numerical ground truth for the closed forms.

Cash-Karp 5(4) integration of the autonomous scalar equation
``du/dphi = f(u)`` with complex state, and quadrature of ``dx/f(x)`` along
straight segments. Nothing here uses roots, logs or g-functions.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _integrate

from .errors import PoleEncountered, SegmentNearRoot, StepUnderflow
from .polynomial import as_complex

POLE_U = 1e8
POLE_SOFT = 1e4
UNDERFLOW_FRACTION = 1e-12
MAX_STEPS = 200_000

# Cash-Karp tableau; the 5th-order solution is propagated
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
)
_B5 = (37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771)
_B4 = (2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 1 / 4)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


@dataclass(frozen=True)
class IntegrationResult:
    u_end: complex
    steps: int
    est_error: float


def _stages(f, u, h):
    k = []
    for i in range(len(_A)):
        ui = u + h * sum(a * kj for a, kj in zip(_A[i], k))
        k.append(f(ui))
    return k


def _rk_step(f, u, h):
    """One step: 5th-order update and the embedded error estimate."""
    k = _stages(f, u, h)
    u5 = u + h * sum(b * kj for b, kj in zip(_B5, k))
    err = h * sum(e * kj for e, kj in zip(_E, k))
    return u5, err


def _check_pole(u, phi):
    if not abs(u) <= POLE_U:
        raise PoleEncountered(f"|u| exceeded {POLE_U:g} near phi={phi}", phi=phi, u=u)


def integrate(f_coeffs, u0, phi_span, tol: float = 1e-10, h0: float | None = None) -> IntegrationResult:
    """Adaptive integration of ``u' = f(u)`` from ``phi_span[0]`` to ``phi_span[1]``.

    ``f_coeffs`` is any callable polynomial (quadratic or cubic
    coefficients). The span may run backwards. Local errors are kept below
    ``tol * max(1, |u|)``.
    """
    if tol < 1e-13:
        raise ValueError("tol must be at least 1e-13")
    f = f_coeffs
    u = as_complex(u0)
    a, b = float(phi_span[0]), float(phi_span[1])
    length = abs(b - a)
    if length == 0 or f(u) == 0:
        return IntegrationResult(u, 0, 0.0)
    direction = 1.0 if b > a else -1.0
    h_min = UNDERFLOW_FRACTION * length
    h = min(length, h0 if h0 else 0.01 * length)
    phi = a
    steps = 0
    worst = 0.0
    while direction * (b - phi) > 0:
        if steps >= MAX_STEPS:
            raise StepUnderflow(f"step budget exhausted at phi={phi}")
        h = min(h, abs(b - phi))
        u_new, err = _rk_step(f, u, direction * h)
        scale = tol * max(1.0, abs(u), abs(u_new)) if np.isfinite(abs(u_new)) else 0.0
        ratio = abs(err) / scale if scale > 0 else np.inf
        if ratio <= 1.0:
            phi = b if abs(b - phi) <= h else phi + direction * h
            u = u_new
            steps += 1
            worst = max(worst, abs(err) / max(1.0, abs(u)))
            _check_pole(u, phi)
            fac = 5.0 if ratio == 0 else min(5.0, 0.9 * ratio ** -0.2)
        else:
            fac = max(0.1, 0.9 * ratio ** -0.2) if np.isfinite(ratio) else 0.1
        h *= fac
        if h < h_min and direction * (b - phi) > 0:
            if abs(u) > POLE_SOFT:
                raise PoleEncountered(f"solution blows up near phi={phi}", phi=phi, u=u)
            raise StepUnderflow(f"step size underflow at phi={phi}")
    return IntegrationResult(u, steps, worst)


def integrate_fixed(f_coeffs, u0, phi_span, n_steps: int) -> complex:
    """The same 5th-order scheme with ``n_steps`` equal steps (no error control)."""
    u = as_complex(u0)
    a, b = float(phi_span[0]), float(phi_span[1])
    h = (b - a) / n_steps
    for i in range(n_steps):
        u, _ = _rk_step(f_coeffs, u, h)
        _check_pole(u, a + (i + 1) * h)
    return u


def integrate_path(f_coeffs, u0, phi_start, phis, tol: float = 1e-12) -> list[complex]:
    """Values of the solution through ``(phi_start, u0)`` at each of ``phis``."""
    out = []
    u, phi = as_complex(u0), float(phi_start)
    for target in phis:
        target = float(target)
        u = integrate(f_coeffs, u, (phi, target), tol).u_end
        phi = target
        out.append(u)
    return out


def quadrature_phi(prob, w, u, min_dist: float = 0.05) -> complex:
    """``int_w^u dx/f(x)`` along the straight segment from ``w`` to ``u``.

    Equals ``(F(u) - F(w))/V`` for the log-map ``F`` whenever the segment
    crosses no branch cut of the principal logs.
    """
    w, u = as_complex(w), as_complex(u)
    d = u - w
    if d == 0:
        return 0j
    for x in prob.roots.roots:
        # distance from root to the segment
        tau = min(1.0, max(0.0, ((x - w) * d.conjugate()).real / abs(d) ** 2))
        if abs(w + tau * d - x) <= min_dist:
            raise SegmentNearRoot(f"segment from {w} to {u} passes within {min_dist} of root {x}")
    f = prob.coeffs

    def integrand(tau):
        return d / f(w + tau * d)

    with warnings.catch_warnings():
        # QUADPACK flags roundoff when the tolerance is near machine precision
        warnings.simplefilter("ignore", _integrate.IntegrationWarning)
        val, _ = _integrate.quad(integrand, 0.0, 1.0, complex_func=True, epsabs=1e-14, epsrel=1e-13, limit=200)
    return complex(val)
