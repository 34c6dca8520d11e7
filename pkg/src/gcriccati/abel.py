"""Riccati-Abel equation ``du/dphi = u**3 - a2*u**2 + a1*u - a0``.

Solutions are defined implicitly by the log-map ``F(u) = V*phi`` where

    F(u) = m32*Log(u - x1) + m13*Log(u - x2) + m21*Log(u - x3)

and ``dF/du = V/f(u)``. A second construction runs along the curve
``g2(phi1, phi2) = 0`` of the order-3 algebra, where ``-g0/g1`` solves the
same equation in ``phi2``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import AtSingularity, Indeterminate, NearPole, NoConvergence
from .gc3 import PhasePoint, GVector3, g3_eval, g3_partials
from .polynomial import (
    SEP_MIN,
    CubicCoefficients,
    PairState,
    RootSet3,
    as_complex,
    multiply_pairs_reduced,
    solve_cubic,
)

MAX_ITER = 64
POLE_U = 1e8
MAX_STEP = 0.05
MIN_STEP = 1e-12
# a cubic blow-up grows like 1/sqrt(distance), so |u| = 1e8 is unreachable in
# double precision; past this size a stalled step counts as a pole
POLE_SOFT = 1e4


@dataclass(frozen=True)
class RiccatiAbelProblem:
    coeffs: CubicCoefficients
    roots: RootSet3

    @classmethod
    def from_coeffs(cls, c: CubicCoefficients, sep_min: float = SEP_MIN) -> "RiccatiAbelProblem":
        return cls(c, solve_cubic(c, sep_min))

    def f(self, u):
        return self.coeffs(u)


def _check_off_roots(prob: RiccatiAbelProblem, u: complex, eps: float = 1e-12):
    for x in prob.roots.roots:
        if abs(u - x) <= eps:
            raise AtSingularity(f"u={u} coincides with root {x}")


def log_map(prob: RiccatiAbelProblem, u) -> complex:
    """Principal-branch log-map ``F(u)``."""
    u = as_complex(u)
    _check_off_roots(prob, u)
    r = prob.roots
    return (
        r.m32 * cmath.log(u - r.x1)
        + r.m13 * cmath.log(u - r.x2)
        + r.m21 * cmath.log(u - r.x3)
    )


def phi_zero(prob: RiccatiAbelProblem) -> complex:
    """Phase ``phi0 = F(0)/V`` at which the canonical solution vanishes."""
    if prob.coeffs.a0 == 0:
        raise AtSingularity("a0 = 0: zero is a root of the cubic")
    return log_map(prob, 0) / prob.roots.V


def invert_log_map(prob: RiccatiAbelProblem, phi, seed, max_iter: int = MAX_ITER) -> complex:
    """Solve ``F(u) = V*phi`` for ``u`` by Newton's method from ``seed``."""
    phi, u = as_complex(phi), as_complex(seed)
    V = prob.roots.V
    target = V * phi
    tol = 1e-12 * (1 + abs(target))
    for _ in range(max_iter):
        _check_off_roots(prob, u)
        G = log_map(prob, u) - target
        if abs(G) < tol:
            return u
        u = u - G * prob.f(u) / V
        if not (abs(u) < float("inf")):
            raise NoConvergence(f"log-map inversion at phi={phi} diverged from seed {seed}")
    _check_off_roots(prob, u)
    if abs(log_map(prob, u) - target) < tol:
        return u
    raise NoConvergence(f"log-map inversion at phi={phi} did not converge from seed {seed}")


def _log_step(prob: RiccatiAbelProblem, u_prev: complex, dphi: complex, seed: complex, max_iter: int = MAX_ITER):
    """Newton on the increment ``sum m_k Log((u - x_k)/(u_prev - x_k)) = V*dphi``.

    The ratios stay near 1 for short steps, so no branch cut is ever crossed.
    """
    r = prob.roots
    V = r.V
    target = V * dphi
    tol = 1e-12 * (1 + abs(target) + abs(log_map(prob, u_prev)))
    u = seed
    for _ in range(max_iter):
        _check_off_roots(prob, u)
        G = (
            r.m32 * cmath.log((u - r.x1) / (u_prev - r.x1))
            + r.m13 * cmath.log((u - r.x2) / (u_prev - r.x2))
            + r.m21 * cmath.log((u - r.x3) / (u_prev - r.x3))
            - target
        )
        if abs(G) < tol:
            return u
        u = u - G * prob.f(u) / V
        if not (abs(u) < float("inf")):
            break
    raise NoConvergence(f"continuation step of size {abs(dphi):.3g} failed")


def continue_log_map(prob: RiccatiAbelProblem, u0, phis, phi_start=None) -> list[complex]:
    """Follow the solution through ``u0`` at ``phi_start`` along ``phis``.

    ``phi_start`` defaults to ``F(u0)/V``. Steps are at most 0.05 and are
    halved when a Newton solve fails or strays from the Euler prediction.
    Raises :class:`NearPole` (with the values reached so far) when the
    solution blows up before the next requested phase.
    """
    u = as_complex(u0)
    cur = log_map(prob, u) / prob.roots.V if phi_start is None else as_complex(phi_start)
    out = []
    for phi in phis:
        phi = as_complex(phi)
        while cur != phi:
            h = phi - cur
            if abs(h) > MAX_STEP:
                h = h / abs(h) * MAX_STEP
            while True:
                pred = u + h * prob.f(u)
                try:
                    u_new = _log_step(prob, u, h, pred)
                    if abs(u_new - pred) <= 0.5 * abs(pred - u) + 1e-12 * (1 + abs(u)):
                        break
                except (NoConvergence, AtSingularity):
                    pass
                h = h / 2
                if abs(h) < MIN_STEP:
                    if abs(u) > POLE_SOFT:
                        raise NearPole(f"solution blows up near phi={cur}", partial=out)
                    raise NoConvergence(f"continuation stalled at phi={cur}")
            u = u_new
            cur = phi if abs(phi - (cur + h)) <= 1e-15 * (1 + abs(phi)) else cur + h
            if abs(u) > POLE_U:
                raise NearPole(f"solution blows up near phi={cur}", partial=out)
        out.append(u)
    return out


def leading_scale(pa: PairState, pb: PairState, c: CubicCoefficients) -> float:
    """Sum of the magnitudes of the terms that make up ``A``."""
    t, s, v, u = pa.t, pa.s, pb.t, pb.s
    return abs(c.a2) ** 2 + abs(c.a1) + abs(c.a2) * (abs(v) + abs(t)) + abs(s) + abs(u) + abs(t * v)


def pair_sum(pa: PairState, pb: PairState, c: CubicCoefficients) -> PairState:
    """Compose two pair states: ``(t, s) (+) (v, u) = (B/A, C/A)``.

    ``A x**2 + B x + C`` is the product of the two quadratics reduced
    modulo the cubic.
    """
    A, B, C = multiply_pairs_reduced(pa, pb, c)
    if abs(A) <= 1e-12 * leading_scale(pa, pb, c):
        raise Indeterminate("leading reduced coefficient A vanishes")
    return PairState(B / A, C / A)


# -- bridge along g2 = 0 ----------------------------------------------------


@dataclass(frozen=True)
class BridgeState:
    phi2: complex
    phi1: complex
    g: GVector3
    u: complex


def _bridge_state(c: CubicCoefficients, phi1: complex, phi2: complex, g: GVector3) -> BridgeState:
    if abs(g.g1) < 1e-10:
        raise NearPole(f"g1 vanishes on the constraint curve at phi1={phi1}, phi2={phi2}")
    return BridgeState(phi2, phi1, g, -g.g0 / g.g1)


def _constraint_ok(g: GVector3) -> bool:
    return abs(g.g2) <= 1e-12 * max(abs(g.g0), abs(g.g1), 1.0)


def _newton(c, phi1, phi2, solve_for: str, max_iter: int = MAX_ITER):
    """Newton on ``g2(phi1, phi2) = 0`` in one of the two phases."""
    for _ in range(max_iter):
        psi = PhasePoint(phi1, phi2)
        try:
            g = g3_eval(c, psi)
        except OverflowError:
            break
        if _constraint_ok(g):
            return phi1, phi2, g
        d1, d2 = g3_partials(c, psi, g)
        step = complex(g.g2 / (d2[2] if solve_for == "phi2" else d1[2]))
        if abs(step) > 1.0:
            break
        if solve_for == "phi2":
            phi2 = phi2 - step
        else:
            phi1 = phi1 - step
    raise NoConvergence(f"constraint g2=0 not met near phi1={phi1}, phi2={phi2}")


def bridge_start(c: CubicCoefficients, phi1_start, phi2_guess=None) -> BridgeState:
    """Point on ``g2 = 0`` with ``phi1 = phi1_start``, solved for ``phi2``."""
    phi1 = as_complex(phi1_start)
    if phi1 == 0:
        raise ValueError("phi1_start must be nonzero: u has a pole at the origin")
    # near the origin g2 ~ phi2 + phi1**2/2
    phi2 = -phi1 * phi1 / 2 if phi2_guess is None else as_complex(phi2_guess)
    phi1, phi2, g = _newton(c, phi1, phi2, "phi2")
    return _bridge_state(c, phi1, phi2, g)


def bridge_refine(c: CubicCoefficients, phi1, phi2) -> BridgeState:
    """Project onto ``g2 = 0`` at fixed ``phi2`` by Newton in ``phi1``."""
    phi1, phi2, g = _newton(c, as_complex(phi1), as_complex(phi2), "phi1")
    return _bridge_state(c, phi1, phi2, g)


def bridge_slope(c: CubicCoefficients, state: BridgeState) -> complex:
    """``dphi1/dphi2 = -(g0 + a2 g1)/g1`` along the constraint curve."""
    g = state.g
    return -(g.g0 + c.a2 * g.g1) / g.g1


def bridge_track(c: CubicCoefficients, start: BridgeState, phi2_targets) -> list[BridgeState]:
    """Follow the constraint curve through the given ``phi2`` values.

    Each step predicts ``phi1`` from the curve slope and corrects by Newton
    at fixed ``phi2``; failing steps are halved. Raises :class:`NearPole`
    carrying the states computed so far when ``u`` blows up.
    """
    states = []
    cur = start
    for phi2 in phi2_targets:
        phi2 = as_complex(phi2)
        if abs(phi2 - cur.phi2) > MAX_STEP + 1e-12:
            raise ValueError(f"bridge step {abs(phi2 - cur.phi2):.3g} exceeds {MAX_STEP}")
        while cur.phi2 != phi2:
            h = phi2 - cur.phi2
            while True:
                guess = cur.phi1 + h * bridge_slope(c, cur)
                try:
                    nxt = bridge_refine(c, guess, cur.phi2 + h)
                    if abs(nxt.phi1 - guess) <= 0.5 * abs(guess - cur.phi1) + 1e-12:
                        break
                except (NoConvergence, NearPole):
                    pass
                h = h / 2
                if abs(h) < MIN_STEP:
                    if abs(cur.u) > POLE_SOFT:
                        raise NearPole(f"bridge solution blows up near phi2={cur.phi2}", partial=states)
                    raise NoConvergence(f"bridge tracking stalled at phi2={cur.phi2}")
            if abs(phi2 - nxt.phi2) <= 1e-15 * (1 + abs(phi2)):
                nxt = BridgeState(phi2, nxt.phi1, nxt.g, nxt.u)
            cur = nxt
            if abs(cur.u) > POLE_U:
                raise NearPole(f"bridge solution blows up near phi2={cur.phi2}", partial=states)
        states.append(cur)
    return states


def bridge_residual(c: CubicCoefficients, state: BridgeState, h: float = 1e-5) -> float:
    """``|du/dphi2 - f(u)|`` by a five-point central difference along the curve."""
    slope = bridge_slope(c, state)

    def u_at(k):
        return bridge_refine(c, state.phi1 + k * h * slope, state.phi2 + k * h).u

    du = (8 * (u_at(1) - u_at(-1)) - (u_at(2) - u_at(-2))) / (12 * h)
    return abs(du - c(state.u))
