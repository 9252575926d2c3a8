"""Reference velocities by direct adaptive quadrature.

Two independent routes are provided:

* :func:`velocity_components_quadrature` integrates the three scalar
  component integrals written in terms of the denominator D(theta);
* :func:`velocity_crossproduct_quadrature` integrates the raw Biot-Savart
  vector integrand (x - xi) x dxi / |x - xi|^3 in physical coordinates.

Agreement between the two checks the reduction to component form; both serve
as ground truth for the closed-form evaluators in :mod:`vortexarc.field`.
"""
from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureNonconvergence
from .geometry import ArcGeometry, FieldPoint, FrameVelocity, coefficients

__all__ = [
    "SUBDIVISION_BUDGET",
    "velocity_components_quadrature",
    "velocity_crossproduct_quadrature",
    "arc_integral_quadrature",
]

SUBDIVISION_BUDGET = 10_000


def _check_tol(tol):
    if not 0.0 < tol <= 1e-6:
        raise DomainError(f"tolerance must lie in (0, 1e-6], got {tol!r}")


def _breakpoints(p, L):
    pts = []
    if p.theta_closest is not None and -L < p.theta_closest < L:
        pts.append(p.theta_closest)
    return pts


def _quad(f, L, pts, epsabs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, info = integrate.quad(
            f, -L, L, epsabs=epsabs, epsrel=0.0, limit=SUBDIVISION_BUDGET,
            points=pts or None, full_output=True)[:3]
    if err > epsabs and info["last"] >= SUBDIVISION_BUDGET:
        raise QuadratureNonconvergence(
            f"subdivision budget exhausted (error estimate {err:.3g} > {epsabs:.3g})")
    return val


def velocity_components_quadrature(arc: ArcGeometry, x: FieldPoint, tol: float = 1e-10) -> FrameVelocity:
    """Velocity from the component integrals

        v1 = -eps kappa x3 int sin/D^1.5,   v2 = eps kappa x3 int cos/D^1.5,
        v3 = kappa eps int (x1 sin - x2 cos)/D^1.5 + kappa int (cos - 1)/D^1.5,

    each to absolute accuracy ``tol`` after scaling by ``circulation_scale``.
    """
    _check_tol(tol)
    p = coefficients(arc, x)
    if arc.L == 0.0:
        return FrameVelocity(0.0, 0.0, 0.0)
    kappa, eps = arc.kappa, p.epsilon
    x1, x2, x3 = p.direction
    c1, c2, c3 = p.c1, p.c2, p.c3
    pts = _breakpoints(p, arc.L)
    scale = abs(arc.circulation_scale) or 1.0
    weight = kappa * max(1.0, eps) * scale
    # v3 sums three integrals, so each gets a share of the budget
    epsabs = tol / (4.0 * weight)

    def inv15(t):
        d = c1 + c2 * math.cos(t) + c3 * math.sin(t)
        return 1.0 / (d * math.sqrt(d))

    js = _quad(lambda t: math.sin(t) * inv15(t), arc.L, pts, epsabs)
    jc = _quad(lambda t: math.cos(t) * inv15(t), arc.L, pts, epsabs)
    # cos t - 1 = -2 sin^2(t/2) avoids cancellation near the closest point
    j1 = _quad(lambda t: -2.0 * math.sin(0.5 * t) ** 2 * inv15(t), arc.L, pts, epsabs)
    v1 = -eps * kappa * x3 * js
    v2 = eps * kappa * x3 * jc
    v3 = kappa * eps * (x1 * js - x2 * jc) + kappa * j1
    return FrameVelocity(v1, v2, v3).scaled(arc.circulation_scale)


def velocity_crossproduct_quadrature(arc: ArcGeometry, x: FieldPoint, tol: float = 1e-10) -> FrameVelocity:
    """Velocity from the vector integrand (x - xi) x xi'(theta) / |x - xi|^3."""
    _check_tol(tol)
    p = coefficients(arc, x)
    if arc.L == 0.0:
        return FrameVelocity(0.0, 0.0, 0.0)
    R = arc.R
    X = np.array(x.cartesian, dtype=float)
    scale = abs(arc.circulation_scale) or 1.0

    def integrand(t):
        st, ct = math.sin(t), math.cos(t)
        sep = X - R * np.array([st, 1.0 - ct, 0.0])
        tangent = R * np.array([ct, st, 0.0])
        d = math.sqrt(sep @ sep)
        return np.cross(sep, tangent) / (d * d * d)

    pts = _breakpoints(p, arc.L)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res, err, info = integrate.quad_vec(
            integrand, -arc.L, arc.L, epsabs=0.5 * tol / scale, epsrel=0.0,
            norm="max", limit=SUBDIVISION_BUDGET, points=pts or None, full_output=True)
    if info.status == 1:
        raise QuadratureNonconvergence(
            f"subdivision budget exhausted (error estimate {err:.3g})")
    return FrameVelocity.from_vector(res).scaled(arc.circulation_scale)


def arc_integral_quadrature(p, tol: float = 1e-13) -> float:
    """Direct quadrature of int_{-L}^{L} dt / sqrt(c1 + c2 cos t + c3 sin t)."""
    L = p.half_angle
    if L == 0.0:
        return 0.0
    pts = _breakpoints(p, L)
    return _quad(lambda t: 1.0 / math.sqrt(p.c1 + p.c2 * math.cos(t) + p.c3 * math.sin(t)),
                 L, pts, tol)
