"""Closed-form induced velocity of a circular vortex arc and its local limits.

The arc integral I(c1, c2, c3) = int dt / sqrt(D) reduces to
2 [F(L+, k) - F(L-, k)] / sqrt(c1 + r). Every velocity component is a linear
combination of the partial derivatives dI/dc_j:

    v1 =  2 kappa eps x3 dI/dc3
    v2 = -2 kappa eps x3 dI/dc2
    v3 = 2 kappa [eps x2 dI/dc2 - eps x1 dI/dc3 + dI/dc1 - dI/dc2]

and the partials are evaluated in closed form from F, dF/dk and
1/sqrt(1 - k^2 sin^2 L+-). :func:`velocity_elliptic` is this exact form.

The single-derivative constructions (coefficient vector V1 times dI/deps,
the binormal "local" field, the first-order asymptotic field and the classical
LIA expression) are provided as evaluatable formulas for comparison; they are
not equal to the Biot-Savart field in general.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .asymptotic import F1
from .elliptic import _E, _F, _J
from .errors import DegenerateModulusError, DomainError, ValidityWarning
from .geometry import ArcGeometry, EllipticParams, FieldPoint, FrameVelocity, coefficients

__all__ = [
    "InductionConstants",
    "FilamentNodeState",
    "GLIE_MAX_EPS",
    "GLIE_MAX_HALF_ANGLE",
    "induction_constants",
    "coefficient_derivatives",
    "arc_integral_partials",
    "omega",
    "dI_deps",
    "V1_vector",
    "velocity_elliptic",
    "velocity_chain_rule",
    "velocity_local",
    "glie_binormal",
    "velocity_glie_asymptotic",
    "lia_binormal",
    "velocity_lia",
    "filament_node_velocity",
    "EVALUATORS",
    "evaluate",
]

GLIE_MAX_EPS = 0.05
GLIE_MAX_HALF_ANGLE = 0.2
_MIN_KC2 = 1e-12
# below this r/c1 the elliptic partials lose digits to cancellation
_NEAR_AXIS = 3e-6


@dataclass(frozen=True)
class InductionConstants:
    """Scalars entering the coefficient vector V1 and the eps-derivative of I.

    ``A1 .. A4`` are the eps-derivatives of the reduction data:
    d(2/sqrt(c1+r))/deps = A1/2, A2 = 2/sqrt(c1+r), A3 = dphi/deps and
    A4 = dk/deps. Hence ``alpha1 = A1/2`` and ``alpha2 = A2``.
    """

    beta1: float
    beta2: float
    beta3: float
    beta4: float
    A: float
    A1: float
    A2: float
    A3: float
    A4: float

    @property
    def alpha1(self) -> float:
        return 0.5 * self.A1

    @property
    def alpha2(self) -> float:
        return self.A2


@dataclass(frozen=True)
class FilamentNodeState:
    """Kinematic inputs at one filament node (vectors are length-3 arrays)."""

    position: np.ndarray
    unit_tangent: np.ndarray
    V_S: np.ndarray
    V_N: np.ndarray
    V_I: np.ndarray
    beta_mf: float = 0.0
    beta_mf_prime: float = 0.0


def coefficient_derivatives(p: EllipticParams) -> tuple[float, float, float]:
    """(dc1/deps, dc2/deps, dc3/deps) along the ray of fixed direction."""
    x1, x2, _ = p.direction
    return 2.0 * p.epsilon - 2.0 * x2, 2.0 * x2, -2.0 * x1


def induction_constants(p: EllipticParams) -> InductionConstants:
    kappa, eps = p.kappa, p.epsilon
    x1, x2, x3 = p.direction
    d1, d2, d3 = coefficient_derivatives(p)
    beta1 = 2.0 * kappa * x3 * d3
    beta2 = 2.0 * kappa * x2 * d2
    beta3 = -2.0 * kappa * x1 * d3
    beta4 = 2.0 * kappa * (d1 - d2)
    c1, c2, c3, r, s = p.c1, p.c2, p.c3, p.r, p.s
    if r == 0.0:
        nan = float("nan")
        return InductionConstants(beta1, beta2, beta3, beta4, nan, nan, 2.0 / math.sqrt(s), nan, nan)
    A = (x2 * c2 - x1 * c3) / r
    s32 = s * math.sqrt(s)
    A1 = -4.0 * (eps - x2 + A) / s32
    A2 = 2.0 / math.sqrt(s)
    A3 = -2.0 * (x2 * c3 + x1 * c2) / (r * r)
    A4 = (math.sqrt(2.0 * r) * (x2 - eps) / s32
          + math.sqrt(2.0 / r) * (s32 - r * math.sqrt(s)) / (s * s) * A)
    return InductionConstants(beta1, beta2, beta3, beta4, A, A1, A2, A3, A4)


def _delta(psi, kc2):
    s, c = math.sin(psi), math.cos(psi)
    return math.sqrt(c * c + kc2 * s * s)


def omega(A3: float, A4: float, k: float, kc2: float, L: float) -> float:
    """Amplitude-and-modulus derivative of F(L(eps), k(eps)) at one limit.

    Equal to (A3/2) / sqrt(1 - k^2 sin^2 L) + A4 dF/dk(L, k), with
    dF/dk = E/(k (1-k^2)) - F/k - k sin(2L) / (2 (1-k^2) sqrt(1 - k^2 sin^2 L)).
    """
    return 0.5 * A3 / _delta(L, kc2) + A4 * k * _J(L, kc2)


def _near_axis_partials(p):
    # D^-3/2 ~ c1^-3/2 (1 - 3u/2), u = (c2 cos + c3 sin)/c1, error O((r/c1)^2)
    c1, c2, c3, L = p.c1, p.c2, p.c3, p.half_angle
    sL, cL = math.sin(L), math.cos(L)
    base = -0.5 * c1 ** -1.5
    g = 1.5 / c1
    cos2 = L + sL * cL
    sin2 = L - sL * cL
    d1 = base * (2.0 * L - g * c2 * 2.0 * sL)
    d2 = base * (2.0 * sL - g * c2 * cos2)
    d3 = base * (-g * c3 * sin2)
    return d1, d2, d3


def arc_integral_partials(p: EllipticParams) -> tuple[float, float, float]:
    """Closed-form (dI/dc1, dI/dc2, dI/dc3) of the arc integral."""
    if p.half_angle == 0.0:
        return 0.0, 0.0, 0.0
    if p.kc2 <= 0.0:
        raise DegenerateModulusError("k = 1: field point on the filament circle")
    if p.r <= _NEAR_AXIS * p.c1:
        return _near_axis_partials(p)
    c1, c2, c3, r, s, k, kc2 = p.c1, p.c2, p.c3, p.r, p.s, p.k, p.kc2
    G = _F(p.Lplus, k, kc2) - _F(p.Lminus, k, kc2)
    # dG/dk / k, free of the 1/k factor
    Gk_over_k = _J(p.Lplus, kc2) - _J(p.Lminus, kc2)
    Gphi = 0.5 * (1.0 / _delta(p.Lplus, kc2) - 1.0 / _delta(p.Lminus, kc2))
    root = math.sqrt(s)
    dI_dc1 = -G / (s * root) - Gk_over_k * k * k / (s * root)
    # dk/dr = c1 / (k s^2)
    dI_dr = -G / (s * root) + 2.0 * c1 * Gk_over_k / (root * s * s)
    dI_dphi = 2.0 * Gphi / root
    dI_dc2 = dI_dr * c2 / r - dI_dphi * c3 / (r * r)
    dI_dc3 = dI_dr * c3 / r + dI_dphi * c2 / (r * r)
    return dI_dc1, dI_dc2, dI_dc3


def dI_deps(arc: ArcGeometry, x: FieldPoint) -> float:
    """Derivative of the arc integral along the ray through ``x``.

    dI/deps = (A1/2) [F(L+) - F(L-)] + A2 [Omega(L+) - Omega(L-)].
    """
    p = coefficients(arc, x)
    return _dI_deps(p)


def _dI_deps(p):
    if p.half_angle == 0.0:
        return 0.0
    if p.kc2 < _MIN_KC2:
        raise DegenerateModulusError(f"1 - k^2 = {p.kc2:.3g} is below {_MIN_KC2}")
    if p.r <= _NEAR_AXIS * p.c1:
        return float(np.dot(arc_integral_partials(p), coefficient_derivatives(p)))
    C = induction_constants(p)
    k, kc2 = p.k, p.kc2
    G = _F(p.Lplus, k, kc2) - _F(p.Lminus, k, kc2)
    W = omega(C.A3, C.A4, k, kc2, p.Lplus) - omega(C.A3, C.A4, k, kc2, p.Lminus)
    return C.alpha1 * G + C.alpha2 * W


def V1_vector(arc: ArcGeometry, x: FieldPoint) -> FrameVelocity:
    """Coefficient vector eps b1 t - eps b2 n + (eps b2 + eps b3 + b4) b."""
    p = coefficients(arc, x)
    C = induction_constants(p)
    eps = p.epsilon
    return FrameVelocity(eps * C.beta1, -eps * C.beta2, eps * C.beta2 + eps * C.beta3 + C.beta4)


def velocity_elliptic(arc: ArcGeometry, x: FieldPoint) -> FrameVelocity:
    """Exact induced velocity from incomplete elliptic integrals."""
    p = coefficients(arc, x)
    d1, d2, d3 = arc_integral_partials(p)
    kappa, eps = arc.kappa, p.epsilon
    x1, x2, x3 = p.direction
    v1 = 2.0 * kappa * eps * x3 * d3
    v2 = -2.0 * kappa * eps * x3 * d2
    v3 = 2.0 * kappa * (eps * x2 * d2 - eps * x1 * d3 + d1 - d2)
    return FrameVelocity(v1, v2, v3).scaled(arc.circulation_scale)


def velocity_chain_rule(arc: ArcGeometry, x: FieldPoint) -> FrameVelocity:
    """V1(eps) * dI/deps, the single-derivative assembly of the field."""
    p = coefficients(arc, x)
    return V1_vector(arc, x).scaled(_dI_deps(p) * arc.circulation_scale)


def velocity_local(arc: ArcGeometry, x: FieldPoint) -> FrameVelocity:
    """Binormal field -8 kappa x2 dI/deps b."""
    p = coefficients(arc, x)
    x2 = p.direction[1]
    if x2 == 0.0:
        return FrameVelocity(0.0, 0.0, 0.0)
    vb = -8.0 * arc.kappa * x2 * _dI_deps(p)
    return FrameVelocity(0.0, 0.0, vb * arc.circulation_scale)


def glie_binormal(kappa: float, x2: float, L: float, k: float) -> float:
    """First-order asymptotic binormal speed

        -8 kappa x2 { 9 x2 F1(sin L, k)/2 - x2 E(L, k) / ((1-k^2) k)
                      - k sin 2L [sqrt(1 + k^2 sin^2 L) + sqrt(1 - k^2 sin^2 L)]
                        / (2 (1-k^2) sqrt(1 - k^4 sin^4 L)) }.
    """
    if not 0.0 < k < 1.0:
        raise DomainError(f"k must lie in (0, 1), got {k!r}")
    if not 0.0 <= L < 0.5 * math.pi:
        raise DomainError("half-angle must lie in [0, pi/2) for sin L < 1")
    kc2 = (1.0 - k) * (1.0 + k)
    sL = math.sin(L)
    ks2 = k * k * sL * sL
    first = 4.5 * x2 * F1(sL, k)
    second = x2 * _E(L, k, kc2) / (kc2 * k)
    third = (k * math.sin(2.0 * L) * (math.sqrt(1.0 + ks2) + math.sqrt(1.0 - ks2))
             / (2.0 * kc2 * math.sqrt(1.0 - ks2 * ks2)))
    return -8.0 * kappa * x2 * (first - second - third)


def velocity_glie_asymptotic(arc: ArcGeometry, x: FieldPoint) -> FrameVelocity:
    """Asymptotic binormal field for small eps and small half-angle.

    Outside eps <= ``GLIE_MAX_EPS`` and L <= ``GLIE_MAX_HALF_ANGLE`` the value
    is still returned, with a :class:`ValidityWarning` in ``validity``.
    """
    p = coefficients(arc, x)
    x2 = p.direction[1]
    warn = None
    if p.epsilon > GLIE_MAX_EPS or arc.L > GLIE_MAX_HALF_ANGLE:
        warn = ValidityWarning(
            f"eps={p.epsilon:.3g}, L={arc.L:.3g} outside eps <= {GLIE_MAX_EPS}, "
            f"L <= {GLIE_MAX_HALF_ANGLE}")
    if x2 == 0.0:
        return FrameVelocity(0.0, 0.0, 0.0, warn)
    vb = glie_binormal(arc.kappa, x2, arc.L, p.k)
    return FrameVelocity(0.0, 0.0, vb * arc.circulation_scale, warn)


def lia_binormal(kappa: float, Lplus: float, Lminus: float, norm: float) -> float:
    """kappa ln(2 sqrt(L+ L-) / |x|)."""
    arg = Lplus * Lminus
    if arg <= 0.0 or norm <= 0.0:
        raise DomainError("LIA needs L+ L- > 0 and |x| > 0")
    return kappa * math.log(2.0 * math.sqrt(arg) / norm)


def velocity_lia(arc: ArcGeometry, x: FieldPoint) -> FrameVelocity:
    """Local induction comparator along the binormal; |x| in units of R."""
    p = coefficients(arc, x)
    vb = lia_binormal(arc.kappa, p.Lplus, p.Lminus, p.epsilon)
    return FrameVelocity(0.0, 0.0, vb * arc.circulation_scale)


def filament_node_velocity(state: FilamentNodeState) -> np.ndarray:
    """Node velocity with mutual friction,

    V_S + V_I + b t x (V_N - V_S - V_I) - b' t x [t x (V_N - V_S - V_I)].
    """
    t = np.asarray(state.unit_tangent, dtype=float)
    if abs(np.linalg.norm(t) - 1.0) > 1e-9:
        raise DomainError("unit_tangent must have unit norm")
    vs = np.asarray(state.V_S, dtype=float)
    vi = np.asarray(state.V_I, dtype=float)
    rel = np.asarray(state.V_N, dtype=float) - vs - vi
    txr = np.cross(t, rel)
    return vs + vi + state.beta_mf * txr - state.beta_mf_prime * np.cross(t, txr)


def _oracle(arc, x, tol=1e-10):
    from .oracle import velocity_components_quadrature

    return velocity_components_quadrature(arc, x, tol)


EVALUATORS = {
    "oracle": _oracle,
    "elliptic": lambda arc, x, tol=None: velocity_elliptic(arc, x),
    "local": lambda arc, x, tol=None: velocity_local(arc, x),
    "glie": lambda arc, x, tol=None: velocity_glie_asymptotic(arc, x),
    "lia": lambda arc, x, tol=None: velocity_lia(arc, x),
}


def evaluate(name: str, arc: ArcGeometry, x: FieldPoint, tol: float = 1e-10) -> FrameVelocity:
    """Dispatch to one of the evaluators in :data:`EVALUATORS`."""
    try:
        fn = EVALUATORS[name]
    except KeyError:
        raise DomainError(f"unknown evaluator {name!r}; choose from {sorted(EVALUATORS)}") from None
    return fn(arc, x, tol)
