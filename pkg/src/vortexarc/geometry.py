"""Arc geometry, field points and the coefficients of the arc denominator.

The filament is the circular arc

    xi(theta) = R (sin theta, 1 - cos theta, 0),   theta in (-L, L],

which passes through the origin with unit tangent +x, principal normal +y
(towards the centre of curvature at (0, R, 0)) and binormal +z. Velocities
are therefore reported in that frame with the identity map onto Cartesian
axes.

For a field point x = |x| (x1, x2, x3) the squared distance to the filament is
R^2 D(theta) with D = c1 + c2 cos theta + c3 sin theta, where (in units of R,
eps = |x|/R)

    c1 = eps^2 + 2 - 2 eps x2,   c2 = 2 eps x2 - 2,   c3 = -2 eps x1.

Note that eps*x_i is just the Cartesian coordinate in units of R, so the
mixed "x~2" and "|x| x2" notations describe the same quantity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import CoreProximityError, DomainError

__all__ = [
    "ArcGeometry",
    "FieldPoint",
    "EllipticParams",
    "FrameVelocity",
    "DEFAULT_CORE_CUTOFF",
    "coefficients",
]

# relative to R
DEFAULT_CORE_CUTOFF = 1e-6


@dataclass(frozen=True)
class ArcGeometry:
    """Circular vortex arc of radius ``R`` spanning angles (-L, L].

    ``circulation_scale`` multiplies every velocity. The default 1 means the
    Gamma/(4 pi) prefactor of the Biot-Savart law is absorbed; use
    :meth:`with_circulation` to restore physical units.
    """

    R: float = 1.0
    L: float = math.pi
    circulation_scale: float = 1.0
    core_cutoff: float = DEFAULT_CORE_CUTOFF

    def __post_init__(self):
        if not self.R > 0.0:
            raise DomainError(f"radius must be positive, got {self.R!r}")
        if not 0.0 <= self.L <= math.pi:
            raise DomainError(f"half-angle must lie in [0, pi], got {self.L!r}")
        if self.core_cutoff < 0.0:
            raise DomainError("core cutoff must be non-negative")

    @property
    def kappa(self) -> float:
        return 1.0 / self.R

    @classmethod
    def from_curvature(cls, kappa: float, L: float, **kw) -> "ArcGeometry":
        return cls(1.0 / kappa, L, **kw)

    def with_circulation(self, gamma: float) -> "ArcGeometry":
        """Copy with ``circulation_scale = gamma / (4 pi)``."""
        return replace(self, circulation_scale=gamma / (4.0 * math.pi))

    def point(self, theta):
        """Filament position xi(theta)."""
        return self.R * np.array([math.sin(theta), 1.0 - math.cos(theta), 0.0])


@dataclass(frozen=True)
class FieldPoint:
    """Field point with its spherical decomposition.

    ``gamma1`` is the azimuth in the x-y plane measured from +x and
    ``gamma2`` the polar angle from +z, so that x2 = sin(gamma1) sin(gamma2).
    """

    cartesian: tuple
    norm: float
    direction: tuple
    gamma1: float
    gamma2: float
    epsilon: float | None = None

    @classmethod
    def from_cartesian(cls, xyz) -> "FieldPoint":
        x = tuple(float(c) for c in xyz)
        if len(x) != 3:
            raise DomainError("field point needs three coordinates")
        n = math.sqrt(x[0] ** 2 + x[1] ** 2 + x[2] ** 2)
        if n == 0.0:
            # direction is arbitrary at the origin; +y keeps x2 well defined
            return cls(x, 0.0, (0.0, 1.0, 0.0), 0.5 * math.pi, 0.5 * math.pi)
        d = (x[0] / n, x[1] / n, x[2] / n)
        g1 = math.atan2(d[1], d[0])
        g2 = math.acos(max(-1.0, min(1.0, d[2])))
        return cls(x, n, d, g1, g2)

    @classmethod
    def from_spherical(cls, norm: float, gamma1: float, gamma2: float) -> "FieldPoint":
        if norm < 0.0:
            raise DomainError("norm must be non-negative")
        s2 = math.sin(gamma2)
        d = (math.cos(gamma1) * s2, math.sin(gamma1) * s2, math.cos(gamma2))
        return cls(tuple(norm * c for c in d), float(norm), d, gamma1, gamma2)

    @classmethod
    def from_eps(cls, arc: ArcGeometry, eps: float, direction) -> "FieldPoint":
        d = np.asarray(direction, dtype=float)
        d = d / np.linalg.norm(d)
        return cls.from_cartesian(eps * arc.R * d).paired(arc)

    def paired(self, arc: ArcGeometry) -> "FieldPoint":
        return replace(self, epsilon=self.norm / arc.R)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.cartesian)


@dataclass(frozen=True)
class EllipticParams:
    """Derived scalars of one (arc, field point) pair.

    ``kc2`` is 1 - k^2 computed without cancellation, and ``denominator_min``
    is the minimum of D over the arc (R^2 times the squared distance).
    """

    c1: float
    c2: float
    c3: float
    r: float
    phi: float
    k: float
    kc2: float
    Lplus: float
    Lminus: float
    epsilon: float
    half_angle: float
    direction: tuple
    kappa: float
    denominator_min: float
    theta_closest: float | None = None
    lambda_plus: float = field(init=False)
    lambda_minus: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lambda_plus", math.sin(self.Lplus))
        object.__setattr__(self, "lambda_minus", math.sin(self.Lminus))

    @property
    def s(self) -> float:
        return self.c1 + self.r

    def D(self, theta):
        return self.c1 + self.c2 * np.cos(theta) + self.c3 * np.sin(theta)


@dataclass(frozen=True)
class FrameVelocity:
    """Velocity in the tangent/normal/binormal frame (identical to x, y, z).

    ``validity`` carries a :class:`~vortexarc.errors.ValidityWarning` when an
    asymptotic evaluator was used outside its calibrated region.
    """

    tangent: float
    normal: float
    binormal: float
    validity: Warning | None = None

    @classmethod
    def from_vector(cls, v, validity=None) -> "FrameVelocity":
        return cls(float(v[0]), float(v[1]), float(v[2]), validity)

    @property
    def cartesian(self) -> np.ndarray:
        return np.array([self.tangent, self.normal, self.binormal])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.cartesian))

    def scaled(self, c: float) -> "FrameVelocity":
        return FrameVelocity(c * self.tangent, c * self.normal, c * self.binormal, self.validity)


def _wrap(theta):
    return math.remainder(theta, 2.0 * math.pi)


def coefficients(arc: ArcGeometry, x: FieldPoint, check_core: bool = True) -> EllipticParams:
    """Coefficients c1, c2, c3 and the elliptic reduction data for ``x``.

    Raises :class:`CoreProximityError` when the point is within
    ``arc.core_cutoff * R`` of the filament, unless ``check_core`` is false.
    """
    X1, X2, X3 = (c / arc.R for c in x.cartesian)
    eps = x.norm / arc.R
    x1, x2, x3 = x.direction
    c1 = eps * eps + 2.0 - 2.0 * X2
    c2 = 2.0 * X2 - 2.0
    c3 = -2.0 * X1
    r = math.hypot(c2, c3)
    phi = math.atan2(c3, c2)
    s = c1 + r
    # c1^2 - r^2 as a sum of squares: vanishes only on the full circle
    gap = (eps * eps - 2.0 * X2) ** 2 + 4.0 * X3 * X3
    kc2 = gap / (s * s) if s > 0.0 else 0.0
    k = math.sqrt(2.0 * r / s) if s > 0.0 else 1.0
    k = min(k, 1.0)
    L = arc.L
    theta_star = _wrap(phi + math.pi)
    if abs(theta_star) <= L:
        dmin = gap / s if s > 0.0 else 0.0
        closest = theta_star
    else:
        d_plus = c1 + c2 * math.cos(L) + c3 * math.sin(L)
        d_minus = c1 + c2 * math.cos(L) - c3 * math.sin(L)
        dmin = min(d_plus, d_minus)
        closest = L if d_plus <= d_minus else -L
    p = EllipticParams(
        c1=c1, c2=c2, c3=c3, r=r, phi=phi, k=k, kc2=kc2,
        Lplus=0.5 * (phi + L), Lminus=0.5 * (phi - L),
        epsilon=eps, half_angle=L, direction=(x1, x2, x3), kappa=arc.kappa,
        denominator_min=max(dmin, 0.0), theta_closest=closest,
    )
    if check_core and arc.R * math.sqrt(p.denominator_min) <= arc.core_cutoff * arc.R:
        raise CoreProximityError(
            f"field point {x.cartesian} is within the core cutoff of the filament")
    return p
