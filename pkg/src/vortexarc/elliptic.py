"""Incomplete elliptic integrals of the first and second kind.

Both integrals are evaluated through Carlson's symmetric forms R_F and R_D
using the duplication theorem, then extended from |phi| <= pi/2 to
|phi| <= pi by the reflection F(phi) = 2K - F(pi - phi) (and likewise for E).

Internally every routine carries the complementary parameter
``kc2 = 1 - k**2`` alongside ``k``. Callers that know ``kc2`` more accurately
than ``1 - k*k`` (the arc geometry does) use the private ``_F``/``_E``
helpers so the near-singular regime keeps its digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DivergenceError, DomainError, SingularIntegrandError

__all__ = [
    "EllipticArgs",
    "carlson_rf",
    "carlson_rd",
    "ellint_F",
    "ellint_E",
    "ellint_K",
    "ellint_Ek",
    "dF_dk",
    "arc_integral",
]

_EPS = 2.0 ** -53
_RF_TOL = (3.0 * _EPS) ** (-1.0 / 6.0)
_RD_TOL = (0.25 * _EPS) ** (-1.0 / 6.0)
_MAX_DUPLICATIONS = 60
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class EllipticArgs:
    """Amplitude/modulus pair; ``lam`` is the sine of the amplitude."""

    phi: float
    k: float

    def __post_init__(self):
        _check_modulus(self.k)
        if not -math.pi <= self.phi <= math.pi:
            raise DomainError(f"amplitude {self.phi!r} outside [-pi, pi]")

    @classmethod
    def from_lambda(cls, lam: float, k: float) -> "EllipticArgs":
        if not -1.0 <= lam <= 1.0:
            raise DomainError(f"lambda {lam!r} outside [-1, 1]")
        return cls(math.asin(lam), k)

    @property
    def lam(self) -> float:
        return math.sin(self.phi)

    @property
    def divergent(self) -> bool:
        return self.k == 1.0 and abs(self.phi) >= _HALF_PI


def _check_modulus(k):
    if not (0.0 <= k <= 1.0):
        raise DomainError(f"modulus k={k!r} outside [0, 1]")


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral R_F(x, y, z).

    All arguments must be non-negative and at most one may vanish.
    """
    if min(x, y, z) < 0.0:
        raise DomainError("R_F arguments must be non-negative")
    if (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise DivergenceError("R_F with two zero arguments diverges")
    a0 = (x + y + z) / 3.0
    dx0, dy0 = a0 - x, a0 - y
    q = _RF_TOL * max(abs(dx0), abs(dy0), abs(a0 - z))
    a = a0
    scale = 1.0
    for _ in range(_MAX_DUPLICATIONS):
        if q * scale < abs(a):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        a = 0.25 * (a + lam)
        scale *= 0.25
    X = dx0 * scale / a
    Y = dy0 * scale / a
    Z = -(X + Y)
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0
            - 3.0 * e2 * e3 / 44.0) / math.sqrt(a)


def carlson_rd(x: float, y: float, z: float) -> float:
    """Carlson's R_D(x, y, z) = R_J(x, y, z, z); requires z > 0 and x + y > 0."""
    if min(x, y) < 0.0 or z <= 0.0:
        raise DomainError("R_D needs x, y >= 0 and z > 0")
    if x == 0.0 and y == 0.0:
        raise DivergenceError("R_D with x = y = 0 diverges")
    a0 = (x + y + 3.0 * z) / 5.0
    dx0, dy0 = a0 - x, a0 - y
    q = _RD_TOL * max(abs(dx0), abs(dy0), abs(a0 - z))
    a = a0
    scale = 1.0
    tail = 0.0
    for _ in range(_MAX_DUPLICATIONS):
        if q * scale < abs(a):
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sx * sz + sy * sz
        tail += scale / (sz * (z + lam))
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        a = 0.25 * (a + lam)
        scale *= 0.25
    X = dx0 * scale / a
    Y = dy0 * scale / a
    Z = -(X + Y) / 3.0
    xy = X * Y
    zz = Z * Z
    e2 = xy - 6.0 * zz
    e3 = (3.0 * xy - 8.0 * zz) * Z
    e4 = 3.0 * (xy - zz) * zz
    e5 = xy * zz * Z
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return scale * series / (a * math.sqrt(a)) + 3.0 * tail


# --- first-quadrant kernels -------------------------------------------------

def _delta2(s, c, kc2):
    # 1 - k^2 sin^2 = cos^2 + (1 - k^2) sin^2, free of cancellation near k = 1
    return c * c + kc2 * s * s


def _F_quadrant(phi, k, kc2):
    s, c = math.sin(phi), math.cos(phi)
    if kc2 == 0.0:
        return math.atanh(s)
    return s * carlson_rf(c * c, _delta2(s, c, kc2), 1.0)


def _E_quadrant(phi, k, kc2):
    s, c = math.sin(phi), math.cos(phi)
    if kc2 == 0.0 or s == 0.0:
        return s
    c2, d2 = c * c, _delta2(s, c, kc2)
    return s * carlson_rf(c2, d2, 1.0) - k * k * s ** 3 * carlson_rd(c2, d2, 1.0) / 3.0


def _K(k, kc2):
    if kc2 == 0.0:
        raise DivergenceError("K(k) diverges at k = 1")
    return carlson_rf(0.0, kc2, 1.0)


def _Ek(k, kc2):
    if kc2 == 0.0:
        return 1.0
    return carlson_rf(0.0, kc2, 1.0) - k * k * carlson_rd(0.0, kc2, 1.0) / 3.0


def _F(phi, k, kc2):
    sign = math.copysign(1.0, phi)
    a = abs(phi)
    if kc2 == 0.0 and a >= _HALF_PI:
        raise DivergenceError("F(phi, 1) diverges for |phi| >= pi/2")
    if a <= _HALF_PI:
        return sign * _F_quadrant(a, k, kc2)
    return sign * (2.0 * _K(k, kc2) - _F_quadrant(math.pi - a, k, kc2))


def _E(phi, k, kc2):
    sign = math.copysign(1.0, phi)
    a = abs(phi)
    if a <= _HALF_PI:
        return sign * _E_quadrant(a, k, kc2)
    return sign * (2.0 * _Ek(k, kc2) - _E_quadrant(math.pi - a, k, kc2))


def _kc2_of(k):
    return (1.0 - k) * (1.0 + k)


def _check_amplitude(phi):
    if not -math.pi <= phi <= math.pi:
        raise DomainError(f"amplitude {phi!r} outside [-pi, pi]")


# --- public surface ----------------------------------------------------------

def ellint_F(phi, k: float | None = None) -> float:
    """Incomplete elliptic integral of the first kind, int_0^phi dpsi / sqrt(1 - k^2 sin^2 psi).

    Accepts ``phi`` in [-pi, pi] and ``k`` in [0, 1]. At ``k == 1`` the
    closed form atanh(sin phi) is used; ``|phi| >= pi/2`` then diverges.
    """
    if isinstance(phi, EllipticArgs):
        phi, k = phi.phi, phi.k
    _check_modulus(k)
    _check_amplitude(phi)
    return _F(phi, k, _kc2_of(k))


def ellint_E(phi, k: float | None = None) -> float:
    """Incomplete elliptic integral of the second kind, int_0^phi sqrt(1 - k^2 sin^2 psi) dpsi."""
    if isinstance(phi, EllipticArgs):
        phi, k = phi.phi, phi.k
    _check_modulus(k)
    _check_amplitude(phi)
    return _E(phi, k, _kc2_of(k))


def ellint_K(k: float) -> float:
    """Complete integral of the first kind K(k) = F(pi/2, k)."""
    _check_modulus(k)
    return _K(k, _kc2_of(k))


def ellint_Ek(k: float) -> float:
    """Complete integral of the second kind E(k) = E(pi/2, k)."""
    _check_modulus(k)
    return _Ek(k, _kc2_of(k))


def _J_quadrant(phi, kc2):
    # int_0^phi sin^2 / Delta^3 = sin^3 R_D(cos^2, 1, Delta^2) / 3
    s, c = math.sin(phi), math.cos(phi)
    if s == 0.0:
        return 0.0
    return s ** 3 * carlson_rd(c * c, 1.0, _delta2(s, c, kc2)) / 3.0


def _J(phi, kc2):
    """int_0^phi sin^2(psi) / (1 - k^2 sin^2 psi)^(3/2) dpsi for |phi| <= pi."""
    if kc2 <= 0.0:
        raise DivergenceError("derivative integral diverges at k = 1")
    sign = math.copysign(1.0, phi)
    a = abs(phi)
    if a <= _HALF_PI:
        return sign * _J_quadrant(a, kc2)
    full = carlson_rd(0.0, 1.0, kc2) / 3.0
    return sign * (2.0 * full - _J_quadrant(math.pi - a, kc2))


def dF_dk(phi: float, k: float) -> float:
    """Partial derivative of F(phi, k) with respect to the modulus, 0 <= k < 1.

    Uses dF/dk = k int_0^phi sin^2 / Delta^3, which avoids the 1/(1-k^2)
    cancellation of the textbook form
    [E - (1-k^2) F] / (k (1-k^2)) - k sin cos / ((1-k^2) Delta).
    """
    _check_amplitude(phi)
    if not 0.0 <= k < 1.0:
        raise DomainError(f"dF/dk needs 0 <= k < 1, got {k!r}")
    return k * _J(phi, _kc2_of(k))


def arc_integral(p) -> float:
    """Integral of 1/sqrt(c1 + c2 cos t + c3 sin t) over t in [-L, L].

    ``p`` is an :class:`~vortexarc.geometry.EllipticParams`; the value is
    2 [F(L+, k) - F(L-, k)] / sqrt(c1 + r).
    """
    s = p.c1 + p.r
    if s <= 0.0:
        raise SingularIntegrandError("c1 + r must be positive")
    if p.denominator_min <= 0.0:
        raise SingularIntegrandError(
            "integrand denominator vanishes on the arc (point on the filament)")
    if p.half_angle == 0.0:
        return 0.0
    if p.kc2 <= 0.0:
        raise SingularIntegrandError("modulus k = 1 with the point off the arc is not supported")
    diff = _F(p.Lplus, p.k, p.kc2) - _F(p.Lminus, p.k, p.kc2)
    return 2.0 * diff / math.sqrt(s)
