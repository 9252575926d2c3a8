"""Asymptotic representation of F(lambda, k) near the logarithmic singularity.

For (lambda, k) in the unit square and N >= 1,

    F = 1/2 ln((1+lam)/(1-lam)) * sum_{j=0}^{N} [(1/2)_j / j!]^2 (1-k^2)^j
        + 1/(2 lam) * sum_{n=0}^{N-1} (-(1-lam^2)/lam^2)^n s_n(x)  + R_N,

with x = (1-k^2) lam^2 / (1-lam^2). The remainder R_N is negative and is
bracketed by two explicit bound functions (see :func:`remainder_bounds`).

The coefficient functions s_n come from closed forms for n <= 2 and a
three-term recurrence with a forcing term beyond that. For small x both the
closed forms and the recurrence cancel catastrophically (s_n(x) = O(x^(n+1))),
so there the functions are summed from exact rational Taylor coefficients
generated once at import from the very same closed forms and recurrence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "SeriesEval",
    "N_MAX",
    "s_n",
    "s_n_taylor",
    "s_n_recurrence",
    "series_F",
    "remainder_bounds",
    "f_N",
    "F1",
    "F1_LIMIT_AT_ZERO",
]

N_MAX = 12
# below this x the closed forms lose more than ~4 digits to cancellation
TAYLOR_SWITCH = 0.5
_TAYLOR_TERMS = 80
_SMALL_LAMBDA = 1e-8
# F1(lam, k) -> 0 as lam -> 0 for every k: all three terms vanish linearly
F1_LIMIT_AT_ZERO = 0.0


@dataclass(frozen=True)
class SeriesEval:
    """Truncated series value with its two-sided remainder bracket."""

    value: float
    N: int
    remainder_lo: float
    remainder_hi: float

    @property
    def bracket(self) -> tuple[float, float]:
        return (self.value + self.remainder_lo, self.value + self.remainder_hi)

    @property
    def width(self) -> float:
        return self.remainder_hi - self.remainder_lo

    def contains(self, F: float, slack: float = 0.0) -> bool:
        lo, hi = self.bracket
        return lo - slack <= F <= hi + slack


# --- recurrence coefficients -------------------------------------------------

def _pochhammer(a, n):
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def _recurrence_coeffs(n):
    """Polynomials in x (coefficient lists, ascending) for a_n, b_n, c_n, h_n."""
    a = [Fraction(8 * n * n + 36 * n + 42), Fraction(-(2 * n + 5) ** 2)]
    b = [Fraction(-(2 * n + 3) ** 2), Fraction(2 * (4 * n * n + 14 * n + 13))]
    c = [Fraction(0), Fraction(-4 * (n + 1) ** 2)]
    scale = (_pochhammer(Fraction(3, 2), n) ** 2
             / (8 * (n + 3) * math.factorial(n + 2) ** 2))
    sign = (-1) ** (n + 2)
    # h_n = scale * [x (2n+5)(2n+3)^2 + (n+3)(8n^2+24n+17)] * (-x)^(n+2)
    h = [Fraction(0)] * (n + 4)
    h[n + 2] = sign * scale * (n + 3) * (8 * n * n + 24 * n + 17)
    h[n + 3] = sign * scale * (2 * n + 5) * (2 * n + 3) ** 2
    return a, b, c, h


def _poly_eval(coeffs, x):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _float_coeffs(n):
    return tuple(tuple(float(c) for c in poly) for poly in _recurrence_coeffs(n))


# --- closed forms plus recurrence --------------------------------------------

def _closed_forms(x):
    q = math.sqrt(1.0 + x)
    lg = math.log1p(0.5 * x / (1.0 + q))  # ln((1 + q)/2), since (q-1)/2 = x/(2(1+q))
    s0 = -2.0 * lg
    s1 = (0.5 * x - 1.0) * lg - 0.5 * q + 0.5 + 0.5 * x
    s2 = ((-9.0 / 32.0 * x * x + 0.25 * x - 0.75) * lg
          + (9.0 / 32.0 * x - 7.0 / 16.0) * q + 7.0 / 16.0 + x / 8.0
          - 21.0 / 64.0 * x * x)
    return [s0, s1, s2]


def s_n_recurrence(x: float, n: int) -> float:
    """s_n(x) from the closed forms for n <= 2 and forward recurrence above."""
    s = _closed_forms(x)
    for m in range(0, n - 2):
        a, b, c, h = (_poly_eval(p, x) for p in _float_coeffs(m))
        s.append((a * s[m + 2] + b * s[m + 1] + c * s[m] + h) / (4.0 * (m + 3) ** 2))
    return s[n]


# --- exact Taylor coefficients -------------------------------------------------

def _mul(p, q, M):
    out = [Fraction(0)] * M
    for i, pi in enumerate(p[:M]):
        if pi:
            for j, qj in enumerate(q[: M - i]):
                out[i + j] += pi * qj
    return out


def _add(*ps, M):
    out = [Fraction(0)] * M
    for p in ps:
        for i, c in enumerate(p[:M]):
            out[i] += c
    return out


def _log1p_series(w, M):
    # w[0] == 0; l' = w' / (1 + w)
    dw = [i * w[i] for i in range(1, M)] + [Fraction(0)]
    one_plus_w = [Fraction(1)] + list(w[1:M])
    inv = [Fraction(0)] * M
    inv[0] = Fraction(1)
    for i in range(1, M):
        inv[i] = -sum(one_plus_w[j] * inv[i - j] for j in range(1, i + 1))
    d = _mul(dw, inv, M)
    return [Fraction(0)] + [d[i - 1] / i for i in range(1, M)]


@lru_cache(maxsize=None)
def _taylor_table(n_max=N_MAX + 1, M=_TAYLOR_TERMS):
    sqrt1px = [Fraction(1)]
    for j in range(1, M):
        sqrt1px.append(sqrt1px[-1] * (Fraction(1, 2) - (j - 1)) / j)
    w = [Fraction(0)] + [c / 2 for c in sqrt1px[1:]]
    lg = _log1p_series(w, M)
    F = Fraction
    s0 = [-2 * c for c in lg]
    s1 = _add(_mul([F(-1), F(1, 2)], lg, M), [-c / 2 for c in sqrt1px],
              [F(1, 2), F(1, 2)], M=M)
    s2 = _add(_mul([F(-3, 4), F(1, 4), F(-9, 32)], lg, M),
              _mul([F(-7, 16), F(9, 32)], sqrt1px, M),
              [F(7, 16), F(1, 8), F(-21, 64)], M=M)
    s = [s0, s1, s2]
    for m in range(0, n_max - 2):
        a, b, c, h = _recurrence_coeffs(m)
        num = _add(_mul(a, s[m + 2], M), _mul(b, s[m + 1], M), _mul(c, s[m], M), h, M=M)
        d = 4 * (m + 3) ** 2
        s.append([t / d for t in num])
    return tuple(tuple(float(c) for c in row) for row in s)


def s_n_taylor(x: float, n: int) -> float:
    """s_n(x) summed from its Taylor series about x = 0 (valid for |x| < 1)."""
    table = _taylor_table()
    if n >= len(table):
        raise DomainError(f"Taylor table holds s_0..s_{len(table) - 1}")
    return _poly_eval(table[n], x)


def s_n(x: float, n: int) -> float:
    """Coefficient function s_n(x) for x >= 0."""
    if x < 0.0:
        raise DomainError(f"s_n needs x >= 0, got {x!r}")
    if n < 0:
        raise DomainError("n must be non-negative")
    if x <= TAYLOR_SWITCH and n <= N_MAX:
        return s_n_taylor(x, n)
    return s_n_recurrence(x, n)


# --- the series and its remainder ----------------------------------------------

def _check_square(lam, k, N):
    if not (0.0 <= lam < 1.0):
        raise DomainError(f"lambda {lam!r} outside [0, 1)")
    if not (0.0 < k <= 1.0):
        raise DomainError(f"k {k!r} outside (0, 1]")
    if not (1 <= N <= N_MAX):
        raise DomainError(f"N must be in 1..{N_MAX}, got {N!r}")


def _log_ratio(lam):
    return 2.0 * math.atanh(lam)  # ln((1+lam)/(1-lam))


def _series_value(lam, kc2, N):
    log_part = 0.0
    term = 1.0
    for j in range(N + 1):
        if j:
            term *= ((j - 0.5) / j) ** 2 * kc2
        log_part += term
    value = 0.5 * _log_ratio(lam) * log_part
    if kc2 == 0.0:
        return value
    y = (1.0 - lam) * (1.0 + lam) / (lam * lam)
    x = kc2 / y
    acc = 0.0
    for n in range(N):
        acc += (-y) ** n * s_n(x, n)
    return value + acc / (2.0 * lam)


def f_N(lam: float, k: float, N: int) -> float:
    """Positive bound function f_N(lambda, k), evaluated at alpha = (N+1/2)^2/(N+1)^2."""
    if not (0.0 < lam < 1.0 and 0.0 < k < 1.0):
        raise DomainError("f_N needs lambda and k strictly inside (0, 1)")
    kc2 = (1.0 - k) * (1.0 + k)
    alpha = (N + 0.5) ** 2 / (N + 1.0) ** 2
    q = math.sqrt(1.0 + (1.0 - lam) * (1.0 + lam) / (alpha * lam * lam * kc2))
    # ln((q+1)/(q-1)) = 2 atanh(1/q)
    first = 2.0 * math.atanh(1.0 / q) / (alpha * lam * q)
    return (first - kc2 * _log_ratio(lam)) / (1.0 - alpha * kc2)


def _prefactor(kc2, N):
    half_poch = float(_pochhammer(Fraction(1, 2), N + 1))
    return half_poch ** 2 * kc2 ** N / (2.0 * math.factorial(N + 1) ** 2)


def remainder_bounds(lam: float, k: float, N: int) -> tuple[float, float]:
    """Bounds ``lo <= R_N <= hi <= 0`` on the truncation remainder."""
    if not (0.0 < lam < 1.0 and 0.0 < k < 1.0):
        raise DomainError("remainder bounds need lambda and k strictly inside (0, 1)")
    if N < 1:
        raise DomainError("N must be >= 1")
    pre = _prefactor((1.0 - k) * (1.0 + k), N)
    return -pre * f_N(lam, k, N), -pre * f_N(lam, k, N + 1)


def series_F(lam: float, k: float, N: int) -> SeriesEval:
    """Truncated asymptotic series for F(arcsin lam, k) with its remainder bracket."""
    _check_square(lam, k, N)
    if lam < _SMALL_LAMBDA:
        # F(lam, k) = lam + O(lam^3); the truncated series has the same limit
        return SeriesEval(lam if lam else 0.0, N, 0.0, 0.0)
    kc2 = (1.0 - k) * (1.0 + k)
    value = _series_value(lam, kc2, N)
    if kc2 == 0.0:
        return SeriesEval(value, N, 0.0, 0.0)
    lo, hi = remainder_bounds(lam, k, N)
    return SeriesEval(value, N, lo, hi)


def F1(lam: float, k: float) -> float:
    """First-order form of the series (N = 1).

    ln sqrt((1+lam)/(1-lam)) + ln(2 / (1 + sqrt((1-k^2 lam^2)/(1-lam^2)))) / lam
    + (1-k^2)/8 ln((1+lam)/(1-lam)).
    """
    if not (0.0 <= lam < 1.0):
        raise DomainError(f"lambda {lam!r} outside [0, 1)")
    if not (0.0 <= k <= 1.0):
        raise DomainError(f"k {k!r} outside [0, 1]")
    if lam < _SMALL_LAMBDA:
        return F1_LIMIT_AT_ZERO
    kc2 = (1.0 - k) * (1.0 + k)
    x = kc2 * lam * lam / ((1.0 - lam) * (1.0 + lam))
    middle = -math.log1p(0.5 * x / (1.0 + math.sqrt(1.0 + x))) / lam
    return math.atanh(lam) + middle + kc2 / 8.0 * _log_ratio(lam)
