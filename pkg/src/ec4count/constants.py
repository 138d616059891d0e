"""Numerical values, with error bars, of the constants in the N1 and N2 asymptotics."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from .quadrature import QuadratureError, quad_adaptive

_EPS = np.finfo(float).eps

__all__ = [
    "Estimate", "ConstantsReport", "QuadratureError", "quad_adaptive",
    "compute_alpha3", "compute_alpha4", "compute_beta", "compute_i_integrals",
    "compute_series", "coprime_series", "assemble_constants", "g_boundary",
]


@dataclass(frozen=True)
class Estimate:
    """A real value with an absolute error bound; arithmetic propagates the bound."""

    value: float
    error: float

    def _round(self, v, e):
        return Estimate(v, e + 4 * _EPS * abs(v))

    def __add__(self, other):
        other = _as_estimate(other)
        return self._round(self.value + other.value, self.error + other.error)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_estimate(other)
        return self._round(self.value - other.value, self.error + other.error)

    def __rsub__(self, other):
        return _as_estimate(other) - self

    def __neg__(self):
        return Estimate(-self.value, self.error)

    def __mul__(self, other):
        other = _as_estimate(other)
        e = abs(self.value) * other.error + abs(other.value) * self.error + self.error * other.error
        return self._round(self.value * other.value, e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_estimate(other)
        if other.error >= abs(other.value):
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / other.value
        e = (self.error + abs(v) * other.error) / (abs(other.value) - other.error)
        return self._round(v, e)

    def __rtruediv__(self, other):
        return _as_estimate(other) / self

    def __str__(self):
        return f"{self.value:.15g} ± {self.error:.1e}"


def _as_estimate(x) -> Estimate:
    if isinstance(x, Estimate):
        return x
    return Estimate(float(x), 2 * _EPS * abs(float(x)))


def _p8_unit(u):
    """p8(u, 1) for floats or arrays."""
    u4 = u**4
    return u4 * u4 + 14 * u4 + 1


ZETA2 = Estimate(math.pi**2 / 6, 4 * _EPS)
ZETA4 = Estimate(math.pi**4 / 90, 4 * _EPS)
ALPHA1 = _as_estimate(
    ((math.sqrt(6) + math.sqrt(3)) / 18) ** (1 / 3) - ((math.sqrt(6) - math.sqrt(3)) / 18) ** (1 / 3)
)
ALPHA2 = _as_estimate(1 / (2 ** (1 / 3) * math.sqrt(3)))


def g_boundary(t: float) -> float:
    """((t^4 + 48)^(1/2) - 7)^(1/4), the lower u-limit in alpha4."""
    return (math.sqrt(t**4 + 48) - 7) ** 0.25


def compute_alpha3(tol: float = 1e-13) -> Estimate:
    return Estimate(*quad_adaptive(lambda u: _p8_unit(u) ** -0.5, 0.0, 1.0, tol))


def compute_alpha4(tol: float = 1e-12) -> Estimate:
    """int_1^2 int_{g(t)}^1 p8(u, 1)^(-1/2) du dt by nested quadrature.

    With t = 1 + s^4 the outer integrand becomes smooth: g(t) behaves like
    (t - 1)^(1/4) near t = 1, and t^4 - 1 = s^4 (4 + 6s^4 + 4s^8 + s^12)
    avoids the cancellation in sqrt(t^4 + 48) - 7.
    """
    inner_tol = tol / 4
    worst = [0.0]

    def lower_limit(s):
        s4 = s**4
        t = 1 + s4
        return s * ((4 + 6 * s4 + 4 * s4 * s4 + s4**3) / (math.sqrt(t**4 + 48) + 7)) ** 0.25

    def outer(s):
        g = lower_limit(s)
        val, err = quad_adaptive(lambda u: _p8_unit(u) ** -0.5, g, 1.0, inner_tol)
        worst[0] = max(worst[0], err)
        return 4 * s**3 * val

    val, err = quad_adaptive(outer, 0.0, 1.0, tol / 2, vectorized=False)
    # the outer weight 4 s^3 integrates to 1, so inner errors add at most `worst`
    return Estimate(val, err + worst[0])


def compute_beta(tol: float = 1e-13) -> Estimate:
    """Area of {0 <= x <= y, p8(x, y) <= 1} by its polar integral.

    p8(1, tan t)^(1/4) cos^2 t equals p8(cos t, sin t)^(1/4), which is
    smooth up to t = pi/2.
    """

    def integrand(t):
        c, s = np.cos(t), np.sin(t)
        c4, s4 = c**4, s**4
        return 0.5 * (c4 * c4 + 14 * c4 * s4 + s4 * s4) ** -0.25

    return Estimate(*quad_adaptive(integrand, math.pi / 4, math.pi / 2, tol))


@dataclass(frozen=True)
class IIntegrals:
    i1: Estimate
    i2: Estimate
    i3: Estimate
    i4: Estimate


def compute_i_integrals(tol: float = 1e-13) -> IIntegrals:
    c = 4 ** (-1 / 3)
    r27 = math.sqrt(27)
    a1, a2 = ALPHA1.value, ALPHA2.value
    i1 = 2 * Estimate(*quad_adaptive(lambda u: np.sqrt(3 * u * u + c), 0.0, a1, tol))
    i2 = 2 * Estimate(*quad_adaptive(lambda u: np.sqrt(2 * u * u + 1 / (r27 * u)), a1, 2 * a2, tol))
    # u = alpha2 + s^2 removes the square-root zero of 3u^2 - 4^(-1/3) at u = alpha2
    i3 = 2 * Estimate(*quad_adaptive(
        lambda s: 2 * s * s * np.sqrt(3 * (2 * a2 + s * s)), 0.0, math.sqrt(a2), tol
    ))
    # the limits alpha1, alpha2 carry rounding error; the integrands there are O(1)
    edge = Estimate(0.0, 8 * (ALPHA1.error + ALPHA2.error))
    i1, i2, i3 = i1 + edge, i2 + edge, i3 + edge
    return IIntegrals(i1, i2, i3, i1 + i2 - i3)


def _tail_sums(w0: int, s: int) -> float:
    """sum_{k >= 0} (w0 + 2k)^(-s)."""
    return float(2.0**-s * hurwitz_zeta(s, w0 / 2))


def _choose_w(tol: float) -> int:
    # the tail half-width is about 1/(8 W^3)
    return max(64, math.ceil((1 / (4 * tol)) ** (1 / 3)))


def compute_series(parity: tuple[int, int], tol: float = 1e-12, alpha3: Estimate | None = None) -> Estimate:
    """sum of p8(v, w)^(-1/2) over 1 <= v < w with (v, w) = parity (mod 2).

    Terms with w <= W are summed directly.  For w > W the inner sum over v
    is a step-2/w Riemann sum of the decreasing f(u) = p8(u, 1)^(-1/2), so
    it lies in [alpha3 w/2 - 1, alpha3 w/2 + 1/2]; the tail is reported as
    the midpoint of the resulting bracket with half its width as error.
    """
    i, j = parity
    if (i, j) not in ((0, 1), (1, 0), (1, 1)):
        raise ValueError(f"bad parity class {parity}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    alpha3 = alpha3 or compute_alpha3()
    W = _choose_w(tol)
    while True:
        w0 = W + 1 if (W + 1) % 2 == j else W + 2
        s3, s4 = _tail_sums(w0, 3), _tail_sums(w0, 4)
        half_width = 0.75 * s4 + 0.5 * s3 * alpha3.error
        if half_width <= tol / 2:
            break
        W = int(W * 1.25) + 1
    partials = []
    for w in range(j if j else 2, W + 1, 2):
        start = 2 if i == 0 else 1
        if start >= w:
            continue
        u = np.arange(start, w, 2, dtype=float) / w
        partials.append(float(np.sum(_p8_unit(u) ** -0.5)) / float(w) ** 4)
    head = math.fsum(partials)
    tail = 0.5 * alpha3.value * s3 - 0.25 * s4
    rounding = 64 * _EPS * head
    return Estimate(head + tail, half_width + rounding)


def coprime_series(parity: tuple[int, int], tol: float = 1e-8) -> Estimate:
    """The same sum restricted to gcd(v, w) = 1, by direct summation.

    Only the crude tail bound sum_{w > W} (w/2 + 1) w^(-4) is used, so this
    is an independent check rather than a production value.
    """
    i, j = parity

    def tail_bound(W):
        # sum_{w > W} (1/(2w^3) + 1/w^4) <= 1/(4W^2) + 1/(3W^3)
        return 1 / (4 * W * W) + 1 / (3 * W**3)

    W = 64
    while tail_bound(W) > tol:
        W *= 2
    partials = []
    for w in range(j if j else 2, W + 1, 2):
        v = np.arange(2 if i == 0 else 1, w, 2)
        v = v[np.gcd(v, w) == 1]
        if v.size:
            partials.append(float(np.sum(_p8_unit(v / w) ** -0.5)) / float(w) ** 4)
    head = math.fsum(partials)
    # the tail lies in [0, bound]; report its midpoint
    bound = tail_bound(W)
    return Estimate(head + bound / 2, bound / 2 + 64 * _EPS * head)


@dataclass(frozen=True)
class ConstantsReport:
    zeta2: Estimate
    zeta4: Estimate
    alpha1: Estimate
    alpha2: Estimate
    alpha3: Estimate
    alpha4: Estimate
    beta: Estimate
    i1: Estimate
    i2: Estimate
    i3: Estimate
    i4: Estimate
    s0_prime: Estimate
    s1_prime: Estimate
    s0: Estimate
    c11: Estimate
    c12: Estimate
    c21: Estimate

    @property
    def beta_identity(self) -> Estimate:
        """2 beta - (alpha3 + alpha4), zero up to its error bound."""
        return 2 * self.beta - (self.alpha3 + self.alpha4)

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self)]

    def as_json(self) -> dict:
        out = {name: {"value": e.value, "error": e.error} for name, e in self.items()}
        ident = self.beta_identity
        out["identity_2beta_minus_alpha3_alpha4"] = {"value": ident.value, "error": ident.error}
        return out


def assemble_constants(tol: float = 1e-12) -> ConstantsReport:
    quad_tol = min(tol, 1e-12) / 10
    alpha3 = compute_alpha3(quad_tol)
    alpha4 = compute_alpha4(min(tol, 1e-10) / 10)
    beta = compute_beta(quad_tol)
    ii = compute_i_integrals(quad_tol)
    s0p = compute_series((0, 1), tol / 2, alpha3) + compute_series((1, 0), tol / 2, alpha3)
    s1p = compute_series((1, 1), tol, alpha3)
    s0 = 16 * s0p / (15 * ZETA4)
    c11 = ii.i4 / ZETA4
    c21 = 16 * (s0p + 4 * s1p) / (_as_estimate(2 ** (1 / 3) * math.sqrt(27) * 5) * ZETA2 * ZETA4)
    c12 = -3 * ALPHA2 / ZETA2 - c21
    return ConstantsReport(
        zeta2=ZETA2, zeta4=ZETA4, alpha1=ALPHA1, alpha2=ALPHA2,
        alpha3=alpha3, alpha4=alpha4, beta=beta,
        i1=ii.i1, i2=ii.i2, i3=ii.i3, i4=ii.i4,
        s0_prime=s0p, s1_prime=s1p, s0=s0,
        c11=c11, c12=c12, c21=c21,
    )
