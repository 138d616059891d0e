"""Short Weierstrass curves y^2 = x^3 + Ax + B with a rational 4-isogeny.

A curve has a pair of Galois-stable cyclic subgroups of order 4 exactly
when some integer root b0 of x^3 + Ax + B makes 3*b0^2 + A a non-zero
square a^2; translating x -> x + b0 then gives the model
y^2 = x(x^2 + 3*b0*x + a^2).  Curves with two such pairs are
parametrised by triples (r, v, w), see :func:`param_AB`.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arithmetic import (
    integer_nth_root,
    is_perfect_square,
    is_squarefree,
    squarefree_kernel,
)


def p8(v: int, w: int) -> int:
    v4, w4 = v**4, w**4
    return v4 * v4 + 14 * v4 * w4 + w4 * w4


def p12(v: int, w: int) -> int:
    v4, w4 = v**4, w**4
    return v4**3 - 33 * v4 * v4 * w4 - 33 * v4 * w4 * w4 + w4**3


@dataclass(frozen=True)
class MinimalCurve:
    A: int
    B: int

    @property
    def discriminant_term(self) -> int:
        """4A^3 + 27B^2; zero exactly for singular cubics."""
        return 4 * self.A**3 + 27 * self.B**2

    @property
    def is_singular(self) -> bool:
        return self.discriminant_term == 0

    @property
    def is_minimal(self) -> bool:
        return is_minimal_model(self.A, self.B)


def height(c: MinimalCurve) -> int:
    return max(4 * abs(c.A) ** 3, 27 * c.B**2)


def is_minimal_model(A: int, B: int) -> bool:
    """True when no prime l has l^4 | A and l^6 | B."""
    return non_minimal_prime(A, B) is None


def non_minimal_prime(A: int, B: int) -> Optional[int]:
    if A == 0 and B == 0:
        return 2
    # an offending l has l^4 | gcd(A, B), and l^6 | B when A == 0
    g = math.gcd(A, B)
    bound = integer_nth_root(g, 6 if A == 0 else 4)
    l = 2
    while l <= bound:
        if g % l == 0 and A % l**4 == 0 and B % l**6 == 0:
            return l
        l += 1 if l == 2 else 2
    return None


def integer_roots_cubic(A: int, B: int) -> list[int]:
    """All integer roots of x^3 + Ax + B in ascending order."""

    def f(x):
        return x * (x * x + A) + B

    # |x|^3 <= |A||x| + |B| forces |x| <= 2 max(sqrt|A|, cbrt|B|)
    m = 2 * max(math.isqrt(abs(A)), integer_nth_root(abs(B), 3)) + 2
    if A >= 0:
        pieces = [(-m, m, 1)]
    else:
        k = math.isqrt(-A // 3)
        # f rises on x <= -k-1, falls on [-k, k], rises on x >= k+1
        pieces = [(-m, -k - 1, 1), (-k, k, -1), (k + 1, m, 1)]
    roots = set()
    for lo, hi, direction in pieces:
        if lo > hi:
            continue
        x = _last_at_most_zero(f, lo, hi, direction)
        if x is not None and f(x) == 0:
            roots.add(x)
    return sorted(roots)


def _last_at_most_zero(f, lo, hi, direction):
    """Boundary point of {f <= 0} on a monotone integer range.

    For a rising piece returns the largest x with f(x) <= 0, for a falling
    piece the smallest such x; None when the set is empty.
    """
    if direction > 0:
        if f(lo) > 0:
            return None
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if f(mid) <= 0:
                lo = mid
            else:
                hi = mid - 1
        return lo
    if f(hi) > 0:
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if f(mid) <= 0:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class Witness:
    """A root b0 with 3*b0^2 + A = a^2, giving the model x^3 + gamma x^2 + delta^2 x."""

    b0: int
    a: int

    @property
    def gamma(self) -> int:
        return 3 * self.b0

    @property
    def delta(self) -> int:
        return self.a


@dataclass(frozen=True)
class PairClassification:
    witnesses: tuple[Witness, ...] = field(default_factory=tuple)

    @property
    def count(self) -> int:
        return len(self.witnesses)


def classify_pairs(c: MinimalCurve) -> PairClassification:
    if c.is_singular:
        raise ValueError(f"singular curve: 4A^3 + 27B^2 = 0 for {(c.A, c.B)}")
    found = []
    for b0 in integer_roots_cubic(c.A, c.B):
        a = is_perfect_square(3 * b0 * b0 + c.A)
        if a:
            found.append(Witness(b0=b0, a=a))
    return PairClassification(witnesses=tuple(found))


CASE_TAGS = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class TwoPairTriple:
    r: int
    v: int
    w: int

    def __post_init__(self):
        if self.r < 1 or not is_squarefree(self.r):
            raise ValueError(f"r={self.r} is not a positive squarefree integer")
        if not 1 <= self.v < self.w:
            raise ValueError(f"need 1 <= v < w, got v={self.v}, w={self.w}")
        if math.gcd(self.v, self.w) != 1:
            raise ValueError(f"v={self.v} and w={self.w} are not coprime")

    @property
    def case_tag(self) -> str:
        both_odd = (self.v & 1) and (self.w & 1)
        three = self.r % 3 == 0
        return CASE_TAGS[2 * bool(both_odd) + three]


def param_AB(t: TwoPairTriple) -> MinimalCurve:
    """The minimal model of the two-pair curve with parameter t.

    Start from A = -27 r^2 p8, B = 54 r^3 p12 and strip 3^4, 3^6 when
    3 | r and 2^4, 2^6 when v, w are both odd.
    """
    A = -27 * t.r**2 * p8(t.v, t.w)
    B = 54 * t.r**3 * p12(t.v, t.w)
    den_a, den_b = 1, 1
    if t.r % 3 == 0:
        den_a, den_b = 81, 729
    if t.v & 1 and t.w & 1:
        den_a, den_b = den_a * 16, den_b * 64
    qa, ra = divmod(A, den_a)
    qb, rb = divmod(B, den_b)
    if ra or rb:
        raise ArithmeticError(f"inexact division for triple {t}")
    return MinimalCurve(qa, qb)


def legendre_two_pair_model(t: TwoPairTriple) -> tuple[Fraction, Fraction, Fraction]:
    """Roots 0, r, r*((1 - tau^2)/(1 + tau^2))^2 of the Legendre-type model, tau = v/w."""
    tau = Fraction(t.v, t.w)
    eta = (1 - tau * tau) / (1 + tau * tau)
    return Fraction(0), Fraction(t.r), t.r * eta * eta


def recover_triple(c: MinimalCurve) -> Optional[TwoPairTriple]:
    """Invert :func:`param_AB`; None unless the curve has two pairs."""
    if c.is_singular or classify_pairs(c).count != 2:
        return None
    roots = integer_roots_cubic(c.A, c.B)
    if len(roots) != 3:
        return None
    found = []
    for e0, er, e3 in itertools.permutations(roots):
        span = er - e0
        if span <= 0:
            continue
        eta2 = Fraction(e3 - e0, span)
        if not 0 < eta2 < 1:
            continue
        p = is_perfect_square(eta2.numerator)
        q = is_perfect_square(eta2.denominator)
        if p is None or q is None:
            continue
        # eta = p/q = (1 - tau^2)/(1 + tau^2)  =>  tau^2 = (q - p)/(q + p)
        tau2 = Fraction(q - p, q + p)
        v = is_perfect_square(tau2.numerator)
        w = is_perfect_square(tau2.denominator)
        if v is None or w is None or not 0 < v < w:
            continue
        t = TwoPairTriple(squarefree_kernel(span), v, w)
        if param_AB(t) == c:
            found.append(t)
    if len(found) != 1:
        return None
    return found[0]


def four_torsion_points(rho1: complex, rho2: complex, rho3: complex) -> list[tuple[complex, complex]]:
    """The four points P with 2P = (rho1, 0) on y^2 = (x-rho1)(x-rho2)(x-rho3)."""
    if len({rho1, rho2, rho3}) != 3:
        raise ValueError("roots must be pairwise distinct")
    s2 = cmath.sqrt(rho1 - rho2)
    s3 = cmath.sqrt(rho1 - rho3)
    s = s2 * s3
    points = []
    for e1 in (1, -1):
        for e2 in (1, -1):
            points.append((rho1 + e1 * s, e2 * s * (s2 + e1 * s3)))
    return points
