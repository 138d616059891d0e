"""Exact integer primitives: sieves, squarefree counting, integer roots."""

from __future__ import annotations

import math
import operator
import threading
from dataclasses import dataclass
from typing import Optional

import numpy as np

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class SieveTables:
    """Mobius values and smallest prime factors for 1 <= n <= limit.

    Both arrays are indexed directly by n (slot 0 is unused) and are
    read-only, so one instance can be shared between threads.
    """

    limit: int
    mobius: np.ndarray
    spf: np.ndarray

    def mu(self, n: int) -> int:
        return int(self.mobius[n])

    def factor(self, n: int) -> list[tuple[int, int]]:
        """Prime factorisation of 1 <= n <= limit as (p, e) pairs, p ascending."""
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range 1..{self.limit}")
        out = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out


def build_sieves(limit: int) -> SieveTables:
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.arange(limit + 1, dtype=np.int64)
    unset = spf == 0
    spf[unset] = idx[unset]
    spf[:2] = 0

    mobius = np.ones(limit + 1, dtype=np.int8)
    mobius[0] = 0
    primes = np.flatnonzero(spf == idx)
    for p in primes[primes >= 2]:
        p = int(p)
        mobius[p::p] *= -1
        if p * p <= limit:
            mobius[p * p :: p * p] = 0
    spf.setflags(write=False)
    mobius.setflags(write=False)
    return SieveTables(limit=limit, mobius=mobius, spf=spf)


_cache_lock = threading.Lock()
_cached: Optional[SieveTables] = None


def sieve_upto(limit: int) -> SieveTables:
    """Shared tables covering at least ``limit``; grown geometrically on demand."""
    global _cached
    tables = _cached
    if tables is not None and tables.limit >= limit:
        return tables
    with _cache_lock:
        if _cached is None or _cached.limit < limit:
            size = max(limit, 2 * (_cached.limit if _cached else 0), 1 << 12)
            _cached = build_sieves(size)
        return _cached


def integer_nth_root(x: int, n: int) -> int:
    """floor(x ** (1/n)) for integer x >= 0, exact for arbitrary size."""
    if n < 1:
        raise ValueError("root index must be >= 1")
    if x < 0:
        raise ValueError("x must be non-negative")
    if n == 1 or x < 2:
        return x
    if n == 2:
        return math.isqrt(x)
    # bracket from a float seed when x is in float range, else from bit length
    lo, hi = 0, 1 << (x.bit_length() // n + 1)
    if x.bit_length() < 1000:
        g = int(float(x) ** (1.0 / n))
        a, b = max(g - 2, 0), g + 2
        if a**n <= x < b**n:
            lo, hi = a, b
    # invariant: lo**n <= x < hi**n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid
    return lo


def is_perfect_square(x: int) -> Optional[int]:
    if x < 0:
        return None
    r = math.isqrt(x)
    return r if r * r == x else None


def squarefree_count(x: int) -> int:
    """Q(x) = #{1 <= n <= x : n squarefree} via sum_{d^2 <= x} mu(d) floor(x/d^2)."""
    if x < 1:
        return 0
    s = math.isqrt(x)
    tables = sieve_upto(s)
    mu = tables.mobius[1 : s + 1]
    if x <= _INT64_MAX:
        d = np.arange(1, s + 1, dtype=np.int64)
        return int(np.dot(mu.astype(np.int64), x // (d * d)))
    nz = np.flatnonzero(mu) + 1
    return sum(int(tables.mobius[d]) * (x // (int(d) * int(d))) for d in nz)


def squarefree_count_div3(x: int) -> int:
    """#{n <= x : n squarefree, 3 | n} = sum_{j>=1} (-1)^(j-1) Q(x / 3^j)."""
    total, sign = 0, 1
    x //= 3
    while x > 0:
        total += sign * squarefree_count(x)
        sign = -sign
        x //= 3
    return total


def is_squarefree(n: int) -> bool:
    return squarefree_kernel(n) == abs(n) if n else False


def squarefree_kernel(n: int) -> int:
    """The squarefree s > 0 with |n| = s * m^2.

    Trial division runs only to |n|^(1/3); what remains has at most two
    prime factors above that bound, so it is either a square or squarefree.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no squarefree kernel")
    kernel = 1
    cut = integer_nth_root(n, 3)
    p = 2
    while p <= cut and n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e & 1:
            kernel *= p
        p += 1 if p == 2 else 2
    if n > 1 and is_perfect_square(n) is None:
        kernel *= n
    return kernel


@dataclass(frozen=True)
class HeightBound:
    """An exact height bound X with the integer thresholds it induces.

    For integers A, B: 4|A|^3 <= X  iff  |A| <= max_abs_a, and
    27 B^2 <= X  iff  |B| <= max_abs_b.
    """

    X: int

    def __post_init__(self):
        if not isinstance(self.X, int) or self.X < 1:
            raise ValueError(f"height bound must be an integer >= 1, got {self.X!r}")

    @property
    def max_abs_a(self) -> int:
        return integer_nth_root(self.X // 4, 3)

    @property
    def max_abs_b(self) -> int:
        return math.isqrt(self.X // 27)

    def admits(self, A: int, B: int) -> bool:
        return 4 * abs(A) ** 3 <= self.X and 27 * B * B <= self.X


def as_height(X) -> HeightBound:
    return X if isinstance(X, HeightBound) else HeightBound(operator.index(X))
