"""Exact counts of curves with one or two pairs of Galois-stable 4-subgroups.

N1(X) is the number of lattice points (a, b), a > 0, in the region

    4 |a^2 - 3b^2|^3 <= X,   27 (a^2 b - 2 b^3)^2 <= X,

off the singular lines a = 0, 2a = 3|b|, with no prime l such that l^2 | a
and l^2 | b, minus N2(X).  N2(X) counts triples (r, v, w) whose curve
``param_AB(r, v, w)`` has height at most X.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .arithmetic import (
    HeightBound,
    as_height,
    integer_nth_root,
    is_squarefree,
    sieve_upto,
    squarefree_count,
    squarefree_count_div3,
)
from .curves import MinimalCurve, TwoPairTriple, classify_pairs, height, p8, param_AB

NAIVE_LIMIT = 10**12
FULL_SCAN_LIMIT = 10**11
THREADS_ENV = "EC4COUNT_THREADS"


@dataclass(frozen=True)
class LatticePoint1:
    a: int
    b: int
    in_region: bool
    singular: bool
    square_excluded: bool

    @property
    def counted(self) -> bool:
        return self.in_region and not self.singular and not self.square_excluded


@dataclass(frozen=True)
class CensusResult:
    X: int
    n1: Optional[int]
    n2: int
    lattice_count: int
    method: str
    elapsed: float

    def as_json(self) -> dict:
        out = {"X": str(self.X)}
        if self.n1 is not None:
            out["n1"] = str(self.n1)
        out["n2"] = str(self.n2)
        out["lattice_count"] = str(self.lattice_count)
        out["method"] = self.method
        out["elapsed_ms"] = round(self.elapsed * 1000.0, 3)
        return out


@dataclass(frozen=True)
class FullScanResult:
    X: int
    n0: int
    exactly_one: int
    exactly_two: int
    elapsed: float

    @property
    def n1(self) -> int:
        return self.exactly_one + self.exactly_two

    @property
    def n2(self) -> int:
        return self.exactly_two

    def as_json(self) -> dict:
        return {
            "X": str(self.X),
            "n0": str(self.n0),
            "exactly_one": str(self.exactly_one),
            "exactly_two": str(self.exactly_two),
            "n1": str(self.n1),
            "n2": str(self.n2),
            "method": "full_scan",
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }


def r1_membership(X, a: int, b: int) -> LatticePoint1:
    X = as_height(X).X
    A = a * a - 3 * b * b
    B = 2 * b**3 - a * a * b
    in_region = 4 * abs(A) ** 3 <= X and 27 * B * B <= X
    singular = a == 0 or 2 * a == 3 * abs(b)
    g = math.gcd(a, b)
    # l^2 | a and l^2 | b  iff  l^2 | gcd(a, b); gcd(0, 0) = 0 is divisible by all
    square_excluded = g == 0 or any(g % (l * l) == 0 for l in range(2, math.isqrt(g) + 1))
    return LatticePoint1(a, b, in_region, singular, square_excluded)


def _region_b_bound(h: HeightBound) -> int:
    # b is a root of x^3 + Ax + B: b^2 >= 2|A| forces |b|^3 <= 2|B|
    return max(math.isqrt(2 * h.max_abs_a), integer_nth_root(2 * h.max_abs_b, 3)) + 1


def _region_a_bound(h: HeightBound) -> int:
    b = _region_b_bound(h)
    return math.isqrt(h.max_abs_a + 3 * b * b)


def count_n1_naive(X) -> CensusResult:
    """Point-by-point enumeration of the region; an oracle for small X."""
    h = as_height(X)
    if h.X > NAIVE_LIMIT:
        raise ValueError(f"naive N1 count is limited to X <= {NAIVE_LIMIT}")
    start = time.perf_counter()
    bmax = _region_b_bound(h)
    lattice = 0
    for a in range(_region_a_bound(h) + 1):
        for b in range(-bmax, bmax + 1):
            if r1_membership(h, a, b).counted:
                lattice += 1
    n2 = count_n2(h).n2
    return CensusResult(h.X, lattice - n2, n2, lattice, "naive", time.perf_counter() - start)


# -- fast N1: one column a at a time ---------------------------------------


def _ceil_isqrt(n: int) -> int:
    return 0 if n <= 0 else math.isqrt(n - 1) + 1


def _largest_true(pred, lo, hi):
    """Largest x in [lo, hi] with pred(x), pred monotone True->False; pred(lo) assumed."""
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def _smallest_true(pred, lo, hi):
    """Smallest x in [lo, hi] with pred(x), pred monotone False->True; pred(hi) assumed."""
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def column_intervals(a: int, tA: int, tB: int) -> list[tuple[int, int]]:
    """Disjoint intervals of b >= 0 with |3b^2 - a^2| <= tA and |2b^3 - a^2 b| <= tB."""
    a2 = a * a
    hi = math.isqrt((a2 + tA) // 3)
    lo = _ceil_isqrt(-((tA - a2) // 3)) if a2 > tA else 0
    if lo > hi:
        return []

    def f(b):
        return b * (2 * b * b - a2)

    # f <= 0 on [0, a/sqrt2] and f rises beyond a/sqrt6, so {f <= tB} is [0, top]
    k0 = min(math.isqrt(a2 // 2), hi)
    if k0 < lo:
        k0 = lo
        if f(k0) > tB:
            return []
    top = _largest_true(lambda b: f(b) <= tB, k0, hi)
    if top < lo:
        return []
    # {f < -tB} is an interval around the minimum of f near a/sqrt6
    m = math.isqrt(a2 // 6)
    m = m if f(m) <= f(m + 1) else m + 1
    if f(m) >= -tB:
        return [(lo, top)]
    e1 = _smallest_true(lambda b: f(b) < -tB, 0, m)
    e2 = _largest_true(lambda b: f(b) < -tB, m, m + a)
    out = []
    if lo <= min(top, e1 - 1):
        out.append((lo, min(top, e1 - 1)))
    if max(lo, e2 + 1) <= top:
        out.append((max(lo, e2 + 1), top))
    return out


def _multiples_in(d: int, lo: int, hi: int) -> int:
    return hi // d - (lo - 1) // d


def _square_free_count_in(lo: int, hi: int, squares: list[int]) -> int:
    """#{b in [lo, hi] : no s in squares divides b}, squares pairwise coprime."""
    total = 0
    for k in range(len(squares) + 1):
        sign = -1 if k & 1 else 1
        for combo in combinations(squares, k):
            total += sign * _multiples_in(math.prod(combo), lo, hi)
    return total


def _column_count(a: int, tA: int, tB: int, squares: list[int]) -> int:
    count = 0
    for lo, hi in column_intervals(a, tA, tB):
        if lo == 0:
            # b = 0 stands alone; it is excluded iff a is not squarefree
            count += 0 if squares else 1
            lo = 1
        if lo <= hi:
            count += 2 * _square_free_count_in(lo, hi, squares)
        if a % 3 == 0:
            bs = 2 * a // 3
            if lo <= bs <= hi and all(bs % s for s in squares):
                count -= 2
    return count


def _square_divisors(a: int, spf) -> list[int]:
    """l^2 for each prime l with l^2 | a."""
    out = []
    while a > 1:
        p = int(spf[a])
        e = 0
        while a % p == 0:
            a //= p
            e += 1
        if e >= 2:
            out.append(p * p)
    return out


def _columns_sum(args) -> int:
    a_lo, a_hi, tA, tB = args
    spf = sieve_upto(a_hi).spf
    total = 0
    for a in range(a_lo, a_hi + 1):
        total += _column_count(a, tA, tB, _square_divisors(a, spf))
    return total


def default_workers() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    n = int(raw) if raw.strip() else 1
    return n if n > 0 else (os.cpu_count() or 1)


def lattice_count_n1(X, workers: Optional[int] = None) -> int:
    """The lattice tally before the N2 correction, computed column by column."""
    h = as_height(X)
    tA, tB = h.max_abs_a, h.max_abs_b
    a_max = _region_a_bound(h)
    workers = default_workers() if workers is None else workers
    if workers == 0:
        workers = os.cpu_count() or 1
    if workers <= 1 or a_max < 1000:
        return _columns_sum((1, a_max, tA, tB))
    chunk = max(1, a_max // (8 * workers))
    jobs = [(lo, min(lo + chunk - 1, a_max), tA, tB) for lo in range(1, a_max + 1, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_columns_sum, jobs))


def count_n1_fast(X, workers: Optional[int] = None) -> CensusResult:
    h = as_height(X)
    start = time.perf_counter()
    lattice = lattice_count_n1(h, workers)
    n2 = count_n2(h).n2
    return CensusResult(h.X, lattice - n2, n2, lattice, "fast", time.perf_counter() - start)


# -- N2: triples (r, v, w) -------------------------------------------------


def _max_r(X: int, q: int, divisible_by_3: bool) -> int:
    """Largest r with 4|A|^3 <= X, |A| = 27 r^2 q (3 does not divide r) or r^2 q / 3 (3 | r).

    Here q is p8(v, w), divided by 16 when v and w are both odd.
    """
    if divisible_by_3:
        # 4 (r^2 q / 3)^3 <= X  <=>  4 q^3 r^6 <= 27 X
        return integer_nth_root(27 * X // (4 * q**3), 6)
    return integer_nth_root(X // (4 * 27**3 * q**3), 6)


def count_n2(X) -> CensusResult:
    """Count triples by summing squarefree-r counts over coprime (v, w)."""
    h = as_height(X)
    X = h.X
    start = time.perf_counter()
    total = 0
    w = 2
    while True:
        # p8(1, w) / 16 with r = 3 bounds |A| from below for this and every later w
        if _max_r(X, p8(1, w) // 16, True) < 3:
            break
        for v in range(1, w):
            if math.gcd(v, w) != 1:
                continue
            q = p8(v, w)
            if v & 1 and w & 1:
                q //= 16
            r_no3 = _max_r(X, q, False)
            r_3 = _max_r(X, q, True)
            if r_no3 < 1 and r_3 < 3:
                # p8(v, w) / 16 bounds q from below for every later v
                if _max_r(X, p8(v, w) // 16, True) < 3:
                    break
                continue
            total += squarefree_count(r_no3) - squarefree_count_div3(r_no3)
            total += squarefree_count_div3(r_3)
        w += 1
    return CensusResult(X, None, total, total, "fast", time.perf_counter() - start)


def enumerate_triples(X):
    """Yield every TwoPairTriple whose curve has height <= X, with that curve."""
    h = as_height(X)
    # every case has |A| >= r^2 p8(v, w) / 48
    cap = 48**3 * h.X
    w = 2
    while 4 * p8(1, w) ** 3 <= cap:
        for v in range(1, w):
            if math.gcd(v, w) != 1:
                continue
            r = 1
            while 4 * (r * r * p8(v, w)) ** 3 <= cap:
                if is_squarefree(r):
                    t = TwoPairTriple(r, v, w)
                    c = param_AB(t)
                    if height(c) <= h.X:
                        yield t, c
                r += 1
        w += 1


def count_n2_naive(X) -> CensusResult:
    """Enumerate every triple and test its curve's height directly."""
    h = as_height(X)
    if h.X > 10**30:
        raise ValueError("naive N2 count is limited to X <= 10^30")
    start = time.perf_counter()
    total = sum(1 for _ in enumerate_triples(h))
    return CensusResult(h.X, None, total, total, "naive", time.perf_counter() - start)


# -- full scan over minimal curves ------------------------------------------


def _fourth_power_primes(A: int) -> list[int]:
    out = []
    n = abs(A)
    l = 2
    while l**4 <= n:
        if n % l**4 == 0:
            out.append(l)
        l += 1
    return out


def _b_range_count(tB: int, step: int) -> int:
    """#{B in [-tB, tB] : step | B}."""
    return 2 * (tB // step) + 1


def count_full_scan(X) -> FullScanResult:
    """Classify every minimal nonsingular curve of height <= X.

    A curve with no integer root of x^3 + Ax + B has no pair, so for each A
    only the B = -(b^3 + A b) are passed to ``classify_pairs``; the rest are
    tallied as zero-pair curves by counting minimal B values.
    """
    h = as_height(X)
    if h.X > FULL_SCAN_LIMIT:
        raise ValueError(f"full scan is limited to X <= {FULL_SCAN_LIMIT}")
    start = time.perf_counter()
    tA, tB = h.max_abs_a, h.max_abs_b
    exactly = [0, 0, 0]
    minimal_nonsingular = 0
    bmax = _region_b_bound(h)
    for A in range(-tA, tA + 1):
        if A == 0:
            # minimal means B is sixth-power free; B = 0 is singular
            top = integer_nth_root(tB, 6)
            mu = sieve_upto(top).mobius
            minimal_nonsingular += sum(int(mu[d]) * 2 * (tB // d**6) for d in range(1, top + 1))
            continue
        ells = _fourth_power_primes(A)
        n = 0
        for k in range(len(ells) + 1):
            for combo in combinations(ells, k):
                n += (-1) ** k * _b_range_count(tB, math.prod(combo) ** 6)
        # singular: A = -3m^2, B = +-2m^3
        if A < 0 and -A % 3 == 0:
            m = math.isqrt(-A // 3)
            if 3 * m * m == -A and 2 * m**3 <= tB and all((2 * m**3) % l**6 for l in ells):
                n -= 2
        minimal_nonsingular += n
        seen = set()
        for b in range(-bmax, bmax + 1):
            B = -(b**3 + A * b)
            if abs(B) > tB or B in seen:
                continue
            seen.add(B)
            if any(B % l**6 == 0 for l in ells):
                continue
            c = MinimalCurve(A, B)
            if c.is_singular:
                continue
            exactly[classify_pairs(c).count] += 1
    n0 = minimal_nonsingular - exactly[1] - exactly[2]
    return FullScanResult(h.X, n0, exactly[1], exactly[2], time.perf_counter() - start)


# -- lattice points of p8(v, w) <= z ----------------------------------------

PARITY_CLASSES = ((0, 1), (1, 0), (1, 1))


def count_r2_lattice(z: int, parity: tuple[int, int], coprime_only: bool = False) -> int:
    """#{(v, w) : 0 <= v <= w, p8(v, w) <= z, (v, w) = parity mod 2}."""
    if tuple(parity) not in PARITY_CLASSES:
        raise ValueError(f"parity class must be one of {PARITY_CLASSES}")
    i, j = parity
    count = 0
    for w in range(j if j else 2, integer_nth_root(z, 8) + 1, 2):
        if p8(0, w) > z:
            break
        vmax = _largest_true(lambda v: p8(v, w) <= z, 0, w)
        if coprime_only:
            count += sum(1 for v in range(i, vmax + 1, 2) if math.gcd(v, w) == 1)
        elif vmax >= i:
            count += (vmax - i) // 2 + 1
    return count
