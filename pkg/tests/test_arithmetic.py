import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ec4count.arithmetic import (
    HeightBound,
    build_sieves,
    integer_nth_root,
    is_perfect_square,
    is_squarefree,
    sieve_upto,
    squarefree_count,
    squarefree_count_div3,
    squarefree_kernel,
)


def brute_squarefree(n):
    return all(n % (p * p) for p in range(2, math.isqrt(n) + 1))


def test_mobius_small():
    t = build_sieves(10)
    assert [t.mu(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_factor_and_spf():
    t = build_sieves(1000)
    assert t.factor(360) == [(2, 3), (3, 2), (5, 1)]
    assert t.factor(997) == [(997, 1)]
    assert t.factor(1) == []
    with pytest.raises(ValueError):
        t.factor(1001)


def test_sieve_rejects_bad_limit():
    with pytest.raises(ValueError):
        build_sieves(0)


def test_sieve_tables_read_only():
    t = sieve_upto(100)
    with pytest.raises(ValueError):
        t.mobius[5] = 3


def test_mobius_matches_factorisation():
    t = build_sieves(5000)
    for n in range(1, 5001):
        f = t.factor(n)
        expect = 0 if any(e > 1 for _, e in f) else (-1) ** len(f)
        assert t.mu(n) == expect


def test_squarefree_count_brute_force():
    flags = [0] + [1 if brute_squarefree(n) else 0 for n in range(1, 20001)]
    q = np.cumsum(flags)
    q3 = np.cumsum([f if n % 3 == 0 else 0 for n, f in enumerate(flags)])
    for x in list(range(0, 300)) + list(range(300, 20001, 97)):
        assert squarefree_count(x) == q[x]
        assert squarefree_count_div3(x) == q3[x]


def test_squarefree_count_million_by_bitmask():
    N = 10**6
    ok = np.ones(N + 1, dtype=bool)
    ok[0] = False
    for d in range(2, math.isqrt(N) + 1):
        ok[d * d :: d * d] = False
    assert squarefree_count(N) == int(ok.sum()) == 607926


def test_squarefree_count_asymptotic():
    # Q(x) = 6x/pi^2 + O(sqrt x)
    x = 10**13
    assert abs(squarefree_count(x) - 6 * x / math.pi**2) < math.isqrt(x)


def test_odd_mobius_sum():
    # sum over odd d of mu(d)/d^4 = 16 / (15 zeta(4))
    t = sieve_upto(10**5)
    d = np.arange(1, 10**5 + 1, 2)
    s = float(np.sum(t.mobius[d] / d.astype(float) ** 4))
    assert abs(s - 16 / (15 * math.pi**4 / 90)) < 1e-8


@given(st.integers(min_value=0, max_value=10**80), st.integers(min_value=1, max_value=12))
def test_integer_nth_root(x, n):
    r = integer_nth_root(x, n)
    assert r**n <= x < (r + 1) ** n


def test_integer_nth_root_exact_powers():
    for n in range(2, 9):
        for base in (1, 2, 10**6, 10**12 + 39, 3**40):
            assert integer_nth_root(base**n, n) == base
            assert integer_nth_root(base**n - 1, n) == base - 1
    with pytest.raises(ValueError):
        integer_nth_root(5, 0)
    with pytest.raises(ValueError):
        integer_nth_root(-1, 3)


def test_perfect_square():
    assert is_perfect_square(49) == 7
    assert is_perfect_square(50) is None
    assert is_perfect_square(-4) is None
    assert is_perfect_square(10**40) == 10**20


@given(st.integers(min_value=1, max_value=10**7))
def test_squarefree_kernel(n):
    k = squarefree_kernel(n)
    assert brute_squarefree(k)
    assert is_perfect_square(n // k) is not None and n % k == 0
    assert is_squarefree(n) == brute_squarefree(n)


def test_squarefree_kernel_large_prime_squares():
    p, q = 1000003, 999983
    assert squarefree_kernel(p * p * q) == q
    assert squarefree_kernel(p * q) == p * q
    assert not is_squarefree(0)


def test_height_bound_thresholds():
    for X in (1, 4, 27, 108, 10**6, 10**30 + 7):
        h = HeightBound(X)
        a, b = h.max_abs_a, h.max_abs_b
        assert 4 * a**3 <= X < 4 * (a + 1) ** 3
        assert 27 * b * b <= X < 27 * (b + 1) ** 2
        assert h.admits(a, b) and not h.admits(a + 1, 0) and not h.admits(0, b + 1)
    for bad in (0, -5, 1.5):
        with pytest.raises(ValueError):
            HeightBound(bad)
