import math
import random
from fractions import Fraction

import pytest

from ec4count.census import enumerate_triples
from ec4count.curves import (
    MinimalCurve,
    TwoPairTriple,
    classify_pairs,
    four_torsion_points,
    height,
    integer_roots_cubic,
    is_minimal_model,
    legendre_two_pair_model,
    non_minimal_prime,
    p8,
    p12,
    param_AB,
    recover_triple,
)


def test_form_values():
    assert p8(1, 1) == 16 and p12(1, 1) == -64
    assert p8(1, 2) == 481 and p12(1, 2) == -4879
    assert p8(1, 2) ** 3 - p12(1, 2) ** 2 == 87480000 == 108 * 16 * 50625


def test_param_examples():
    assert param_AB(TwoPairTriple(1, 1, 2)) == MinimalCurve(-12987, -263466)
    assert param_AB(TwoPairTriple(3, 1, 2)) == MinimalCurve(-1443, -9758)
    assert param_AB(TwoPairTriple(3, 1, 3)) == MinimalCurve(-1443, 9758)
    assert TwoPairTriple(1, 1, 2).case_tag == "i"
    assert TwoPairTriple(3, 1, 2).case_tag == "ii"
    assert TwoPairTriple(1, 1, 3).case_tag == "iii"
    assert TwoPairTriple(3, 1, 3).case_tag == "iv"


def test_triple_validation():
    for bad in [(4, 1, 2), (0, 1, 2), (1, 2, 2), (1, 3, 2), (1, 2, 4)]:
        with pytest.raises(ValueError):
            TwoPairTriple(*bad)


def test_classify_example():
    c = MinimalCurve(-1443, -9758)
    assert integer_roots_cubic(-1443, -9758) == [-34, -7, 41]
    pc = classify_pairs(c)
    assert pc.count == 2
    assert {(wt.b0, wt.a) for wt in pc.witnesses} == {(41, 60), (-34, 45)}
    assert height(c) == 12018741228
    assert recover_triple(c) == TwoPairTriple(3, 1, 2)
    assert recover_triple(MinimalCurve(-1443, 9758)) == TwoPairTriple(3, 1, 3)


def test_one_pair_and_none():
    assert classify_pairs(MinimalCurve(1, -2)).count == 1  # root 1, 3 + 1 = 2^2
    assert classify_pairs(MinimalCurve(1, 1)).count == 0
    assert recover_triple(MinimalCurve(1, -2)) is None
    with pytest.raises(ValueError):
        classify_pairs(MinimalCurve(-3, 2))


def test_minimality():
    assert is_minimal_model(-1443, -9758)
    assert not is_minimal_model(16 * 5, 64 * 7)
    assert non_minimal_prime(16 * 5, 64 * 7) == 2
    assert non_minimal_prime(0, 3**6 * 2) == 3
    assert non_minimal_prime(0, 7) is None
    assert non_minimal_prime(5**4, 5**5) is None


def test_integer_roots_against_brute_force():
    rng = random.Random(7)
    for _ in range(400):
        roots = [rng.randint(-300, 300) for _ in range(3)]
        shift = sum(roots)
        # depress: only integral when 3 | sum; otherwise test a random cubic
        if shift % 3:
            A, B = rng.randint(-10**5, 10**5), rng.randint(-10**7, 10**7)
        else:
            s = shift // 3
            r1, r2, r3 = (x - s for x in roots)
            A, B = r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3
        bound = 2 * math.isqrt(abs(A)) + round(abs(B) ** (1 / 3)) + 2
        brute = sorted({x for x in range(-bound, bound + 1) if x**3 + A * x + B == 0})
        assert integer_roots_cubic(A, B) == brute


def test_algebraic_identity_random():
    rng = random.Random(1)
    for _ in range(10**4):
        v, w = rng.randint(1, 10**4), rng.randint(1, 10**4)
        assert p8(v, w) ** 3 - p12(v, w) ** 2 == 108 * v**4 * w**4 * (v**4 - w**4) ** 4


def random_coprime(rng, n, hi=10**4):
    out = []
    while len(out) < n:
        v, w = rng.randint(1, hi), rng.randint(1, hi)
        if math.gcd(v, w) == 1:
            out.append((v, w))
    return out


def test_gcd_and_divisibility_facts():
    rng = random.Random(2)
    for v, w in random_coprime(rng, 1000):
        a, b = p8(v, w), p12(v, w)
        if (v * w) % 2 == 0:
            assert math.gcd(a, b) == 1
        else:
            assert a % 16 == 0 and b % 64 == 0
            assert math.gcd(a // 16, b // 64) == 1
            assert a % 64 == 16 and b % 256 == 256 - 64


def test_legendre_model_matches_param():
    # shifting the roots of the Legendre-type model to mean zero and scaling
    # must give a multiple of (A, B) by (u^4, u^6)
    for t in [TwoPairTriple(1, 1, 2), TwoPairTriple(3, 1, 2), TwoPairTriple(5, 2, 3), TwoPairTriple(6, 1, 3)]:
        e = legendre_two_pair_model(t)
        m = sum(e) / 3
        r = [x - m for x in e]
        a_leg = r[0] * r[1] + r[0] * r[2] + r[1] * r[2]
        b_leg = -r[0] * r[1] * r[2]
        c = param_AB(t)
        ratio4 = Fraction(c.A) / a_leg
        ratio6 = Fraction(c.B) / b_leg
        assert ratio4**3 == ratio6**2


def test_triples_up_to_1e24():
    seen = {}
    for t, c in enumerate_triples(10**24):
        assert 4 * abs(c.A) ** 3 >= 27 * c.B**2
        assert height(c) == 4 * abs(c.A) ** 3
        assert c.is_minimal and not c.is_singular
        assert classify_pairs(c).count == 2
        assert recover_triple(c) == t
        assert (c.A, c.B) not in seen
        seen[(c.A, c.B)] = t
    assert len(seen) == 354


def test_classification_cap_on_scan():
    # no curve has more than two pairs, and every witness is genuine
    seen = [0, 0, 0]
    for A in range(-150, 151):
        for B in range(-1500, 1501):
            c = MinimalCurve(A, B)
            if c.is_singular:
                continue
            pc = classify_pairs(c)
            seen[pc.count] += 1
            for wt in pc.witnesses:
                assert wt.b0**3 + A * wt.b0 + B == 0
                assert 3 * wt.b0**2 + A == wt.a**2 and wt.a > 0
    assert seen[1] > 0


def doubled(P, roots):
    """x(2P) by the tangent construction on y^2 = (x-e1)(x-e2)(x-e3)."""
    x, y = P
    e1, e2, e3 = roots
    f_prime = (x - e2) * (x - e3) + (x - e1) * (x - e3) + (x - e1) * (x - e2)
    lam = f_prime / (2 * y)
    return lam * lam + (e1 + e2 + e3) - 2 * x


def test_four_torsion_points_double_to_rho1():
    rng = random.Random(3)
    for _ in range(50):
        roots = tuple(complex(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(3))
        pts = four_torsion_points(*roots)
        assert len(pts) == 4
        for x, y in pts:
            rhs = (x - roots[0]) * (x - roots[1]) * (x - roots[2])
            assert abs(y * y - rhs) < 1e-9 * (1 + abs(rhs))
            assert abs(doubled((x, y), roots) - roots[0]) < 1e-8
    with pytest.raises(ValueError):
        four_torsion_points(1, 1, 2)


def test_four_torsion_rational_for_two_pair_curve():
    # y^2 = x^3 - 1443x - 9758 has roots -34, -7, 41; the 4-torsion points
    # above (41, 0) are rational because 41 - (-34) and 41 - (-7) are squares
    pts = four_torsion_points(41, -34, -7)
    for x, y in pts:
        assert abs(x.imag) < 1e-12 and abs(y.imag) < 1e-12
        assert abs(x.real - round(x.real)) < 1e-9
