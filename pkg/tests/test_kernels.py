"""Kernel parity and correctness: pure Python vs compiled (when built)."""

import random

from boxq._kern import pure


def _randpoly(rng, deg, bound=50):
    return pure.pnorm([rng.randint(-bound, bound) for _ in range(deg + 1)])


def test_pnorm_and_basic_ops():
    assert pure.pnorm([0, 0, 0]) == ()
    assert pure.pnorm([1, 2, 0]) == (1, 2)
    assert pure.padd((1, 2), (3,)) == (4, 2)
    assert pure.psub((1, 2), (1, 2)) == ()
    assert pure.pmul((1, 1), (1, -1)) == (1, 0, -1)
    assert pure.pmul((), (1, 2)) == ()


def test_mul_matches_school_vs_kronecker():
    rng = random.Random(7)
    for _ in range(30):
        a = _randpoly(rng, rng.randint(0, 80), bound=10**6)
        b = _randpoly(rng, rng.randint(0, 80), bound=10**6)
        assert pure._pmul_school(a, b) == pure._pmul_kronecker(a, b) if a and b else True


def test_content_primitive():
    c, p = pure.pprim((6, -12, 18))
    assert c == 6 and p == (1, -2, 3)
    c, p = pure.pprim((-6, -12))
    assert c == -6 and p == (1, 2)
    assert p[-1] > 0


def test_divexact_and_divides():
    a = pure.pmul((1, 2, 3), (-4, 5))
    assert pure.pdivexact(a, (1, 2, 3)) == (-4, 5)
    assert pure.pdivides((1, 2, 3), a)
    assert not pure.pdivides((1, 1), (1, 0, 1))


def test_gcd_random_products():
    rng = random.Random(13)
    for _ in range(40):
        g = _randpoly(rng, rng.randint(0, 6), 8)
        if not g:
            continue
        a = pure.pmul(g, _randpoly(rng, rng.randint(0, 6), 8))
        b = pure.pmul(g, _randpoly(rng, rng.randint(0, 6), 8))
        d = pure.pgcd(a, b)
        if a and b:
            assert pure.pdivides(d, a) and pure.pdivides(d, b)
            assert pure.pdivides(pure.pprim(g)[1], d)


def test_gcd_heuristic_agrees_with_prs():
    rng = random.Random(99)
    for _ in range(25):
        g = _randpoly(rng, rng.randint(1, 5), 6)
        a = pure.pmul(g, _randpoly(rng, rng.randint(1, 5), 6))
        b = pure.pmul(g, _randpoly(rng, rng.randint(1, 5), 6))
        if not a or not b:
            continue
        assert pure.pgcd(a, b) == pure._pgcd_prs(a, b)


def test_compiled_parity_if_available():
    try:
        from boxq._kern import _speed
    except ImportError:
        return
    rng = random.Random(5)
    for _ in range(25):
        a = _randpoly(rng, rng.randint(0, 30), 100)
        b = _randpoly(rng, rng.randint(0, 30), 100)
        assert _speed.padd(a, b) == pure.padd(a, b)
        assert _speed.pmul(a, b) == pure.pmul(a, b)
        assert _speed.pgcd(a, b) == pure.pgcd(a, b)
        if b:
            assert _speed.pdivmod_q(a, b) == pure.pdivmod_q(a, b)
