"""Truncated pair algebra: embeddings, inverses, exp-conjugation identities."""

import random

import pytest

from boxq import algebra
from boxq.ncpoly import NCPoly, parse_poly
from boxq.pairalg import PairContext, PairError, canonical_eq, verify_pair_identity
from boxq.qcoeff import GenericField, SpecializedField, expcoef, qpow

Q = qpow(1)
QINV = qpow(-1)
QM = Q - QINV


def _xgen(i, p=1):
    return NCPoly.gen(i, p)


def test_embed_collapses_pair_products():
    ctx = PairContext(0, 4)
    xy = ctx.embed(_xgen(0) * _xgen(1))
    expected = ctx.one().sub(ctx.nil_power(1).scale_scalar(QINV * QM))
    assert canonical_eq(xy, expected)
    yx = ctx.embed(_xgen(1) * _xgen(0))
    expected = ctx.one().sub(ctx.nil_power(1).scale_scalar(Q * QM))
    assert canonical_eq(yx, expected)
    assert not canonical_eq(xy, yx)


def test_embed_agrees_with_defining_expansion():
    # the pair element itself embeds to the n-basis vector
    for i in range(4):
        ctx = PairContext(i, 5)
        assert ctx.embed(algebra.nelem(i)) == ctx.nil_power(1)
        assert ctx.embed(algebra.nelem(i, "right")) == ctx.nil_power(1)


def test_inverses_are_two_sided():
    for n in range(1, 9):
        ctx = PairContext(2, n)
        x, y = ctx.x_power(1), ctx.y_power(1)
        xinv, yinv = ctx.x_inv(), ctx.y_inv()
        assert xinv.mul(x) == ctx.one()
        assert x.mul(xinv) == ctx.one()
        assert yinv.mul(y) == ctx.one()
        assert y.mul(yinv) == ctx.one()


def test_embed_rejects_foreign_letters():
    ctx = PairContext(0, 3)
    with pytest.raises(PairError):
        ctx.embed(_xgen(2))


def test_mul_associative_random():
    rng = random.Random(21)
    ctx = PairContext(0, 4)
    pool = [
        ctx.x_power(1),
        ctx.y_power(1),
        ctx.x_inv(),
        ctx.y_inv(),
        ctx.nil_power(1),
        ctx.x_power(2, 1),
        ctx.y_power(2, 2),
    ]
    for _ in range(200):
        a, b, c = (rng.choice(pool).scale_scalar(qpow(rng.randint(-1, 1))) for _ in range(3))
        assert a.mul(b).mul(c) == a.mul(b.mul(c))


def test_exp_times_inverse_is_one():
    for n in range(1, 9):
        ctx = PairContext(1, n)
        e = ctx.exp_elem()
        einv = ctx.exp_elem(inverse=True)
        assert e.mul(einv) == ctx.one()
        assert einv.mul(e) == ctx.one()
    assert PairContext(0, 1).exp_elem() == PairContext(0, 1).one()


def test_exp_shift_identity_in_pair():
    # exp(q^2 n)(1 - (q^2-1) n) = exp(n), exactly under truncation
    for n in (2, 4, 6):
        ctx = PairContext(0, n)
        shifted = ctx.zero()
        for m in range(n):
            shifted = shifted.add(ctx.nil_power(m).scale_scalar(expcoef(m) * qpow(2 * m)))
        fac = ctx.one().sub(ctx.nil_power(1).scale_scalar(qpow(2) - qpow(0)))
        assert shifted.mul(fac) == ctx.exp_elem()


def test_conjugation_identities_all_pairs():
    from boxq.pairalg import verify_vip

    for i in range(4):
        # direct route at every truncation
        for n in range(1, 9):
            for which in ("vip1", "vip2", "vip3", "vip4"):
                assert verify_vip(which, i, n), (which, i, n)
        # independent route: expand in the free algebra, then embed
        for which in ("vip1", "vip2", "vip3", "vip4"):
            assert verify_pair_identity(algebra.ident_vip(which, i, 4), i, 4)


def test_inverse_identities_in_pair():
    for i in range(4):
        for n in (2, 4, 8):
            for build in (
                algebra.ident_inv11,
                algebra.ident_inv12,
                algebra.ident_inv21,
                algebra.ident_inv22,
            ):
                assert verify_pair_identity(build(i), i, n), (build.__name__, i, n)


def test_exp_weight_shift_family():
    from boxq.pairalg import verify_55

    for i in range(4):
        for r in range(-4, 5):
            for which in ("5511", "5512"):
                assert verify_55(which, i, r, 6), (which, i, r)
    # independent route through the free algebra
    for r in (-2, 3):
        assert verify_pair_identity(algebra.ident_55("5511", 0, r, 4), 0, 4)
        assert verify_pair_identity(algebra.ident_55("5512", 1, r, 4), 1, 4)


def test_power_ladder_identities():
    for i in range(4):
        for n in range(0, 9):
            assert verify_pair_identity(algebra.ident_3101(i, n), i, 8)
            assert verify_pair_identity(algebra.ident_3102(i, n), i, 8)
            assert verify_pair_identity(algebra.ident_uu(i), i, 4)
            assert verify_pair_identity(algebra.ident_uu(i, upper=True), i, 4)
            assert verify_pair_identity(algebra.ident_eq4(i, n), i, 8)
            assert verify_pair_identity(algebra.ident_eq4(i, n, upper=True), i, 8)


def test_exp_conjugation_fixes_xy():
    ctx = PairContext(0, 6)
    e, einv = ctx.exp_elem(), ctx.exp_elem(inverse=True)
    xy = ctx.embed(_xgen(0) * _xgen(1))
    assert e.mul(xy).mul(einv) == xy


def test_truncation_projection_compatible():
    for n in (3, 5):
        diff = algebra.ident_vip("vip2", 0, n)
        ctx = PairContext(0, n)
        big = ctx.embed(diff)
        assert big.project(n - 1).is_zero() == verify_pair_identity(diff, 0, n - 1)
    elem = PairContext(0, 4).embed(parse_poly("x0^-1*x1^2"))
    proj = elem.project(3)
    assert all(k[2] < 3 for k in proj.coeffs)


def test_embed_consistent_with_rewrite_on_positive_inputs():
    from boxq import rewrite
    from boxq.ncpoly import word_reduce

    rng = random.Random(31415)
    strat = rewrite.weyl_move_strategy(1)
    ctx = PairContext(0, 10)
    for _ in range(100):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = word_reduce([rng.choice([0, 2]) for _ in range(rng.randint(0, 6))])
            terms[w] = qpow(rng.randint(-2, 2)) * rng.randint(1, 2)
        p = NCPoly(terms)
        r = NCPoly(terms)  # compare reduce-then-embed vs embed directly
        nf = rewrite.reduce_poly(p, strat)
        assert ctx.embed(nf) == ctx.embed(r)


def test_specialized_field_pair_algebra():
    fld = SpecializedField(2)
    for which in ("vip1", "vip3"):
        diff = algebra.ident_vip(which, 0, 5)
        assert verify_pair_identity(diff, 0, 5, fld)
    ctx = PairContext(0, 5, fld)
    assert ctx.x_inv().mul(ctx.x_power(1)) == ctx.one()


def test_pretty_printer():
    ctx = PairContext(0, 3)
    e = ctx.x_power(2, 1).add(ctx.y_power(1, 0))
    s = repr(e)
    assert "x^2*n^1" in s and "y^1" in s
