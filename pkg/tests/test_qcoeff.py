"""Coefficient field: exact Q(q) arithmetic and the q-combinatorial scalars."""

import random
from fractions import Fraction

import pytest

from boxq import qcoeff
from boxq.qcoeff import (
    Q,
    RF_ONE,
    RF_ZERO,
    RatFunc,
    SpecializedField,
    eval_at,
    expcoef,
    field_arith,
    format_scalar,
    from_fraction,
    from_int,
    qfac,
    qint,
    qpow,
    subst_qinv,
)

QINV = qpow(-1)


def _laurent_div(num, den):
    """Independent long-division oracle on Laurent coefficient dicts.

    num and den map exponents to Fractions; den must divide num exactly.
    """
    num = dict(num)
    out = {}
    lead = max(den)
    while any(num.values()):
        k = max(e for e, c in num.items() if c)
        c = num[k] / den[lead]
        out[k - lead] = out.get(k - lead, 0) + c
        for e, d in den.items():
            num[e + k - lead] = num.get(e + k - lead, 0) - c * d
    return out


def _to_dict(a):
    """RatFunc with trivial denominator -> exponent dict."""
    assert a.den == (1,)
    return {a.e + i: a.c * v for i, v in enumerate(a.num) if v}


def _rand_ratfunc(rng, allow_zero=True):
    def rp(deg):
        return tuple(rng.randint(-6, 6) for _ in range(deg + 1))

    num = rp(rng.randint(0, 4))
    den = rp(rng.randint(0, 3))
    while all(v == 0 for v in den):
        den = rp(rng.randint(0, 3))
    r = RatFunc(Fraction(rng.randint(-5, 5), rng.randint(1, 5)), rng.randint(-3, 3), num, den)
    if not allow_zero and r.is_zero():
        return RF_ONE
    return r


def test_add_q_plus_qinv():
    r = Q + QINV
    assert r == RatFunc(1, -1, (1, 0, 1), (1,))
    assert format_scalar(r) == "q + q^-1"


def test_mul_difference_by_sum():
    # hand expansion: (q - q^-1)(q + q^-1) = q^2 - q^-2
    r = (Q - QINV) * (Q + QINV)
    assert r == qpow(2) - qpow(-2)


def test_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        field_arith(RF_ONE, RF_ZERO, "div")


def test_qint_zero_and_three():
    assert qint(0).is_zero()
    # oracle: divide q^3 - q^-3 by q - q^-1 with independent long division
    num = {3: Fraction(1), -3: Fraction(-1)}
    den = {1: Fraction(1), -1: Fraction(-1)}
    expected = _laurent_div(num, den)
    assert _to_dict(qint(3)) == {k: v for k, v in expected.items() if v}
    assert qint(3) == qpow(2) + RF_ONE + qpow(-2)


def test_qint_negative():
    for n in range(1, 9):
        assert qint(-n) == -qint(n)


def test_qint_symmetric_under_qinv():
    for n in range(0, 9):
        assert subst_qinv(qint(n)) == qint(n)


def test_qfac():
    assert qfac(0) == RF_ONE
    assert qfac(1) == RF_ONE
    assert qfac(3) == qint(2) * qint(3)
    with pytest.raises(ValueError):
        qfac(-1)


def test_expcoef_small():
    assert expcoef(0) == RF_ONE
    assert expcoef(0, True) == RF_ONE
    assert expcoef(2) == Q / (Q + QINV)
    assert expcoef(2, True) == QINV / (Q + QINV)
    assert expcoef(1, True) == -RF_ONE


def test_expcoef_convolution_identity():
    # series product of the q-exponential with its inverse is 1
    for m in range(0, 33):
        acc = RF_ZERO
        for k in range(m + 1):
            acc = acc + expcoef(k) * expcoef(m - k, True)
        assert acc == (RF_ONE if m == 0 else RF_ZERO), m


def test_expcoef_shift_identity():
    # coefficient form of exp(q^2 psi)(1 - (q^2-1) psi) = exp(psi)
    q2 = qpow(2)
    for m in range(1, 33):
        lhs = q2**m * expcoef(m) - (q2 - RF_ONE) * q2 ** (m - 1) * expcoef(m - 1)
        assert lhs == expcoef(m), m


def test_subst_qinv_examples():
    assert subst_qinv(Q) == QINV
    rng = random.Random(42)
    for _ in range(50):
        a = _rand_ratfunc(rng)
        assert subst_qinv(subst_qinv(a)) == a


def test_eval_at_examples():
    assert eval_at(qint(3), 2) == Fraction(21, 4)
    assert eval_at(RF_ONE, Fraction(7, 3)) == 1
    with pytest.raises(ValueError):
        eval_at(Q, 1)
    with pytest.raises(ValueError):
        eval_at(Q, 0)
    with pytest.raises(ValueError):
        eval_at(Q, -1)
    with pytest.raises(ZeroDivisionError):
        eval_at(RF_ONE / (Q - from_int(2)), 2)


def test_eval_at_is_field_homomorphism():
    rng = random.Random(2024)
    points = [Fraction(2), Fraction(3, 2), Fraction(-5, 3)]
    n = 0
    while n < 200:
        a = _rand_ratfunc(rng)
        b = _rand_ratfunc(rng)
        q0 = points[n % 3]
        try:
            va, vb = eval_at(a, q0), eval_at(b, q0)
            vsum, vprod = eval_at(a + b, q0), eval_at(a * b, q0)
        except ZeroDivisionError:
            continue
        assert vsum == va + vb
        assert vprod == va * vb
        if vb != 0:
            assert eval_at(a / b, q0) == va / vb
        n += 1


def test_canonical_idempotence():
    rng = random.Random(11)
    for _ in range(60):
        a = _rand_ratfunc(rng)
        b = RatFunc(a.c, a.e, a.num, a.den)
        assert a == b
        assert hash(a) == hash(b)
        # canonical invariants
        if not a.is_zero():
            assert a.num[0] != 0 and a.den[0] != 0
            assert a.num[-1] > 0 and a.den[-1] > 0


def test_field_axioms_random():
    rng = random.Random(3)
    for _ in range(60):
        a, b, c = (_rand_ratfunc(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a - a == RF_ZERO
        if not b.is_zero():
            assert (a / b) * b == a


def test_format_round_trip_via_eval():
    # formatting is checked for value fidelity through specialization
    rng = random.Random(17)
    from boxq.ncpoly import parse_scalar

    for _ in range(60):
        a = _rand_ratfunc(rng)
        assert parse_scalar(format_scalar(a)) == a


def test_format_monomials():
    assert format_scalar(RF_ZERO) == "0"
    assert format_scalar(-qpow(-6)) == "-q^-6"
    assert format_scalar(from_int(5)) == "5"
    assert format_scalar(from_fraction(Fraction(2, 3))) == "2/3"
    # canonical form clears negative powers out of the denominator
    assert format_scalar(Q / (Q + QINV)) == "q^2/(q^2 + 1)"


def test_specialized_field_guards():
    with pytest.raises(ValueError):
        SpecializedField(1)
    f = SpecializedField(Fraction(3, 2))
    assert f.from_scalar(qint(2)) == Fraction(3, 2) + Fraction(2, 3)
