"""Bounded-degree membership: soundness, certificates, negative controls."""

from fractions import Fraction

import pytest

from boxq import algebra
from boxq.ideal import (
    MembershipQuery,
    RelationId,
    independence,
    member,
    specialize_certificate,
    verify_certificate,
)
from boxq.ncpoly import NCPoly, letter_code, parse_poly
from boxq.qcoeff import SpecializedField, qpow

X0 = letter_code(0)
X1 = letter_code(1)


def _weyl_query(target, bound, alphabet=(X0, X1), relations=None):
    return MembershipQuery(
        target=target,
        relations=relations or [RelationId("weyl", 0)],
        alphabet=alphabet,
        degree_bound=bound,
    )


def test_generator_is_member():
    q = _weyl_query(algebra.weyl_rel(0), 2)
    v = member(q)
    assert v.is_member
    assert len(v.certificate) == 1
    assert verify_certificate(q, v)


def test_c1_n2_member_at_bound3():
    target = algebra.ident_c1(0, 2)
    q = _weyl_query(target, 3)
    v = member(q)
    assert v.is_member
    assert verify_certificate(q, v)
    assert specialize_certificate(q, v, 2)
    assert specialize_certificate(q, v, Fraction(3, 2))


def test_commutator_not_found():
    target = parse_poly("x0*x1 - x1*x0")
    q = _weyl_query(target, 4)
    v = member(q)
    assert v.status == "not_found_at_bound"


def test_monotone_in_bound():
    target = algebra.ident_c1(0, 2)
    for bound in (3, 4, 5):
        assert member(_weyl_query(target, bound)).is_member


def test_specialized_field_query():
    target = algebra.ident_c1(0, 3)
    q = MembershipQuery(
        target=target,
        relations=[RelationId("weyl", 0)],
        alphabet=(X0, X1),
        degree_bound=5,
        field=SpecializedField(2),
    )
    v = member(q)
    assert v.is_member
    assert verify_certificate(q, v)


def test_serre_relation_and_c3():
    target = algebra.ident_c3(0, 4)
    q = MembershipQuery(
        target=target,
        relations=[RelationId("serre", 0)],
        alphabet=(X0, letter_code(2)),
        degree_bound=5,
        linear_index=2,
    )
    v = member(q)
    assert v.is_member
    assert verify_certificate(q, v)


def test_independence_of_generators():
    gens = [NCPoly.gen(i) for i in range(4)]
    rels = [RelationId("weyl", i) for i in range(4)] + [RelationId("serre", i) for i in range(4)]
    alphabet = tuple(range(8))
    assert independence(gens, rels, alphabet, 4)


def test_dependence_detected():
    rels = [RelationId("weyl", 0)]
    alphabet = (X0, X1)
    assert not independence([NCPoly.gen(0), NCPoly.gen(0).scale(qpow(0) * 2)], rels, alphabet, 3)
    assert not independence([algebra.weyl_rel(0), NCPoly.gen(0)], rels, alphabet, 3)


def test_target_over_bound_rejected():
    with pytest.raises(ValueError):
        member(_weyl_query(algebra.ident_c1(0, 5), 3))
