"""Acceptance gate: the eleven exit criteria, each with its runtime budget.

All checks are exact (zero tolerance everywhere); a nonzero residual in
any instance fails the criterion.  Each test prints one pass/fail line.
"""

import time
from fractions import Fraction

import pytest

from boxq import algebra, ideal, modverify, pairalg, rewrite, runner
from boxq.ncpoly import NCPoly, parse_scalar
from boxq.qcoeff import RF_ONE, RF_ZERO, SpecializedField, eval_at, expcoef, qpow
from boxq.runner import IdentityInstance, SuiteConfig, run_instance, suite

from test_presets import (
    GOLDEN_LEMMA91,
    GOLDEN_THM93,
    GOLDEN_THM94,
    _check_preset,
)

CFG = SuiteConfig()


def _report(num, label, t0, budget=None):
    elapsed = time.time() - t0
    extra = "" if budget is None else " (budget %ds)" % budget
    print("criterion %-2s PASS  %-34s %6.2fs%s" % (num, label, elapsed, extra))
    if budget is not None:
        assert elapsed < budget, "criterion %s exceeded its %ds budget" % (num, budget)


def _verified(label, i, params=(), engines=("rewrite",)):
    res = run_instance(IdentityInstance("a", label, i, tuple(params), tuple(engines)), CFG)
    assert res.verdict == "verified", (label, i, params, res.witness)


def test_criterion_1_relation_level_lemmas():
    t0 = time.time()
    for i in range(4):
        for n in range(2, 9):
            for label in ("c1", "c2", "c3"):
                _verified(label, i, (n,))
        for upper in (0, 1):
            _verified("uu", i, (upper,))
            for n in range(1, 9):
                _verified("eq4", i, (n, upper))
        for n in range(0, 9):
            _verified("3101", i, (n,))
            _verified("3102", i, (n,))
    _report(1, "power and ladder identities", t0, budget=10)


def test_criterion_2_inverse_identities():
    t0 = time.time()
    for i in range(4):
        for n in range(1, 9):
            for label in ("inv11", "inv12", "inv21", "inv22"):
                assert pairalg.verify_inv(label, i, n), (label, i, n)
    _report(2, "inverse identities in P_N, N <= 8", t0, budget=5)


def test_criterion_3_q_exponential_calculus():
    t0 = time.time()
    for m in range(0, 33):
        conv = RF_ZERO
        for k in range(m + 1):
            conv = conv + expcoef(k) * expcoef(m - k, True)
        assert conv == (RF_ONE if m == 0 else RF_ZERO), m
        if m >= 1:
            lhs = qpow(2 * m) * expcoef(m) - (qpow(2) - RF_ONE) * qpow(2 * m - 2) * expcoef(m - 1)
            assert lhs == expcoef(m), m
    for i in range(4):
        for n in range(1, 7):
            for r in range(-4, 5):
                assert pairalg.verify_55("5511", i, r, n), (i, n, r)
                assert pairalg.verify_55("5512", i, r, n), (i, n, r)
    _report(3, "q-exponential coefficient calculus", t0, budget=10)


def test_criterion_4_conjugation_theorems_adjacent():
    t0 = time.time()
    for i in range(4):
        for n in range(1, 9):
            for label in ("vip1", "vip2", "vip3", "vip4"):
                assert pairalg.verify_vip(label, i, n), (label, i, n)
    _report(4, "adjacent conjugation formulas, N <= 8", t0, budget=10)


def test_criterion_5_third_order_cross_terms():
    t0 = time.time()
    for i in range(4):
        _verified("rec1", i)  # includes the halfway-form comparison
        _verified("rec2", i)
    _report(5, "third-order cross-term identities", t0, budget=10)


def test_criterion_6_swap_identities_with_transpose():
    t0 = time.time()
    for i in range(4):
        for m in range(0, 7):
            for label in ("rac1", "rac2", "rac3", "rac4"):
                _verified(label, i, (m,))
            _verified("racmeta", i, (m,), engines=("map",))
    _report(6, "swap identities and transpose links", t0, budget=60)


def test_criterion_7_opposite_conjugation_theorems():
    t0 = time.time()
    for i in range(4):
        for label in ("thm9.3", "thm9.4", "thm9.5", "thm9.6"):
            _verified(label, i, engines=("modnil",))
    # exact on the one-dimensional family
    for t in (1, 3, parse_scalar("q")):
        rep = modverify.verify_module(modverify.onedim_module(t))
        assert rep.passed(), t
        assert all(item["ok"] for item in rep.theorem_checks)
    for q0 in (2, Fraction(3, 2)):
        for t in (1, 3):
            rep = modverify.verify_module(modverify.onedim_module(t, q0=q0))
            assert rep.passed(), (t, q0)
    _report(7, "opposite conjugation theorems (nil order 4)", t0, budget=600)


def test_criterion_8_golden_tables():
    t0 = time.time()
    for i in range(4):
        _check_preset("lemma9.1", GOLDEN_LEMMA91, i)
        _check_preset("thm9.3", GOLDEN_THM93, i)
        _check_preset("thm9.4", GOLDEN_THM94, i)
    _report(8, "printed coefficient tables reproduced", t0)


def test_criterion_9_symmetry_group():
    t0 = time.time()
    cfg = SuiteConfig(dihedral_len=6)
    for label in ("d1", "d2", "dist8", "nimg"):
        res = run_instance(IdentityInstance(label, label, -1, (), ("map",)), cfg)
        assert res.verdict == "verified", (label, res.witness)
    _report(9, "dihedral symmetry relations, words <= 6", t0)


def test_criterion_10_module_verifier():
    t0 = time.time()
    m1 = modverify.onedim_module(1, q0=2)
    m3 = modverify.onedim_module(3, q0=2)
    for module in (m1, m3, modverify.direct_sum(m1, m3),
                   modverify.direct_sum(modverify.direct_sum(m1, m3), m1)):
        rep = modverify.verify_module(module)
        assert rep.passed()
        assert all(item["ok"] for item in rep.ladder_checks if "ok" in item)
    gen = modverify.onedim_module(parse_scalar("q"))
    rep = modverify.verify_module(modverify.direct_sum(gen, modverify.onedim_module(1)))
    assert rep.passed()
    # negative control: perturbed matrix entry
    mats = list(m3.mats)
    mats[0] = ((Fraction(4),),)
    bad = modverify.MatrixModule(1, m3.field, tuple(mats))
    rep = modverify.verify_module(bad)
    assert not rep.passed()
    assert any("witness" in item for item in rep.relation_checks if not item["ok"])
    # negative control: perturbed conjugation coefficient must be detected
    good = modverify.onedim_module(parse_scalar("q"))
    _, inverses = modverify.check_invertible(good)
    _, nils = modverify.check_nilpotent(good)
    fld = good.field
    e = modverify._exp_matrix(good, nils[0])
    einv = modverify._exp_matrix(good, nils[0], inverse=True)
    lhs = modverify.mat_mul(fld, modverify.mat_mul(fld, einv, good.mats[3]), e)
    rhs_poly = algebra.theorem93_rhs(0) + NCPoly.gen(3).scale(qpow(1))  # corrupt one term
    rhs = modverify.eval_poly(good, rhs_poly, inverses)
    assert modverify.mat_sub(fld, lhs, rhs) != modverify.mat_zero(fld, 1)
    _report(10, "module corpus and negative controls", t0)


def test_criterion_11_cross_engine_consistency():
    t0 = time.time()
    report = runner.run_suite(CFG)
    counts = report.counts()
    assert counts["residual"] == 0 and counts["error"] == 0 and counts["inconclusive"] == 0
    multi = 0
    for res in report.results:
        verdicts = {e.verdict for e in res.engines}
        assert verdicts == {"verified"}, (res.instance.name, res.engines)
        if len(res.engines) > 1:
            multi += 1
    assert multi > 300  # most instances run on at least two engines
    _report(11, "cross-engine and specialization agreement", t0)
