"""Exact verification of finite-dimensional matrix representations.

A module is four square matrices over Q(q) (generic) or over Q at a
fixed rational q0.  The verifier checks the defining relations, the
forced invertibility and nilpotency structure, the generalized
eigenspace ladder, and the six exp-conjugation theorems, all in exact
arithmetic; every failure carries a concrete witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import algebra
from .ncpoly import parse_scalar
from .qcoeff import (
    GenericField,
    RatFunc,
    SpecializedField,
    eval_at,
    expcoef,
    from_fraction,
    qpow,
)

Q = qpow(1)
QINV = qpow(-1)
QMINUS = Q - QINV


# ---------------------------------------------------------------------------
# small exact matrix toolkit over a field object
# ---------------------------------------------------------------------------


def mat_identity(fld, d):
    return tuple(
        tuple(fld.one if i == j else fld.zero for j in range(d)) for i in range(d)
    )


def mat_zero(fld, d):
    return tuple(tuple(fld.zero for _ in range(d)) for _ in range(d))


def mat_add(fld, a, b):
    return tuple(
        tuple(fld.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(fld, a, b):
    return tuple(
        tuple(fld.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(fld, a, c):
    return tuple(tuple(fld.mul(x, c) for x in ra) for ra in a)


def mat_mul(fld, a, b):
    d = len(a)
    cols = list(zip(*b))
    out = []
    for ra in a:
        row = []
        for cb in cols:
            acc = fld.zero
            for x, y in zip(ra, cb):
                if not fld.is_zero(x) and not fld.is_zero(y):
                    acc = fld.add(acc, fld.mul(x, y))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_is_zero(fld, a):
    return all(fld.is_zero(x) for row in a for x in row)


def mat_pow(fld, a, k):
    out = mat_identity(fld, len(a))
    base = a
    while k:
        if k & 1:
            out = mat_mul(fld, out, base)
        k >>= 1
        if k:
            base = mat_mul(fld, base, base)
    return out


def mat_det_and_inverse(fld, a):
    """Gauss-Jordan over the field; returns (det, inverse or None)."""
    d = len(a)
    m = [list(row) + list(ident_row) for row, ident_row in zip(a, mat_identity(fld, d))]
    det = fld.one
    for col in range(d):
        piv = None
        for r in range(col, d):
            if not fld.is_zero(m[r][col]):
                piv = r
                break
        if piv is None:
            return fld.zero, None
        if piv != col:
            m[piv], m[col] = m[col], m[piv]
            det = fld.neg(det)
        det = fld.mul(det, m[col][col])
        inv = fld.div(fld.one, m[col][col])
        m[col] = [fld.mul(x, inv) for x in m[col]]
        for r in range(d):
            if r != col and not fld.is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(m[r], m[col])]
    inv = tuple(tuple(row[d:]) for row in m)
    return det, inv


def mat_kernel_basis(fld, a):
    """Basis of the right kernel, as a tuple of coordinate vectors."""
    d = len(a)
    m = [list(row) for row in a]
    n = len(m[0]) if m else 0
    piv_cols = []
    r = 0
    for c in range(n):
        piv = None
        for rr in range(r, len(m)):
            if not fld.is_zero(m[rr][c]):
                piv = rr
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = fld.div(fld.one, m[r][c])
        m[r] = [fld.mul(x, inv) for x in m[r]]
        for rr in range(len(m)):
            if rr != r and not fld.is_zero(m[rr][c]):
                f = m[rr][c]
                m[rr] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(m[rr], m[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [fld.zero] * n
        v[fc] = fld.one
        for row_idx, pc in enumerate(piv_cols):
            v[pc] = fld.neg(m[row_idx][fc])
        basis.append(tuple(v))
    return tuple(basis)


def mat_rank(fld, rows):
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = None
        for rr in range(r, len(m)):
            if not fld.is_zero(m[rr][c]):
                piv = rr
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for rr in range(len(m)):
            if rr != r and not fld.is_zero(m[rr][c]):
                f = fld.div(m[rr][c], m[r][c])
                m[rr] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(m[rr], m[r])]
        rank += 1
        r += 1
    return rank


def charpoly(fld, a):
    """Characteristic polynomial coefficients by the trace recursion.

    Returns [c_0, ..., c_d] with det(tI - A) = sum c_k t^k, c_d = 1.
    """
    d = len(a)
    coeffs = [fld.zero] * (d + 1)
    coeffs[d] = fld.one
    m = mat_identity(fld, d)
    c = fld.one
    for k in range(1, d + 1):
        m = mat_mul(fld, a, m)
        tr = m[0][0]
        for j in range(1, d):
            tr = fld.add(tr, m[j][j])
        c = fld.div(tr, fld.from_int(k))
        # m <- a*m_prev - c*I handled implicitly: subtract c on the diagonal
        coeffs[d - k] = fld.neg(c)
        m = tuple(
            tuple(fld.sub(x, c) if i == j else x for j, x in enumerate(row))
            for i, row in enumerate(m)
        )
    return coeffs


# ---------------------------------------------------------------------------
# the module object and its reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixModule:
    dimension: int
    field: object
    mats: tuple  # four d x d matrices, indexed by generator

    @property
    def is_generic(self):
        return self.field is GenericField


@dataclass
class ModuleReport:
    dimension: int = 0
    field_name: str = ""
    relation_checks: list = dc_field(default_factory=list)
    invertibility: list = dc_field(default_factory=list)
    nilpotency: list = dc_field(default_factory=list)
    theorem_checks: list = dc_field(default_factory=list)
    ladder_checks: list = dc_field(default_factory=list)
    contradictions: list = dc_field(default_factory=list)

    def passed(self):
        groups = (
            self.relation_checks,
            self.invertibility,
            self.nilpotency,
            self.theorem_checks,
            self.ladder_checks,
        )
        return all(item.get("ok", False) for g in groups for item in g if "ok" in item) and not self.contradictions

    def relations_pass(self):
        return all(item["ok"] for item in self.relation_checks)

    def to_json(self):
        return {
            "dimension": self.dimension,
            "field": self.field_name,
            "relations": self.relation_checks,
            "invertibility": self.invertibility,
            "nilpotency": self.nilpotency,
            "theorems": self.theorem_checks,
            "ladder": self.ladder_checks,
            "contradictions": self.contradictions,
            "passed": self.passed(),
        }


def _witness(fld, mat):
    """Compact witness string: the first nonzero entry of a residual."""
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            if not fld.is_zero(x):
                return "entry (%d, %d) = %s" % (i, j, fld.to_str(x))
    return "zero"


def eval_word(module, word, inverses=None):
    fld = module.field
    acc = mat_identity(fld, module.dimension)
    for code in word:
        idx = code >> 1
        if code & 1:
            if inverses is None or inverses[idx] is None:
                raise ValueError("inverse of x%d is not available" % idx)
            m = inverses[idx]
        else:
            m = module.mats[idx]
        acc = mat_mul(fld, acc, m)
    return acc


def eval_poly(module, poly, inverses=None):
    fld = module.field
    acc = mat_zero(fld, module.dimension)
    for word, coeff in poly.terms.items():
        m = eval_word(module, word, inverses)
        acc = mat_add(fld, acc, mat_scale(fld, m, fld.from_scalar(coeff)))
    return acc


def nil_matrix(module, i):
    """Matrix of the pair element q(1 - x_i x_{i+1})/(q - q^-1)."""
    return eval_poly(module, algebra.nelem(i))


def check_relations(module):
    fld = module.field
    out = []
    for i in range(4):
        for kind, poly in (("weyl", algebra.weyl_rel(i)), ("serre", algebra.serre_rel(i))):
            res = eval_poly(module, poly)
            ok = mat_is_zero(fld, res)
            item = {"relation": "%s(%d)" % (kind, i), "ok": ok}
            if not ok:
                item["witness"] = _witness(fld, res)
            out.append(item)
    return out


def check_invertible(module):
    fld = module.field
    out = []
    inverses = []
    for i in range(4):
        det, inv = mat_det_and_inverse(fld, module.mats[i])
        ok = inv is not None
        item = {"generator": "x%d" % i, "ok": ok, "det": fld.to_str(det)}
        if not ok:
            item["witness"] = "determinant is zero"
        else:
            # nonzero determinant also rules out nilpotency of the action
            item["not_nilpotent"] = True
        inverses.append(inv)
        out.append(item)
    return out, inverses


def check_nilpotent(module):
    fld = module.field
    out = []
    nils = []
    for i in range(4):
        n = nil_matrix(module, i)
        power = mat_pow(fld, n, module.dimension)
        ok = mat_is_zero(fld, power)
        index = None
        if ok:
            index = module.dimension
            cur = mat_identity(fld, module.dimension)
            for k in range(module.dimension + 1):
                if mat_is_zero(fld, cur):
                    index = k
                    break
                cur = mat_mul(fld, cur, n)
        item = {"pair": "(%d,%d)" % (i, (i + 1) % 4), "ok": ok}
        if ok:
            item["index"] = index
        else:
            item["witness"] = _witness(fld, power)
        nils.append(n)
        out.append(item)
    return out, nils


def _exp_matrix(module, n, inverse=False):
    fld = module.field
    d = module.dimension
    acc = mat_zero(fld, d)
    power = mat_identity(fld, d)
    m = 0
    while not mat_is_zero(fld, power):
        acc = mat_add(fld, acc, mat_scale(fld, power, fld.from_scalar(expcoef(m, inverse))))
        power = mat_mul(fld, power, n)
        m += 1
        if m > d + 1:
            raise ValueError("pair element is not nilpotent; exp diverges")
    return acc


def check_theorems(module, inverses, nils):
    fld = module.field
    d = module.dimension
    out = []

    def record(name, lhs, rhs):
        res = mat_sub(fld, lhs, rhs)
        ok = mat_is_zero(fld, res)
        item = {"theorem": name, "ok": ok}
        if not ok:
            item["witness"] = _witness(fld, res)
        out.append(item)

    for i in range(4):
        n = nils[i]
        e = _exp_matrix(module, n)
        einv = _exp_matrix(module, n, inverse=True)
        record("expinv(%d)" % i, mat_mul(fld, e, einv), mat_identity(fld, d))
        x = module.mats[i]
        y = module.mats[(i + 1) % 4]
        xi = inverses[i]
        yi = inverses[(i + 1) % 4]
        record("vip2[%d]" % i, mat_mul(fld, mat_mul(fld, e, x), einv), yi)
        record("vip1[%d]" % i, mat_mul(fld, mat_mul(fld, einv, y), e), xi)
        record(
            "vip3[%d]" % i,
            mat_mul(fld, mat_mul(fld, einv, x), e),
            mat_mul(fld, mat_mul(fld, x, y), x),
        )
        record(
            "vip4[%d]" % i,
            mat_mul(fld, mat_mul(fld, e, y), einv),
            mat_mul(fld, mat_mul(fld, y, x), y),
        )
        # shifted-argument identity at the matrix level
        e_shift = _exp_matrix_scaled(module, n, qpow(2))
        fac = mat_sub(
            fld,
            mat_identity(fld, d),
            mat_scale(fld, n, fld.from_scalar(qpow(2) - qpow(0))),
        )
        record("q1[%d]" % i, mat_mul(fld, e_shift, fac), e)
        for r in (-2, -1, 1, 2):
            e_r = _exp_matrix_scaled(module, n, qpow(2 * r))
            xr = mat_pow(fld, xi if r > 0 else x, abs(r))
            yr = mat_pow(fld, yi if r > 0 else y, abs(r))
            record("5511[%d,r=%d]" % (i, r), e_r, mat_mul(fld, e, mat_mul(fld, xr, yr)))
            record("5512[%d,r=%d]" % (i, r), e_r, mat_mul(fld, mat_mul(fld, xr, yr), e))
        inv_conj = {
            "thm9.3": (einv, module.mats[(i + 3) % 4], e, algebra.theorem93_rhs(i)),
            "thm9.4": (e, module.mats[(i + 3) % 4], einv, algebra.theorem94_rhs(i)),
            "thm9.5": (einv, module.mats[(i + 2) % 4], e, algebra.theorem95_rhs(i)),
            "thm9.6": (e, module.mats[(i + 2) % 4], einv, algebra.theorem96_rhs(i)),
        }
        for name, (a, mid, b, rhs_poly) in inv_conj.items():
            lhs = mat_mul(fld, mat_mul(fld, a, mid), b)
            rhs = eval_poly(module, rhs_poly, inverses)
            record("%s[%d]" % (name, i), lhs, rhs)
    return out


def _exp_matrix_scaled(module, n, scalar):
    fld = module.field
    return _exp_matrix(module, mat_scale(fld, n, fld.from_scalar(scalar)))


def _rational_roots(fld, coeffs):
    """Roots in the working field of an exact polynomial, with certainty
    whether all roots were found in-field."""
    if isinstance(fld, SpecializedField):
        # clear to integer coefficients and enumerate rational candidates
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // _gcd(den, f.denominator)
        ints = [int(f * den) for f in fracs]
        while ints and ints[-1] == 0:
            ints.pop()
        roots = []
        poly = ints
        # deflate repeatedly by each rational root found
        changed = True
        while changed and len(poly) > 1:
            changed = False
            lead, const = poly[-1], poly[0]
            if const == 0:
                roots.append(Fraction(0))
                poly = poly[1:]
                changed = True
                continue
            for p in _divisors(abs(const)):
                for r in _divisors(abs(lead)):
                    for cand in (Fraction(p, r), Fraction(-p, r)):
                        if _poly_eval_frac(poly, cand) == 0:
                            roots.append(cand)
                            poly = _deflate(poly, cand)
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
        return roots, len(poly) <= 1
    return [], False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    out += [n // d for d in reversed(out) if d != n // d]
    return out


def _poly_eval_frac(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs, root):
    """Synthetic division by (x - root); exact when root is a true root."""
    quot = []
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * root + c
        quot.append(acc)
    quot.pop()  # remainder, zero for a root
    return list(reversed(quot))


def _triangular_eigenvalues(fld, mat):
    d = len(mat)
    lower = all(fld.is_zero(mat[i][j]) for i in range(d) for j in range(i + 1, d))
    upper = all(fld.is_zero(mat[i][j]) for i in range(d) for j in range(i))
    if lower or upper:
        return [mat[i][i] for i in range(d)], True
    return [], False


def check_ladder(module, nils):
    """Generalized eigenspace ladder: the pair element maps the eigenspace
    of theta into the eigenspace of q^-2 theta, and kills it after the
    in-field eigenvalue chain ends."""
    fld = module.field
    d = module.dimension
    out = []
    if isinstance(fld, SpecializedField):
        q2inv = fld.from_scalar(qpow(-2))
    else:
        q2inv = qpow(-2)
    for i in range(4):
        x = module.mats[i]
        eigs, complete = _triangular_eigenvalues(fld, x)
        if not eigs:
            eigs, complete = _rational_roots(fld, charpoly(fld, x))
        if not eigs:
            out.append(
                {
                    "generator": "x%d" % i,
                    "skipped": "no eigenvalues found in the working field",
                }
            )
            continue
        uniq = []
        for t in eigs:
            if not any(u == t for u in uniq):
                uniq.append(t)
        eigset = uniq
        n = nils[i]
        for theta in eigset:
            if fld.is_zero(theta):
                out.append(
                    {
                        "generator": "x%d" % i,
                        "eigenvalue": fld.to_str(theta),
                        "ok": False,
                        "witness": "zero eigenvalue contradicts invertibility",
                    }
                )
                continue
            vtheta = _gen_eigenspace(fld, x, theta, d)
            target = _gen_eigenspace(fld, x, fld.mul(q2inv, theta), d)
            ok = _subspace_of(fld, [_mat_vec(fld, n, v) for v in vtheta], target)
            # ladder termination: chain length until the eigenvalue leaves
            m = 1
            cur = fld.mul(q2inv, theta)
            while any(c == cur for c in eigset):
                m += 1
                cur = fld.mul(q2inv, cur)
            nm = mat_pow(fld, n, m)
            killed = all(
                all(fld.is_zero(c) for c in _mat_vec(fld, nm, v)) for v in vtheta
            )
            item = {
                "generator": "x%d" % i,
                "eigenvalue": fld.to_str(theta),
                "ok": ok and killed,
                "chain_length": m,
            }
            if not ok:
                item["witness"] = "ladder step leaves the target eigenspace"
            elif not killed:
                item["witness"] = "chain power fails to annihilate the eigenspace"
            out.append(item)
        if not complete:
            out.append(
                {
                    "generator": "x%d" % i,
                    "skipped": "characteristic polynomial does not split in-field",
                }
            )
    return out


def _mat_vec(fld, m, v):
    return tuple(
        _dot(fld, row, v) for row in m
    )


def _dot(fld, row, v):
    acc = fld.zero
    for x, y in zip(row, v):
        if not fld.is_zero(x) and not fld.is_zero(y):
            acc = fld.add(acc, fld.mul(x, y))
    return acc


def _gen_eigenspace(fld, a, theta, d):
    shifted = tuple(
        tuple(fld.sub(x, theta) if i == j else x for j, x in enumerate(row))
        for i, row in enumerate(a)
    )
    return mat_kernel_basis(fld, mat_pow(fld, shifted, d))


def _subspace_of(fld, vectors, basis):
    if not vectors:
        return True
    base_rows = [list(b) for b in basis]
    rank0 = mat_rank(fld, base_rows) if base_rows else 0
    for v in vectors:
        if all(fld.is_zero(c) for c in v):
            continue
        if mat_rank(fld, base_rows + [list(v)]) != rank0:
            return False
    return True


def verify_module(module):
    """Full report; later stages run only when their preconditions pass."""
    rep = ModuleReport(dimension=module.dimension, field_name=getattr(module.field, "name", "generic"))
    rep.relation_checks = check_relations(module)
    if not rep.relations_pass():
        return rep
    inv_items, inverses = check_invertible(module)
    rep.invertibility = inv_items
    for item in inv_items:
        if not item["ok"]:
            # a relation-passing module with a singular generator would
            # contradict the invertibility theorem; surface it loudly
            rep.contradictions.append(
                {"claim": "invertibility", "generator": item["generator"]}
            )
    if rep.contradictions:
        return rep
    nil_items, nils = check_nilpotent(module)
    rep.nilpotency = nil_items
    for item in nil_items:
        if not item["ok"]:
            rep.contradictions.append({"claim": "nilpotency", "pair": item["pair"]})
    if rep.contradictions:
        return rep
    rep.theorem_checks = check_theorems(module, inverses, nils)
    rep.ladder_checks = check_ladder(module, nils)
    return rep


# ---------------------------------------------------------------------------
# corpus constructors and module files
# ---------------------------------------------------------------------------


def onedim_module(t, q0=None):
    """The one-dimensional family: generators act as (t, 1/t, t, 1/t)."""
    if q0 is not None:
        fld = SpecializedField(q0)
        t = Fraction(t)
        if t == 0:
            raise ValueError("t must be nonzero")
        ti = 1 / t
        mats = (((t,),), ((ti,),), ((t,),), ((ti,),))
        return MatrixModule(1, fld, mats)
    fld = GenericField
    if not isinstance(t, RatFunc):
        t = from_fraction(Fraction(t))
    if t.is_zero():
        raise ValueError("t must be nonzero")
    ti = t.inverse()
    mats = (((t,),), ((ti,),), ((t,),), ((ti,),))
    return MatrixModule(1, fld, mats)


def direct_sum(m1, m2):
    """Block-diagonal join of two modules over the same field."""
    same = (m1.field is m2.field) or (
        isinstance(m1.field, SpecializedField)
        and isinstance(m2.field, SpecializedField)
        and m1.field.q0 == m2.field.q0
    )
    if not same:
        raise ValueError("direct summands must share the coefficient field")
    fld = m1.field
    d1, d2 = m1.dimension, m2.dimension
    mats = []
    for i in range(4):
        top = [tuple(row) + (fld.zero,) * d2 for row in m1.mats[i]]
        bot = [(fld.zero,) * d1 + tuple(row) for row in m2.mats[i]]
        mats.append(tuple(top + bot))
    return MatrixModule(d1 + d2, fld, tuple(mats))


def load_module(payload):
    """Build a MatrixModule from the documented JSON structure."""
    if isinstance(payload, str):
        payload = json.loads(payload)
    d = payload["dimension"]
    qspec = payload.get("q", "generic")
    if qspec == "generic":
        fld = GenericField

        def conv(s):
            return parse_scalar(str(s))

    else:
        fld = SpecializedField(Fraction(qspec))

        def conv(s):
            return eval_at(parse_scalar(str(s)), fld.q0)

    mats = []
    for name in ("x0", "x1", "x2", "x3"):
        rows = payload["matrices"][name]
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError("matrix %s is not %d x %d" % (name, d, d))
        mats.append(tuple(tuple(conv(x) for x in row) for row in rows))
    return MatrixModule(d, fld, tuple(mats))


def dump_module(module):
    fld = module.field
    payload = {
        "dimension": module.dimension,
        "q": "generic" if module.is_generic else str(fld.q0),
        "matrices": {
            "x%d" % i: [[fld.to_str(x) for x in row] for row in module.mats[i]]
            for i in range(4)
        },
    }
    return payload
