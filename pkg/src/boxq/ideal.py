"""Bounded-degree two-sided ideal membership by exact sparse elimination.

A query spans {u * r * v} over all context words u, v within the degree
bound and the allowed alphabet, then eliminates exactly over Q(q) (or
over Q at a specialized q0).  A Member verdict carries a certificate
that re-expands to the target; NotFoundAtBound is inconclusive by
contract, never a disproof.

For generic-field queries a specialized elimination at an internal
probe point runs first to locate a candidate certificate support; the
generic solve is then restricted to that support, falling back to the
full generic elimination when the restriction fails.  Verdicts are
always backed by exact generic arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import algebra
from .ncpoly import NCPoly, word_concat, word_key
from .qcoeff import GenericField, SpecializedField

_PROBE_Q0 = Fraction(7, 2)


@dataclass(frozen=True)
class RelationId:
    """Names one defining relation family member.

    kind 'weyl' relates (x_i, x_{i+1}); kind 'serre' relates (x_i, x_{i+2});
    'inv_cancel' is the built-in free cancellation (never needed as a row,
    words are freely reduced by representation).
    """

    kind: str
    index: int

    def poly(self):
        if self.kind == "weyl":
            return algebra.weyl_rel(self.index)
        if self.kind == "serre":
            return algebra.serre_rel(self.index)
        raise ValueError("no explicit polynomial for %r" % (self,))


@dataclass
class MembershipQuery:
    target: NCPoly
    relations: list
    alphabet: tuple
    degree_bound: int
    linear_index: int | None = None
    field: object = GenericField
    max_rows: int = 200_000

    def relation_polys(self):
        return [r.poly() if isinstance(r, RelationId) else r for r in self.relations]


@dataclass
class MembershipVerdict:
    status: str  # "member" | "not_found_at_bound"
    certificate: list | None = None  # entries (coeff, u, relation_index, v)
    rows_used: int = 0
    detail: str = ""

    @property
    def is_member(self):
        return self.status == "member"


class ResourceLimit(RuntimeError):
    pass


def _terms_of(p, fld):
    """NCPoly -> dict of field coefficients keyed by word."""
    out = {}
    for w, c in p.terms.items():
        v = fld.from_scalar(c)
        if not fld.is_zero(v):
            out[w] = v
    return out


def _scale_shift(terms, u, v, fld, coeff=None):
    out = {}
    for w, c in terms.items():
        nw = word_concat(word_concat(u, w), v)
        nc = c if coeff is None else fld.mul(c, coeff)
        s = out.get(nw)
        s = nc if s is None else fld.add(s, nc)
        if fld.is_zero(s):
            out.pop(nw, None)
        else:
            out[nw] = s
    return out


class Eliminator:
    """Incremental exact Gaussian elimination with combination tracking."""

    def __init__(self, fld):
        self.fld = fld
        self.pivots = {}  # lead word -> (row dict, combo dict)
        self.nrows = 0

    def _axpy(self, row, combo, prow, pcombo, f):
        fld = self.fld
        for w, c in prow.items():
            s = row.get(w, fld.zero)
            s = fld.sub(s, fld.mul(f, c))
            if fld.is_zero(s):
                row.pop(w, None)
            else:
                row[w] = s
        for j, c in pcombo.items():
            s = combo.get(j, fld.zero)
            s = fld.sub(s, fld.mul(f, c))
            if fld.is_zero(s):
                combo.pop(j, None)
            else:
                combo[j] = s

    def _reduce(self, row, combo):
        fld = self.fld
        while row:
            lead = max(row, key=word_key)
            hit = self.pivots.get(lead)
            if hit is None:
                return lead
            prow, pcombo = hit
            f = fld.div(row[lead], prow[lead])
            self._axpy(row, combo, prow, pcombo, f)
        return None

    def add_row(self, row, src):
        """Insert one original row labelled src; returns True if independent."""
        row = dict(row)
        combo = {src: self.fld.one}
        lead = self._reduce(row, combo)
        if lead is None:
            return False
        self.pivots[lead] = (row, combo)
        self.nrows += 1
        return True

    def express(self, target):
        """Combination of original rows equal to target, or None."""
        row = dict(target)
        combo = {}
        lead = self._reduce(row, combo)
        if lead is not None:
            return None
        return {j: self.fld.neg(c) for j, c in combo.items()}


def _context_words(alphabet, max_len):
    """All freely reduced words over the alphabet, lengths 0..max_len."""
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for c in alphabet:
                if w and (w[-1] >> 1 == c >> 1) and w[-1] != c:
                    continue
                nxt.append(w + (c,))
        out.extend(nxt)
        frontier = nxt
    return out


def _index_count(w, idx):
    return sum(1 for c in w if c >> 1 == idx)


def _enumerate_rows(query, rel_terms_list, rel_polys):
    """Yield (u, rel_index, v) context triples within the query limits."""
    bound = query.degree_bound
    rows = []
    for ri, rel in enumerate(rel_polys):
        rdeg = rel.degree()
        budget = bound - rdeg
        if budget < 0:
            continue
        rel_linear = (
            max(_index_count(w, query.linear_index) for w in rel.terms)
            if query.linear_index is not None
            else 0
        )
        words = _context_words(tuple(query.alphabet), budget)
        for u in words:
            lu = len(u)
            if lu > budget:
                continue
            for v in words:
                if lu + len(v) > budget:
                    continue
                if query.linear_index is not None:
                    occ = (
                        _index_count(u, query.linear_index)
                        + _index_count(v, query.linear_index)
                        + rel_linear
                    )
                    if occ > 1:
                        continue
                rows.append((u, ri, v))
                if len(rows) > query.max_rows:
                    raise ResourceLimit(
                        "row cap exceeded (%d rows at bound %d)" % (query.max_rows, bound)
                    )
    return rows


def _solve(row_specs, rel_terms_list, target_terms, fld):
    """Run elimination; returns combo {row_position: coeff} or None."""
    elim = Eliminator(fld)
    for pos, (u, ri, v) in enumerate(row_specs):
        row = _scale_shift(rel_terms_list[ri], u, v, fld)
        if row:
            elim.add_row(row, pos)
    return elim.express(target_terms), elim.nrows


def member(query: MembershipQuery) -> MembershipVerdict:
    """Decide bounded-degree membership in the two-sided relation ideal."""
    rel_polys = query.relation_polys()
    if query.target.is_zero():
        return MembershipVerdict("member", certificate=[])
    if query.target.degree() > query.degree_bound:
        raise ValueError("target degree exceeds the degree bound")
    fld = query.field
    row_specs = _enumerate_rows(query, None, rel_polys)
    rel_terms = [_terms_of(r, fld) for r in rel_polys]
    target_terms = _terms_of(query.target, fld)

    combo = None
    rows_seen = 0
    if fld is GenericField:
        combo, rows_seen = _solve_generic_fast(row_specs, rel_polys, target_terms)
    if combo is None:
        combo, rows_seen = _solve(row_specs, rel_terms, target_terms, fld)

    if combo is None:
        return MembershipVerdict(
            "not_found_at_bound", rows_used=rows_seen, detail="bound %d" % query.degree_bound
        )
    cert = [(c, row_specs[pos][0], row_specs[pos][1], row_specs[pos][2]) for pos, c in combo.items()]
    return MembershipVerdict("member", certificate=cert, rows_used=rows_seen)


def _solve_generic_fast(row_specs, rel_polys, target_terms):
    """Probe at a fixed rational point to find a small candidate support,
    then solve exactly on that support only.  Returns (combo, rows) or
    (None, 0) when the shortcut does not apply."""
    probe = SpecializedField(_PROBE_Q0)
    try:
        rel_probe = [_terms_of(r, probe) for r in rel_polys]
        target_probe = {w: probe.from_scalar(c) for w, c in target_terms.items()}
    except ZeroDivisionError:
        return None, 0
    combo_p, _ = _solve(row_specs, rel_probe, target_probe, probe)
    if combo_p is None:
        return None, 0
    support = sorted(combo_p)
    sub_specs = [row_specs[pos] for pos in support]
    rel_terms = [_terms_of(r, GenericField) for r in rel_polys]
    combo, nrows = _solve(sub_specs, rel_terms, target_terms, GenericField)
    if combo is None:
        return None, 0
    return {support[j]: c for j, c in combo.items()}, nrows


def verify_certificate(query: MembershipQuery, verdict: MembershipVerdict) -> bool:
    """Re-expand the certificate exactly and compare with the target."""
    if not verdict.is_member:
        return False
    rel_polys = query.relation_polys()
    fld = query.field
    acc = {}
    for coeff, u, ri, v in verdict.certificate:
        part = _scale_shift(_terms_of(rel_polys[ri], fld), u, v, fld, coeff)
        for w, c in part.items():
            s = acc.get(w, fld.zero)
            s = fld.add(s, c)
            if fld.is_zero(s):
                acc.pop(w, None)
            else:
                acc[w] = s
    return acc == _terms_of(query.target, fld)


def specialize_certificate(query: MembershipQuery, verdict: MembershipVerdict, q0) -> bool:
    """Check that the generic certificate stays valid at a rational q0."""
    fld = SpecializedField(q0)
    spec = MembershipQuery(
        target=query.target,
        relations=query.relations,
        alphabet=query.alphabet,
        degree_bound=query.degree_bound,
        linear_index=query.linear_index,
        field=fld,
    )
    cert = [(fld.from_scalar(c), u, ri, v) for c, u, ri, v in verdict.certificate]
    return verify_certificate(spec, MembershipVerdict("member", certificate=cert))


def modnil_member(
    target,
    pair_index,
    nil_order,
    degree_bound,
    reducer,
    far_index=None,
    prefixes=None,
    suffixes=None,
    contexts=None,
    extra_nil=3,
    field=GenericField,
):
    """Membership modulo (relation ideal + two-sided ideal of the nil power).

    The target and every nil-power row are first strategy-reduced into
    the same normal-word coordinates; elimination runs over those
    coordinates.  degree_bound limits the context letters around the nil
    power (the nil power itself contributes its own fixed degree).

    Rows follow the template  prefix . n^j . [far] . n^k . suffix  with
    max(j, k) >= nil_order; arbitrary contexts reduce into combinations
    of these shapes.  Member verdicts carry a word-context certificate
    whose expansion is re-checked exactly by verify_modnil_certificate.
    """
    i = pair_index % 4
    x_code, y_code = 2 * i, 2 * ((i + 1) % 4)
    target_poly = target if isinstance(target, NCPoly) else NCPoly(dict(target))
    red_target = reducer(_terms_of(target_poly, field))
    if not red_target:
        return MembershipVerdict("member", certificate=[])

    if far_index is None:
        support = {c >> 1 for w in target_poly.terms for c in w}
        far = [j for j in support if j not in (i, (i + 1) % 4)]
        far_index = far[0] if far else None
    far_poly = NCPoly.gen(far_index) if far_index is not None else None

    if contexts is None:
        if prefixes is None:
            prefixes = [(), (x_code,), (y_code,), (x_code, y_code)]
        if suffixes is None:
            suffixes = [(), (x_code,), (y_code,)]
        contexts = [(p, s) for p in prefixes for s in suffixes]

    specs = []
    max_jk = nil_order + extra_nil
    for p, s in contexts:
        base = len(p) + len(s)
        for jk in range(nil_order, max_jk + 1):
            if base + 2 * (jk - nil_order) <= degree_bound:
                specs.append((p, jk, False, 0, s))
        if far_poly is not None:
            for j in range(max_jk + 1):
                for k in range(max_jk + 1 - j):
                    if max(j, k) < nil_order:
                        continue
                    if base + 1 + 2 * (j + k - nil_order) > degree_bound:
                        continue
                    specs.append((p, j, True, k, s))

    rows = []
    for spec in specs:
        p, j, f, k, s = spec
        poly = NCPoly.word(p) * algebra.npow(i, j)
        if f:
            poly = poly * far_poly
        if k:
            poly = poly * algebra.npow(i, k)
        poly = poly * NCPoly.word(s)
        row = reducer(_terms_of(poly, field))
        if row:
            rows.append((spec, row))

    combo = _modnil_fast(rows, red_target) if field is GenericField else None
    if combo is None:
        elim = Eliminator(field)
        for pos, (_, row) in enumerate(rows):
            elim.add_row(row, pos)
        combo = elim.express(red_target)
    if combo is None:
        return MembershipVerdict("not_found_at_bound", rows_used=len(rows))

    cert = []
    for pos, c in combo.items():
        p, j, f, k, s = rows[pos][0]
        if j >= nil_order:
            u_poly = NCPoly.word(p) * algebra.npow(i, j - nil_order)
            v_poly = (far_poly if f else NCPoly.one()) * algebra.npow(i, k) * NCPoly.word(s)
        else:
            u_poly = NCPoly.word(p) * algebra.npow(i, j)
            if f:
                u_poly = u_poly * far_poly
            u_poly = u_poly * algebra.npow(i, k - nil_order)
            v_poly = NCPoly.word(s)
        for wu, cu in u_poly.terms.items():
            for wv, cv in v_poly.terms.items():
                cc = field.mul(c, field.from_scalar(cu * cv))
                if not field.is_zero(cc):
                    cert.append((cc, wu, "nil", wv))
    return MembershipVerdict("member", certificate=cert, rows_used=len(rows))


def verify_modnil_certificate(
    target, pair_index, nil_order, verdict, reducer, field=GenericField
) -> bool:
    """Exact check: target minus the certificate expansion reduces to zero."""
    if not verdict.is_member:
        return False
    i = pair_index % 4
    nil_terms = _terms_of(algebra.npow(i, nil_order), field)
    target_poly = target if isinstance(target, NCPoly) else NCPoly(dict(target))
    acc = dict(_terms_of(target_poly, field))
    for c, wu, _, wv in verdict.certificate:
        part = _scale_shift(nil_terms, wu, wv, field, c)
        for w, v in part.items():
            s = acc.get(w, field.zero)
            s = field.sub(s, v)
            if field.is_zero(s):
                acc.pop(w, None)
            else:
                acc[w] = s
    return not reducer(acc)


def _modnil_fast(rows, red_target):
    probe = SpecializedField(_PROBE_Q0)

    def spec_row(row):
        out = {}
        for w, c in row.items():
            v = probe.from_scalar(c)
            if v:
                out[w] = v
        return out

    try:
        elim_p = Eliminator(probe)
        for pos, (_, row) in enumerate(rows):
            elim_p.add_row(spec_row(row), pos)
        combo_p = elim_p.express(spec_row(red_target))
    except ZeroDivisionError:
        return None
    if combo_p is None:
        return None
    support = sorted(combo_p)
    elim = Eliminator(GenericField)
    for pos in support:
        elim.add_row(rows[pos][1], pos)
    return elim.express(red_target)


def independence(polys, relations, alphabet, degree_bound, field=GenericField) -> bool:
    """True iff no nontrivial combination of polys lies in the bounded span."""
    rel_polys = [r.poly() if isinstance(r, RelationId) else r for r in relations]
    query = MembershipQuery(
        target=NCPoly.zero(),
        relations=rel_polys,
        alphabet=alphabet,
        degree_bound=degree_bound,
        field=field,
    )
    row_specs = _enumerate_rows(query, None, rel_polys)
    rel_terms = [_terms_of(r, field) for r in rel_polys]
    elim = Eliminator(field)
    for pos, (u, ri, v) in enumerate(row_specs):
        row = _scale_shift(rel_terms[ri], u, v, field)
        if row:
            elim.add_row(row, pos)
    # residuals of the candidate polynomials must stay linearly independent
    residual_elim = Eliminator(field)
    for k, p in enumerate(polys):
        row = dict(_terms_of(p, field))
        combo = {}
        lead = elim._reduce(row, combo)
        if lead is None:
            return False
        if not residual_elim.add_row(row, ("poly", k)):
            return False
    return True
