"""Truncated localized pair algebra for one adjacent generator pair.

Fix a pair (x, y) = (x_i, x_{i+1}) and a truncation order N.  The algebra
is spanned by {x^a n^m : a >= 1, m < N} and {n^m y^b : b >= 0, m < N},
where n is the nilpotent pair element with n^N = 0 and

    x y = 1 - q^-1 (q - q^-1) n        n x = q^2 x n
    y x = 1 - q   (q - q^-1) n         n y = q^-2 y n

Both 1 - lambda*n factors are units under the truncation, so x and y are
invertible here and every exp-conjugation identity of the catalog becomes
a finite exact computation with no ideal search.
"""

from __future__ import annotations

from .ncpoly import NCPoly
from .qcoeff import GenericField, expcoef, qpow

Q = qpow(1)
QINV = qpow(-1)
QMINUS = Q - QINV


class PairError(ValueError):
    pass


class PairContext:
    """Multiplication tables and caches for one (pair_index, N, field)."""

    def __init__(self, pair_index, trunc, field=GenericField):
        if trunc < 1:
            raise PairError("truncation order must be >= 1")
        self.index = pair_index % 4
        self.trunc = trunc
        self.field = field
        self._mixed_xy = {}
        self._mixed_yx = {}
        self._qpow = {}
        self._letters = None

    # scalar helpers ----------------------------------------------------
    def qp(self, k):
        v = self._qpow.get(k)
        if v is None:
            v = self.field.from_scalar(qpow(k))
            self._qpow[k] = v
        return v

    def scalar(self, c):
        return self.field.from_scalar(c)

    # element construction ----------------------------------------------
    def zero(self):
        return PairElem(self, {})

    def one(self):
        return PairElem(self, {("y", 0, 0): self.field.one})

    def x_power(self, a, m=0):
        if a < 1:
            raise PairError("x-side exponent must be >= 1")
        return PairElem(self, {("x", a, m): self.field.one} if m < self.trunc else {})

    def y_power(self, b, m=0):
        return PairElem(self, {("y", b, m): self.field.one} if m < self.trunc else {})

    def nil_power(self, m):
        return self.y_power(0, m)

    # basis product kernels ----------------------------------------------
    def _mixed(self, table, key, builder):
        v = table.get(key)
        if v is None:
            v = builder(key)
            table[key] = v
        return v

    def mixed_xy(self, a, k, b):
        """x^a n^k y^b resolved into the two-sided basis."""
        if k >= self.trunc:
            return {}
        if b == 0:
            return {("x", a, k): self.field.one} if a else {("y", 0, k): self.field.one}
        if a == 0:
            return {("y", b, k): self.field.one}
        return self._mixed(self._mixed_xy, (a, k, b), self._build_mixed_xy)

    def _build_mixed_xy(self, key):
        a, k, b = key
        fld = self.field
        # x^a n^k y^b = q^(-2kb) (x^a y^b) n^k
        core = self._addmul({}, self.mixed_xy(a - 1, 0, b - 1), fld.one)
        lam = fld.neg(self.scalar(QINV * QMINUS))
        core = self._addmul(core, self.mixed_xy(a - 1, 1, b - 1), lam)
        out = {}
        tw = self.qp(-2 * k * b)
        for (side, e, m), c in core.items():
            if m + k >= self.trunc:
                continue
            c = fld.mul(c, tw)
            if side == "y":
                # append n^k to n^m y^e
                c = fld.mul(c, self.qp(2 * e * k))
            self._acc(out, (side, e, m + k), c)
        return out

    def mixed_yx(self, b, k, a):
        """y^b n^k x^a resolved into the two-sided basis."""
        if k >= self.trunc:
            return {}
        if b == 0:
            if a == 0:
                return {("y", 0, k): self.field.one}
            return {("x", a, k): self.qp(2 * k * a)}
        if a == 0:
            return {("y", b, k): self.qp(2 * k * b)}
        return self._mixed(self._mixed_yx, (b, k, a), self._build_mixed_yx)

    def _build_mixed_yx(self, key):
        b, k, a = key
        fld = self.field
        # y^b n^k x^a = q^(2ka) (y^b x^a) n^k
        core = self._addmul({}, self.mixed_yx(b - 1, 0, a - 1), fld.one)
        lam = fld.neg(self.scalar(Q * QMINUS))
        core = self._addmul(core, self.mixed_yx(b - 1, 1, a - 1), lam)
        out = {}
        tw = self.qp(2 * k * a)
        for (side, e, m), c in core.items():
            if m + k >= self.trunc:
                continue
            c = fld.mul(c, tw)
            if side == "y":
                c = fld.mul(c, self.qp(2 * e * k))
            self._acc(out, (side, e, m + k), c)
        return out

    def _acc(self, d, key, c):
        fld = self.field
        s = d.get(key, fld.zero)
        s = fld.add(s, c)
        if fld.is_zero(s):
            d.pop(key, None)
        else:
            d[key] = s

    def _addmul(self, acc, terms, coeff):
        fld = self.field
        for key, c in terms.items():
            self._acc(acc, key, fld.mul(c, coeff))
        return acc

    def mono_mul(self, k1, k2):
        """Product of two basis monomials as a coefficient dict."""
        s1, e1, m1 = k1
        s2, e2, m2 = k2
        fld = self.field
        N = self.trunc
        if s1 == "x" and s2 == "x":
            # x^e1 n^m1 x^e2 n^m2
            if m1 + m2 >= N:
                return {}
            return {("x", e1 + e2, m1 + m2): self.qp(2 * m1 * e2)}
        if s1 == "y" and s2 == "y":
            # (n^m1 y^e1)(n^m2 y^e2): push y^e1 through n^m2
            if m1 + m2 >= N:
                return {}
            return {("y", e1 + e2, m1 + m2): self.qp(2 * e1 * m2)}
        if s1 == "x" and s2 == "y":
            # x^e1 n^(m1+m2) y^e2
            return self.mixed_xy(e1, m1 + m2, e2)
        # (n^m1 y^e1) (x^e2 n^m2): resolve y^e1 x^e2 then dress with n powers
        core = self.mixed_yx(e1, 0, e2)
        out = {}
        for (side, e, m), c in core.items():
            mm = m + m1 + m2
            if mm >= N:
                continue
            if side == "x":
                c = fld.mul(c, self.qp(2 * m1 * e))
            if side == "y" and m2:
                c = fld.mul(c, self.qp(2 * e * m2))
            self._acc(out, (side, e, mm), c)
        return out

    # derived elements ----------------------------------------------------
    def unit_inverse_lower(self):
        """(1 - q^-1(q-q^-1) n)^-1 as a geometric sum, exact under n^N = 0."""
        lam = QINV * QMINUS
        coeffs = {}
        for j in range(self.trunc):
            coeffs[("y", 0, j)] = self.scalar(lam**j)
        return PairElem(self, coeffs)

    def x_inv(self):
        """Inverse of x: y (1 - q^-1(q-q^-1) n)^-1."""
        return self.y_power(1).mul(self.unit_inverse_lower())

    def y_inv(self):
        """Inverse of y: (1 - q^-1(q-q^-1) n)^-1 x."""
        return self.unit_inverse_lower().mul(self.x_power(1))

    def letter_elems(self):
        if self._letters is None:
            i = self.index
            self._letters = {
                2 * i: self.x_power(1),
                2 * ((i + 1) % 4): self.y_power(1),
                2 * i + 1: self.x_inv(),
                2 * ((i + 1) % 4) + 1: self.y_inv(),
            }
        return self._letters

    def embed(self, p):
        """Embed an NCPoly over this pair's letters; an algebra map."""
        letters = self.letter_elems()
        acc = self.zero()
        for w, c in p.terms.items():
            elem = self.one()
            for code in w:
                e = letters.get(code)
                if e is None:
                    raise PairError(
                        "letter x%d%s is outside pair (%d, %d)"
                        % (code >> 1, "^-1" if code & 1 else "", self.index, (self.index + 1) % 4)
                    )
                elem = elem.mul(e)
            acc = acc.add(elem.scale_scalar(c))
        return acc

    def exp_elem(self, inverse=False):
        """Truncated q-exponential of the pair element (or its inverse)."""
        coeffs = {}
        for m in range(self.trunc):
            coeffs[("y", 0, m)] = self.scalar(expcoef(m, inverse))
        return PairElem(self, coeffs)


class PairElem:
    """Element of the truncated pair algebra, tied to its context."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    @property
    def x_side(self):
        return {(a, m): c for (s, a, m), c in self.coeffs.items() if s == "x"}

    @property
    def y_side(self):
        return {(b, m): c for (s, b, m), c in self.coeffs.items() if s == "y"}

    def _check(self, other):
        if self.ctx.index != other.ctx.index or self.ctx.trunc != other.ctx.trunc:
            raise PairError("pair index or truncation mismatch")

    def is_zero(self):
        return not self.coeffs

    def add(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            self.ctx._acc(out, k, c)
        return PairElem(self.ctx, out)

    def sub(self, other):
        self._check(other)
        fld = self.ctx.field
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            self.ctx._acc(out, k, fld.neg(c))
        return PairElem(self.ctx, out)

    def scale_scalar(self, c):
        """Scale by a generic coefficient (converted through the field)."""
        return self.scale(self.ctx.field.from_scalar(c))

    def scale(self, c):
        fld = self.ctx.field
        if fld.is_zero(c):
            return self.ctx.zero()
        return PairElem(self.ctx, {k: fld.mul(v, c) for k, v in self.coeffs.items()})

    def mul(self, other):
        self._check(other)
        ctx = self.ctx
        fld = ctx.field
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                c = fld.mul(c1, c2)
                for k, v in ctx.mono_mul(k1, k2).items():
                    ctx._acc(out, k, fld.mul(c, v))
        return PairElem(ctx, out)

    def project(self, new_trunc):
        """Image in the smaller truncation (drop the top nil coefficients)."""
        if new_trunc > self.ctx.trunc:
            raise PairError("projection cannot raise the truncation")
        ctx = PairContext(self.ctx.index, new_trunc, self.ctx.field)
        return PairElem(ctx, {k: c for k, c in self.coeffs.items() if k[2] < new_trunc})

    def __eq__(self, other):
        if not isinstance(other, PairElem):
            return NotImplemented
        self._check(other)
        return self.coeffs == other.coeffs

    def __repr__(self):
        return "PairElem(%s)" % format_pair_elem(self)


def canonical_eq(u, v):
    """Structural equality of normalized coefficient maps."""
    return u == v


def format_pair_elem(e):
    fld = e.ctx.field
    parts = []
    for (side, a, m), c in sorted(e.coeffs.items()):
        if side == "x":
            word = "x^%d" % a + ("*n^%d" % m if m else "")
        else:
            word = ("n^%d" % m if m else "") + ("*" if m and a else "") + ("y^%d" % a if a else "")
            word = word or "1"
        parts.append("(%s)*%s" % (fld.to_str(c), word))
    return " + ".join(parts) if parts else "0"


def verify_pair_identity(diff, pair_index, trunc, field=GenericField):
    """Embed a catalog difference polynomial; True iff exactly zero in P_N."""
    ctx = PairContext(pair_index, trunc, field)
    return ctx.embed(diff).is_zero()


def verify_vip(which, pair_index, trunc, field=GenericField):
    """Conjugation identities computed directly inside the pair algebra.

    Independent of the free-polynomial expansion route: the exponentials
    are built on the nil basis and the conjugation is three products.
    """
    ctx = PairContext(pair_index, trunc, field)
    e = ctx.exp_elem()
    einv = ctx.exp_elem(inverse=True)
    x, y = ctx.x_power(1), ctx.y_power(1)
    if which == "vip1":
        lhs, rhs = einv.mul(y).mul(e), ctx.x_inv()
    elif which == "vip2":
        lhs, rhs = e.mul(x).mul(einv), ctx.y_inv()
    elif which == "vip3":
        lhs, rhs = einv.mul(x).mul(e), x.mul(y).mul(x)
    elif which == "vip4":
        lhs, rhs = e.mul(y).mul(einv), y.mul(x).mul(y)
    else:
        raise ValueError("unknown conjugation identity %r" % which)
    return canonical_eq(lhs, rhs)


def verify_55(which, pair_index, r, trunc, field=GenericField):
    """Weight-shifted exponential identities, directly in the pair algebra."""
    ctx = PairContext(pair_index, trunc, field)
    lhs = ctx.zero()
    for m in range(trunc):
        lhs = lhs.add(ctx.nil_power(m).scale_scalar(expcoef(m) * qpow(2 * r * m)))
    mono = ctx.one()
    xinv, yinv = ctx.x_inv(), ctx.y_inv()
    x, y = ctx.x_power(1), ctx.y_power(1)
    for _ in range(abs(r)):
        mono = mono.mul(xinv if r > 0 else x)
    for _ in range(abs(r)):
        mono = mono.mul(yinv if r > 0 else y)
    e = ctx.exp_elem()
    rhs = e.mul(mono) if which == "5511" else mono.mul(e)
    return canonical_eq(lhs, rhs)


def verify_inv(which, pair_index, trunc, field=GenericField):
    """Inverse-generator identities, directly in the pair algebra."""
    ctx = PairContext(pair_index, trunc, field)
    x, y = ctx.x_power(1), ctx.y_power(1)
    xi, yi = ctx.x_inv(), ctx.y_inv()
    cq = field.from_scalar(Q)
    cqi = field.from_scalar(QINV)
    if which == "inv11":
        lhs = y.mul(xi).scale(cq).sub(xi.mul(y).scale(cqi))
        rhs = xi.mul(xi).scale_scalar(QMINUS)
    elif which == "inv12":
        lhs = yi.mul(x).scale(cq).sub(x.mul(yi).scale(cqi))
        rhs = yi.mul(yi).scale_scalar(QMINUS)
    elif which == "inv21":
        lhs = (
            xi.mul(xi).mul(yi).scale(cq).add(yi.mul(xi).mul(xi).scale(cqi))
        ).scale_scalar((Q + QINV).inverse())
        rhs = yi.mul(xi).mul(y).mul(xi).mul(yi)
    elif which == "inv22":
        lhs = (
            xi.mul(yi).mul(yi).scale(cq).add(yi.mul(yi).mul(xi).scale(cqi))
        ).scale_scalar((Q + QINV).inverse())
        rhs = xi.mul(yi).mul(x).mul(yi).mul(xi)
    else:
        raise ValueError("unknown inverse identity %r" % which)
    return canonical_eq(lhs, rhs)
