"""Exact arithmetic in Q(q): the coefficient field of the whole engine.

A RatFunc is kept in a unique canonical form

    value = c * q**e * num(q) / den(q)

with c a nonzero Fraction, e an integer (the Laurent shift), and num,
den primitive coprime integer polynomials with positive leading
coefficient and nonzero constant term.  Equality is therefore a
structural check.  Zero is the unique (0, 0, (1,), (1,)).

No floating point anywhere; specialization at a rational q0 is exact
and rejects q0 in {0, 1, -1}.
"""

from __future__ import annotations

from fractions import Fraction

from ._kern import (
    padd,
    pdivexact,
    pgcd,
    pmul,
    pneg,
    pnorm,
    pprim,
    pscale,
    peval_frac,
)

BigRational = Fraction

_ONE_POLY = (1,)


class RatFunc:
    """Rational function in q over the rationals, canonically normalized."""

    __slots__ = ("c", "e", "num", "den")

    def __init__(self, c, e, num, den, _raw=False):
        if _raw:
            self.c = c
            self.e = e
            self.num = num
            self.den = den
            return
        r = _make(Fraction(c), e, tuple(num), tuple(den))
        self.c = r.c
        self.e = r.e
        self.num = r.num
        self.den = r.den

    def __bool__(self):
        return self.c != 0

    def is_zero(self):
        return self.c == 0

    def is_one(self):
        return self.c == 1 and self.e == 0 and self.num == _ONE_POLY and self.den == _ONE_POLY

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (
            self.c == other.c
            and self.e == other.e
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.c, self.e, self.num, self.den))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.c == 0:
            return other
        if other.c == 0:
            return self
        e = min(self.e, other.e)
        g = pgcd(self.den, other.den)
        da = pdivexact(self.den, g)
        db = pdivexact(other.den, g)
        # common rational denominator for the two Fraction scales
        ra, rb = self.c, other.c
        lcm_den = ra.denominator * rb.denominator // _gcd_int(ra.denominator, rb.denominator)
        ia = ra.numerator * (lcm_den // ra.denominator)
        ib = rb.numerator * (lcm_den // rb.denominator)
        ta = pscale(_qshift(self.num, self.e - e), ia)
        tb = pscale(_qshift(other.num, other.e - e), ib)
        n = padd(pmul(ta, db), pmul(tb, da))
        d = pmul(pmul(da, g), db)
        return _make(Fraction(1, lcm_den), e, n, d)

    __radd__ = __add__

    def __neg__(self):
        if self.c == 0:
            return self
        return RatFunc(-self.c, self.e, self.num, self.den, _raw=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.c == 0 or other.c == 0:
            return RF_ZERO
        g1 = pgcd(self.num, other.den)
        g2 = pgcd(other.num, self.den)
        n = pmul(pdivexact(self.num, g1), pdivexact(other.num, g2))
        d = pmul(pdivexact(self.den, g2), pdivexact(other.den, g1))
        return _make(self.c * other.c, self.e + other.e, n, d)

    __rmul__ = __mul__

    def inverse(self):
        if self.c == 0:
            raise ZeroDivisionError("division by zero in Q(q)")
        return _make(1 / self.c, -self.e, self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = RF_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __repr__(self):
        return "RatFunc(%s)" % format_scalar(self)

    def __str__(self):
        return format_scalar(self)


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _qshift(p, k):
    if k == 0 or not p:
        return p
    return tuple([0] * k) + tuple(p)


def _make(c, e, num, den):
    """Normalize into canonical form; the only constructor path."""
    num = pnorm(num)
    den = pnorm(den)
    if not den:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if c == 0 or not num:
        return RF_ZERO
    # strip q-power factors into the Laurent shift
    k = 0
    while num[k] == 0:
        k += 1
    if k:
        e += k
        num = num[k:]
    k = 0
    while den[k] == 0:
        k += 1
    if k:
        e -= k
        den = den[k:]
    cn, num = pprim(num)
    cd, den = pprim(den)
    c = c * Fraction(cn, cd)
    g = pgcd(num, den)
    if g != _ONE_POLY:
        num = pdivexact(num, g)
        den = pdivexact(den, g)
    return RatFunc(c, e, num, den, _raw=True)


def _coerce(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, (int, Fraction)):
        return _make(Fraction(v), 0, _ONE_POLY, _ONE_POLY)
    return NotImplemented


RF_ZERO = RatFunc(Fraction(0), 0, _ONE_POLY, _ONE_POLY, _raw=True)
RF_ONE = RatFunc(Fraction(1), 0, _ONE_POLY, _ONE_POLY, _raw=True)
Q = RatFunc(Fraction(1), 1, _ONE_POLY, _ONE_POLY, _raw=True)


def from_int(n):
    return _coerce(n)


def from_fraction(f):
    return _coerce(Fraction(f))


def qpow(k):
    """q**k for any integer k."""
    return RatFunc(Fraction(1), k, _ONE_POLY, _ONE_POLY, _raw=True)


def field_arith(a, b, op):
    """Dispatch basic field arithmetic by name; div checks for zero."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    raise ValueError("unknown field operation %r" % op)


_QINT_CACHE = {}


def qint(n):
    """The balanced q-integer (q^n - q^-n)/(q - q^-1)."""
    r = _QINT_CACHE.get(n)
    if r is None:
        if n == 0:
            r = RF_ZERO
        elif n < 0:
            r = -qint(-n)
        else:
            # q^(1-n) * (1 + q^2 + ... + q^(2n-2))
            num = tuple(1 if i % 2 == 0 else 0 for i in range(2 * n - 1))
            r = _make(Fraction(1), 1 - n, num, _ONE_POLY)
        _QINT_CACHE[n] = r
    return r


_QFAC_CACHE = {0: RF_ONE}


def qfac(n):
    """Product of the q-integers 1..n; empty product is 1."""
    if n < 0:
        raise ValueError("q-factorial needs n >= 0")
    r = _QFAC_CACHE.get(n)
    if r is None:
        r = qfac(n - 1) * qint(n)
        _QFAC_CACHE[n] = r
    return r


_EXPCOEF_CACHE = {}


def expcoef(m, inverse=False):
    """Series coefficient of the q-exponential or of its inverse.

    Forward: q^binom(m,2) / [m]!.  Inverse: (-1)^m q^-binom(m,2) / [m]!.
    """
    key = (m, inverse)
    r = _EXPCOEF_CACHE.get(key)
    if r is None:
        binom = m * (m - 1) // 2
        if inverse:
            r = qpow(-binom) / qfac(m)
            if m % 2:
                r = -r
        else:
            r = qpow(binom) / qfac(m)
        _EXPCOEF_CACHE[key] = r
    return r


def subst_qinv(a):
    """Substitute q -> 1/q and renormalize; an involution."""
    if a.c == 0:
        return a
    dn = len(a.num) - 1
    dd = len(a.den) - 1
    num = tuple(reversed(a.num))
    den = tuple(reversed(a.den))
    return _make(a.c, -a.e - dn + dd, num, den)


def eval_at(a, q0):
    """Exact value of a at a rational q0 outside {0, 1, -1}."""
    q0 = Fraction(q0)
    if q0 in (Fraction(0), Fraction(1), Fraction(-1)):
        raise ValueError("specialization at q0 in {0, 1, -1} is forbidden")
    if a.c == 0:
        return Fraction(0)
    d = peval_frac(a.den, q0)
    if d == 0:
        raise ZeroDivisionError("denominator vanishes at q0 = %s" % q0)
    return a.c * q0**a.e * peval_frac(a.num, q0) / d


def _format_intpoly(p, e=0):
    """Render sum of p[i] * q^(i+e) in descending powers."""
    parts = []
    for i in range(len(p) - 1, -1, -1):
        cf = p[i]
        if cf == 0:
            continue
        k = i + e
        if k == 0:
            mono = str(abs(cf))
        else:
            qs = "q" if k == 1 else "q^%d" % k
            mono = qs if abs(cf) == 1 else "%d*%s" % (abs(cf), qs)
        if not parts:
            parts.append(mono if cf > 0 else "-" + mono)
        else:
            parts.append((" + " if cf > 0 else " - ") + mono)
    return "".join(parts) if parts else "0"


def _nterms(p):
    return sum(1 for v in p if v)


def format_scalar(a):
    """Canonical text form, re-parsable by the shared scalar grammar."""
    if a.c == 0:
        return "0"
    num_poly = pscale(a.num, a.c.numerator)
    if a.den == _ONE_POLY and a.c.denominator == 1:
        return _format_intpoly(num_poly, a.e)
    num_s = _format_intpoly(num_poly, a.e)
    if _nterms(num_poly) > 1:
        num_s = "(" + num_s + ")"
    den_poly = pscale(a.den, a.c.denominator)
    den_s = _format_intpoly(den_poly, 0)
    if _nterms(den_poly) > 1:
        den_s = "(" + den_s + ")"
    return "%s/%s" % (num_s, den_s)


def scalar_is_monomial(a):
    """True when a formats as a single signed Laurent monomial."""
    return a.den == _ONE_POLY and a.c.denominator == 1 and _nterms(a.num) == 1


class GenericField:
    """Field interface over exact rational functions in q."""

    name = "generic"

    zero = RF_ZERO
    one = RF_ONE

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def is_zero(a):
        return a.c == 0

    @staticmethod
    def from_scalar(a):
        return a

    @staticmethod
    def from_int(n):
        return from_int(n)

    @staticmethod
    def to_str(a):
        return format_scalar(a)


class SpecializedField:
    """Field interface over Fraction values at a fixed rational q0."""

    def __init__(self, q0):
        q0 = Fraction(q0)
        if q0 in (Fraction(0), Fraction(1), Fraction(-1)):
            raise ValueError("q0 in {0, 1, -1} is not allowed")
        self.q0 = q0
        self.name = "q0=%s" % q0
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def is_zero(a):
        return a == 0

    def from_scalar(self, a):
        return eval_at(a, self.q0)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def to_str(a):
        return str(a)
