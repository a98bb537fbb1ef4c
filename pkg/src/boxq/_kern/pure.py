"""Pure-Python integer polynomial kernels.

Polynomials in q are tuples of int coefficients, little-endian: index i
holds the coefficient of q^i.  The zero polynomial is the empty tuple;
nonzero polynomials carry a nonzero last entry.  These routines are the
hot path under all exact rational-function arithmetic; a compiled twin
with the same surface lives in _speed.pyx and is preferred at import
time when available.
"""

from fractions import Fraction
from math import gcd as _igcd

IMPL = "pure"

# schoolbook multiplication below this cost estimate, Kronecker above
_KRONECKER_CUTOFF = 1024


def pnorm(coeffs):
    """Trim trailing zeros and return a tuple."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return pnorm(out)


def pneg(a):
    return tuple(-v for v in a)


def psub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, v in enumerate(b):
        out[i] -= v
    return pnorm(out)


def pscale(a, k):
    if k == 0:
        return ()
    return tuple(v * k for v in a)


def _pmul_school(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return pnorm(out)


def _pack(a, shift):
    n = 0
    for c in reversed(a):
        n = (n << shift) | c
    return n


def _unpack(n, shift, length):
    mask = (1 << shift) - 1
    out = []
    for _ in range(length):
        out.append(n & mask)
        n >>= shift
    return out


def _pmul_kronecker(a, b):
    # split into nonnegative parts so packed digits never borrow
    ap = tuple(v if v > 0 else 0 for v in a)
    an = tuple(-v if v < 0 else 0 for v in a)
    bp = tuple(v if v > 0 else 0 for v in b)
    bn = tuple(-v if v < 0 else 0 for v in b)
    maxa = max(max(ap, default=0), max(an, default=0))
    maxb = max(max(bp, default=0), max(bn, default=0))
    shift = (maxa * maxb * min(len(a), len(b))).bit_length() + 1
    la, lb = len(a), len(b)
    out_len = la + lb - 1
    pp = _pack(ap, shift) * _pack(bp, shift)
    nn = _pack(an, shift) * _pack(bn, shift)
    pn = _pack(ap, shift) * _pack(bn, shift)
    np_ = _pack(an, shift) * _pack(bp, shift)
    pos = _unpack(pp + nn, shift, out_len)
    neg = _unpack(pn + np_, shift, out_len)
    return pnorm([p - n for p, n in zip(pos, neg)])


def pmul(a, b):
    if not a or not b:
        return ()
    if len(a) * len(b) <= _KRONECKER_CUTOFF:
        return _pmul_school(a, b)
    return _pmul_kronecker(a, b)


def pcontent(a):
    """gcd of the coefficients, signed so that a/content has positive lead."""
    if not a:
        return 0
    g = 0
    for v in a:
        g = _igcd(g, abs(v))
        if g == 1:
            break
    return g if a[-1] > 0 else -g


def pprim(a):
    """Return (content, primitive part); primitive part has positive lead."""
    if not a:
        return 0, ()
    c = pcontent(a)
    if c == 1:
        return 1, a
    return c, tuple(v // c for v in a)


def peval_int(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def peval_frac(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pdivmod_q(a, b):
    """Long division in Q[q]; returns (quotient, remainder) as Fraction tuples."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(v) for v in a]
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = Fraction(b[-1])
    db = len(b) - 1
    while len(rem) >= len(b):
        if rem[-1] == 0:
            rem.pop()
            continue
        k = len(rem) - 1 - db
        f = rem[-1] / lb
        quo[k] = f
        for i in range(len(b)):
            rem[k + i] -= f * b[i]
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(quo), tuple(rem)


def _idiv_exact(a, b):
    """Integer long division; returns quotient or None when not exact in Z[q].

    Valid as a Q[q]-divisibility test when both arguments are primitive,
    since then any rational quotient is integral.
    """
    rem = list(a)
    lb = b[-1]
    db = len(b) - 1
    quo = [0] * (len(a) - db)
    while len(rem) > db:
        lead = rem[-1]
        if lead == 0:
            rem.pop()
            continue
        if lead % lb:
            return None
        f = lead // lb
        quo[len(rem) - 1 - db] = f
        rem.pop()
        k = len(rem) - db
        for i in range(db):
            rem[k + i] -= f * b[i]
    if any(rem):
        return None
    return pnorm(quo)


def pdivexact(a, b):
    """Exact division of integer polynomials known to divide; int result."""
    if not a:
        return ()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        raise ArithmeticError("inexact polynomial division")
    quo = _idiv_exact(a, b)
    if quo is None:
        # non-primitive operands can still divide exactly over Q
        quo, rem = pdivmod_q(a, b)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out = []
        for f in quo:
            if f.denominator != 1:
                raise ArithmeticError("non-integral exact quotient")
            out.append(int(f))
        return pnorm(out)
    return quo


def pdivides(b, a):
    """True iff b divides a in Q[q]; a, b primitive gives an integer-only path."""
    if not a:
        return True
    if not b:
        return False
    if len(b) > len(a):
        return False
    ca, pa = pprim(a)
    cb, pb = pprim(b)
    return _idiv_exact(pa, pb) is not None


def _genpoly(g, xi):
    # balanced base-xi digits of g
    out = []
    while g:
        r = g % xi
        if 2 * r > xi:
            r -= xi
        out.append(r)
        g = (g - r) // xi
    return pnorm(out)


def _prem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a modulo b."""
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - 1 - db + 1
    while rem and len(rem) - 1 >= db:
        lead = rem[-1]
        rem = [v * lb for v in rem[:-1]]
        k = len(rem) - db
        for i in range(db):
            rem[k + i] -= lead * b[i]
        while rem and rem[-1] == 0:
            rem.pop()
        e -= 1
    if e > 0:
        f = lb**e
        rem = [v * f for v in rem]
    return pnorm(rem)


def _pgcd_prs(a, b):
    """Subresultant polynomial remainder sequence gcd; primitive result."""
    _, a = pprim(a)
    _, b = pprim(b)
    if len(a) < len(b):
        a, b = b, a
    g, h = 1, 1
    while True:
        d = len(a) - len(b)
        rem = _prem(a, b)
        if not rem:
            return pprim(b)[1]
        if len(rem) == 1:
            return (1,)
        a, b = b, tuple(v // (g * h**d) for v in rem)
        g = a[-1]
        if d > 0:
            h = g**d // h ** (d - 1) if d > 1 else g


def pgcd(a, b):
    """Primitive gcd with positive leading coefficient, heuristic first."""
    if not a:
        return pprim(b)[1]
    if not b:
        return pprim(a)[1]
    _, a = pprim(a)
    _, b = pprim(b)
    if a == b:
        return a
    if len(a) == 1 or len(b) == 1:
        return (1,)
    bits = max(max(abs(v) for v in a), max(abs(v) for v in b)).bit_length()
    xi = 1 << (bits + 3)
    for _ in range(5):
        ga = peval_int(a, xi)
        gb = peval_int(b, xi)
        g = _igcd(ga, gb)
        if g:
            _, cand = pprim(_genpoly(g, xi))
            if cand and pdivides(cand, a) and pdivides(cand, b):
                return cand
        xi <<= 8
    return _pgcd_prs(a, b)
