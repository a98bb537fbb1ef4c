"""Domain layer: defining relations, nilpotent pair elements, truncated
q-exponentials, the swap-coefficient functions, and the identity catalog
that the verification suite runs.

Identity labels (c1, uu, inv11, vip2, rec1, rac3, thm9.3, ...) are the
catalog keys used throughout the CLI and reports.
"""

from __future__ import annotations

from .ncpoly import NCPoly
from .qcoeff import (
    RF_ONE,
    expcoef,
    qfac,
    qint,
    qpow,
    subst_qinv,
)

Q = qpow(1)
QINV = qpow(-1)
QMINUS = Q - QINV  # q - q^-1


def _x(i, power=1):
    return NCPoly.gen(i % 4, power)


def weyl_rel(i):
    """(q x_i x_{i+1} - q^-1 x_{i+1} x_i)/(q - q^-1) - 1, zero in the algebra."""
    i %= 4
    a = (_x(i) * _x(i + 1)).scale(Q / QMINUS)
    b = (_x(i + 1) * _x(i)).scale(QINV / QMINUS)
    return a - b - NCPoly.one()


def serre_rel(i):
    """Cubic swap relation between x_i and x_{i+2}, zero in the algebra."""
    i %= 4
    x, z = _x(i), _x(i + 2)
    t3 = qint(3)
    return x**3 * z - (x**2 * z * x).scale(t3) + (x * z * x**2).scale(t3) - z * x**3


def all_relations():
    return [weyl_rel(i) for i in range(4)] + [serre_rel(i) for i in range(4)]


def nelem(i, form="left"):
    """The nilpotent pair element for (x_i, x_{i+1}).

    left form:  q   (1 - x_i x_{i+1}) / (q - q^-1)
    right form: q^-1(1 - x_{i+1} x_i) / (q - q^-1)
    The two differ by a multiple of the pair's Weyl relation; the left
    form is the canonical expansion everywhere else in the engine.
    """
    i %= 4
    if form == "left":
        return (NCPoly.one() - _x(i) * _x(i + 1)).scale(Q / QMINUS)
    if form == "right":
        return (NCPoly.one() - _x(i + 1) * _x(i)).scale(QINV / QMINUS)
    raise ValueError("form must be 'left' or 'right'")


def two_forms_agree(i):
    """Factor f with nelem-left - nelem-right = f * weyl_rel(i), else None."""
    diff = nelem(i, "left") - nelem(i, "right")
    rel = weyl_rel(i)
    # compare on the common leading word
    for w, c in rel.terms.items():
        f = diff.coeff(w) / c
        if diff == rel.scale(f):
            return f
        break
    return None


_NPOW_CACHE = {}


def npow(i, m):
    """m-th power of the left-form pair element, cached."""
    key = (i % 4, m)
    r = _NPOW_CACHE.get(key)
    if r is None:
        if m == 0:
            r = NCPoly.one()
        else:
            r = npow(i, m - 1) * nelem(i)
        _NPOW_CACHE[key] = r
    return r


def exp_trunc(i, order, inverse=False):
    """Truncated q-exponential of the pair element: sum of m < order terms."""
    if order < 1:
        raise ValueError("truncation order must be >= 1")
    acc = NCPoly.zero()
    for m in range(order):
        acc = acc + npow(i, m).scale(expcoef(m, inverse))
    return acc


def swap_coeffs(m, twist="q"):
    """Coefficients (a_m, b_m, c_m, d_m) moving the opposite generator
    through the m-th power of the pair element.

    twist='qinv' returns the same functions with q replaced by 1/q, as
    used by the mirrored identities rac3/rac4.
    """
    two = qint(2)
    a = qpow(2 * m) * qint(m - 1) * qint(m - 2) / two
    b = -(qpow(2 * m - 2) * qint(m) * qint(m - 2))
    c = qpow(2 * m - 4) * qint(m) * qint(m - 1) / two
    d = (
        qpow(m - 5) * qint(3 * m)
        - qpow(-3) * qint(3) * qint(2 * m)
        + qpow(-m - 1) * qint(3) * qint(m)
    )
    if twist == "qinv":
        return tuple(subst_qinv(v) for v in (a, b, c, d))
    if twist != "q":
        raise ValueError("twist must be 'q' or 'qinv'")
    return (a, b, c, d)


# ---------------------------------------------------------------------------
# identity polynomial builders (each returns lhs - rhs, zero in the algebra
# or in its stated quotient)
# ---------------------------------------------------------------------------


def ident_c1(i, n):
    """q^n x_i^n x_{i+1} - q^-n x_{i+1} x_i^n = (q^n - q^-n) x_i^{n-1}"""
    lhs = (_x(i, n) * _x(i + 1)).scale(qpow(n)) - (_x(i + 1) * _x(i, n)).scale(qpow(-n))
    rhs = _x(i, n - 1).scale(qpow(n) - qpow(-n))
    return lhs - rhs


def ident_c2(i, n):
    """q^n x_i x_{i+1}^n - q^-n x_{i+1}^n x_i = (q^n - q^-n) x_{i+1}^{n-1}"""
    lhs = (_x(i) * _x(i + 1, n)).scale(qpow(n)) - (_x(i + 1, n) * _x(i)).scale(qpow(-n))
    rhs = _x(i + 1, n - 1).scale(qpow(n) - qpow(-n))
    return lhs - rhs


def ident_c3(i, n):
    """Cubic swap generalized to x_i^n x_{i+2}."""
    x, z = _x(i), _x(i + 2)
    two = qint(2)
    lhs = _x(i, n) * z
    rhs = (
        (z * _x(i, n)).scale(qint(n - 1) * qint(n - 2) / two)
        - (x * z * _x(i, n - 1)).scale(qint(n) * qint(n - 2))
        + (x**2 * z * _x(i, n - 2)).scale(qint(n) * qint(n - 1) / two)
    )
    return lhs - rhs


def ident_uu(i, upper=False):
    """x_i n = q^-2 n x_i   and   x_{i+1} n = q^2 n x_{i+1}"""
    n = nelem(i)
    if upper:
        return _x(i + 1) * n - (n * _x(i + 1)).scale(qpow(2))
    return _x(i) * n - (n * _x(i)).scale(qpow(-2))


def ident_eq4(i, n, upper=False):
    """Power form of the commutation ident_uu."""
    nn = nelem(i)
    if upper:
        return _x(i + 1, n) * nn - (nn * _x(i + 1, n)).scale(qpow(2 * n))
    return _x(i, n) * nn - (nn * _x(i, n)).scale(qpow(-2 * n))


def ident_3101(i, n):
    """x^n y^n (1 - (q^-2n - q^-2n-2) n_elem) = x^{n+1} y^{n+1}"""
    fac = NCPoly.one() - nelem(i).scale(qpow(-2 * n) - qpow(-2 * n - 2))
    return _x(i, n) * _x(i + 1, n) * fac - _x(i, n + 1) * _x(i + 1, n + 1)


def ident_3102(i, n):
    """(1 - (q^{2n+2} - q^{2n}) n_elem) y^n x^n = y^{n+1} x^{n+1}"""
    fac = NCPoly.one() - nelem(i).scale(qpow(2 * n + 2) - qpow(2 * n))
    return fac * _x(i + 1, n) * _x(i, n) - _x(i + 1, n + 1) * _x(i, n + 1)


def ident_inv11(i):
    """q x_{i+1} x_i^-1 - q^-1 x_i^-1 x_{i+1} = (q - q^-1) x_i^-2"""
    lhs = (_x(i + 1) * _x(i, -1)).scale(Q) - (_x(i, -1) * _x(i + 1)).scale(QINV)
    return lhs - _x(i, -2).scale(QMINUS)


def ident_inv12(i):
    """q x_{i+1}^-1 x_i - q^-1 x_i x_{i+1}^-1 = (q - q^-1) x_{i+1}^-2"""
    lhs = (_x(i + 1, -1) * _x(i)).scale(Q) - (_x(i) * _x(i + 1, -1)).scale(QINV)
    return lhs - _x(i + 1, -2).scale(QMINUS)


def ident_inv21(i):
    """(q x_i^-2 x_{i+1}^-1 + q^-1 x_{i+1}^-1 x_i^-2)/(q + q^-1) = sandwich"""
    lhs = ((_x(i, -2) * _x(i + 1, -1)).scale(Q) + (_x(i + 1, -1) * _x(i, -2)).scale(QINV)).scale(
        (Q + QINV).inverse()
    )
    rhs = _x(i + 1, -1) * _x(i, -1) * _x(i + 1) * _x(i, -1) * _x(i + 1, -1)
    return lhs - rhs


def ident_inv22(i):
    """(q x_i^-1 x_{i+1}^-2 + q^-1 x_{i+1}^-2 x_i^-1)/(q + q^-1) = sandwich"""
    lhs = ((_x(i, -1) * _x(i + 1, -2)).scale(Q) + (_x(i + 1, -2) * _x(i, -1)).scale(QINV)).scale(
        (Q + QINV).inverse()
    )
    rhs = _x(i, -1) * _x(i + 1, -1) * _x(i) * _x(i + 1, -1) * _x(i, -1)
    return lhs - rhs


def ident_rec1(i):
    """Alternating third-order exponential cross-term identity (lower form)."""
    acc = NCPoly.zero()
    for m in range(4):
        c = qpow(3 - 2 * m) / (qfac(3 - m) * qfac(m))
        if m % 2:
            c = -c
        acc = acc + (npow(i, 3 - m) * _x(i + 2) * npow(i, m)).scale(c)
    rhs = (npow(i, 1) * _x(i) * npow(i, 1)).scale(-(QMINUS**2))
    return acc - rhs


def ident_rec2(i):
    """Mirror of ident_rec1 for the other opposite generator."""
    acc = NCPoly.zero()
    for m in range(4):
        c = qpow(3 - 2 * m) / (qfac(3 - m) * qfac(m))
        if m % 2:
            c = -c
        acc = acc + (npow(i, m) * _x(i + 3) * npow(i, 3 - m)).scale(c)
    rhs = (npow(i, 1) * _x(i + 1) * npow(i, 1)).scale(-(QMINUS**2))
    return acc - rhs


def ident_rac(which, i, m):
    """The four swap identities for x_{i+2} / x_{i+3} past powers of the
    pair element; which is one of 'rac1', 'rac2', 'rac3', 'rac4'."""
    return formal_to_poly(rac_formal(which, m), i)


_FORMAL_MIRROR = {"lo": "hi", "hi": "lo", "far2": "far3", "far3": "far2"}


def rac_formal(which, m):
    """The four swap identities in formal sandwich form.

    Terms are (a, mid, b) for  n^a . mid . n^b  with mid one of the
    relative generators 'lo' (x_i), 'hi' (x_{i+1}), 'far2' (x_{i+2}),
    'far3' (x_{i+3}); the value maps terms of lhs - rhs to coefficients.
    This representation makes the mirror and transpose derivations exact
    term-for-term, with no ideal-membership slack.
    """
    twist = "q" if which in ("rac1", "rac2") else "qinv"
    a, b, c, d = swap_coeffs(m, twist)
    sign_d = RF_ONE if twist == "q" else -RF_ONE
    out = {}

    def put(ai, mid, bi, coeff):
        if ai < 0 or bi < 0 or coeff.is_zero():
            return
        key = (ai, mid, bi)
        cur = out.get(key)
        cur = coeff if cur is None else cur + coeff
        if cur.is_zero():
            out.pop(key, None)
        else:
            out[key] = cur
    if which == "rac1":
        put(0, "far2", m, RF_ONE)
        put(m, "far2", 0, -a)
        put(m - 1, "far2", 1, -b)
        put(m - 2, "far2", 2, -c)
        put(m - 1, "lo", 0, -(d * sign_d))
    elif which == "rac2":
        put(m, "far3", 0, RF_ONE)
        put(0, "far3", m, -a)
        put(1, "far3", m - 1, -b)
        put(2, "far3", m - 2, -c)
        put(0, "hi", m - 1, -(d * sign_d))
    elif which == "rac3":
        put(m, "far2", 0, RF_ONE)
        put(0, "far2", m, -a)
        put(1, "far2", m - 1, -b)
        put(2, "far2", m - 2, -c)
        put(0, "lo", m - 1, -(d * sign_d))
    elif which == "rac4":
        put(0, "far3", m, RF_ONE)
        put(m, "far3", 0, -a)
        put(m - 1, "far3", 1, -b)
        put(m - 2, "far3", 2, -c)
        put(m - 1, "hi", 0, -(d * sign_d))
    else:
        raise ValueError("unknown swap identity %r" % which)
    return out


def formal_transpose(formal):
    """Word reversal with q -> 1/q twist and sign per nil factor."""
    out = {}
    for (a, mid, b), coeff in formal.items():
        c = subst_qinv(coeff)
        if (a + b) % 2:
            c = -c
        out[(b, mid, a)] = c
    return out


def formal_mirror(formal):
    """Order reversal swapping lo/hi and the two far generators."""
    return {(b, _FORMAL_MIRROR[mid], a): c for (a, mid, b), c in formal.items()}


def formal_scale(formal, c):
    return {k: v * c for k, v in formal.items()}


def formal_to_poly(formal, i):
    """Expand a formal sandwich sum at a concrete index (left-form nil)."""
    rel = {"lo": i, "hi": i + 1, "far2": i + 2, "far3": i + 3}
    acc = NCPoly.zero()
    for (a, mid, b), coeff in formal.items():
        acc = acc + (npow(i, a) * _x(rel[mid]) * npow(i, b)).scale(coeff)
    return acc


def ident_vip(which, i, order):
    """Truncated conjugation identities for the adjacent generators.

    vip1: expinv * x_{i+1} * exp = x_i^-1
    vip2: exp * x_i * expinv = x_{i+1}^-1
    vip3: expinv * x_i * exp = x_i x_{i+1} x_i
    vip4: exp * x_{i+1} * expinv = x_{i+1} x_i x_{i+1}

    Returned as lhs - rhs with the inverse generators on the rhs; exact in
    the truncated pair algebra, where these are meant to be verified.
    """
    e = exp_trunc(i, order)
    einv = exp_trunc(i, order, inverse=True)
    if which == "vip1":
        return einv * _x(i + 1) * e - _x(i, -1)
    if which == "vip2":
        return e * _x(i) * einv - _x(i + 1, -1)
    if which == "vip3":
        return einv * _x(i) * e - _x(i) * _x(i + 1) * _x(i)
    if which == "vip4":
        return e * _x(i + 1) * einv - _x(i + 1) * _x(i) * _x(i + 1)
    raise ValueError("unknown conjugation identity %r" % which)


def ident_55(which, i, r, order):
    """exp(q^{2r} n) = exp(n) x^-r y^-r (5511) or x^-r y^-r exp(n) (5512)."""
    lhs = NCPoly.zero()
    for m in range(order):
        lhs = lhs + npow(i, m).scale(expcoef(m) * qpow(2 * r * m))
    mono = _x(i, -r) * _x(i + 1, -r)
    e = exp_trunc(i, order)
    rhs = e * mono if which == "5511" else mono * e
    return lhs - rhs


def theorem93_rhs(i):
    """Polynomial side of the exp-conjugation formula for x_{i+3} (inverse
    conjugation on the left)."""
    x, y, t = _x(i), _x(i + 1), _x(i + 3)
    c2 = QMINUS * (qpow(2) - qpow(-2))
    return (
        t
        - _x(i, -1)
        + (x * y * t).scale(Q / QMINUS)
        - (x * t * y).scale(QINV / QMINUS)
        + (x**2 * y**2 * t).scale(qpow(3) / c2)
        + (x**2 * t * y**2).scale(Q / c2)
        - (x**2 * y * t * y).scale(qpow(2) / QMINUS**2)
    )


def theorem94_rhs(i):
    """Polynomial side of the exp-conjugation formula for x_{i+3} (forward
    conjugation)."""
    y, t = _x(i + 1), _x(i + 3)
    c2 = QMINUS * (qpow(2) - qpow(-2))
    return (
        y
        - t.scale(QMINUS**-2)
        + (_x(i + 1, -1) * t * y).scale(Q / c2)
        + (y * t * _x(i + 1, -1)).scale(QINV / c2)
    )


def theorem95_rhs(i):
    """Polynomial side of the exp-conjugation formula for x_{i+2} (inverse
    conjugation on the left)."""
    x, z = _x(i), _x(i + 2)
    c2 = QMINUS * (qpow(2) - qpow(-2))
    return (
        x
        - z.scale(QMINUS**-2)
        + (x * z * _x(i, -1)).scale(Q / c2)
        + (_x(i, -1) * z * x).scale(QINV / c2)
    )


def theorem96_rhs(i):
    """Polynomial side of the exp-conjugation formula for x_{i+2} (forward
    conjugation)."""
    x, y, z = _x(i), _x(i + 1), _x(i + 2)
    c2 = QMINUS * (qpow(2) - qpow(-2))
    return (
        z
        - _x(i + 1, -1)
        + (z * x * y).scale(Q / QMINUS)
        - (x * z * y).scale(QINV / QMINUS)
        + (z * x**2 * y**2).scale(qpow(3) / c2)
        + (x**2 * z * y**2).scale(Q / c2)
        - (x * z * x * y**2).scale(qpow(2) / QMINUS**2)
    )


def theorem9_cleared(which, i, order):
    """Cleared, truncated difference for the four opposite-generator
    conjugation theorems; polynomial in positive letters only.

    thm9.3: multiplied by x_i on the left.
    thm9.4: multiplied by x_{i+1} on the left and on the right.
    thm9.5: multiplied by x_i on the left and on the right.
    thm9.6: multiplied by x_{i+1} on the right (the mirror image of the
    thm9.3 clearing, so the two transport into each other exactly).
    Membership in (relation ideal + nilpotency ideal) certifies the
    identity on modules with nilpotency index <= order.
    """
    e = exp_trunc(i, order)
    einv = exp_trunc(i, order, inverse=True)
    x, y = _x(i), _x(i + 1)
    if which == "thm9.3":
        t = _x(i + 3)
        return x * (einv * t * e - theorem93_rhs(i))
    if which == "thm9.4":
        t = _x(i + 3)
        return y * (e * t * einv - theorem94_rhs(i)) * y
    if which == "thm9.5":
        z = _x(i + 2)
        return x * (einv * z * e - theorem95_rhs(i)) * x
    if which == "thm9.6":
        z = _x(i + 2)
        return (e * z * einv - theorem96_rhs(i)) * y
    raise ValueError("unknown theorem label %r" % which)
