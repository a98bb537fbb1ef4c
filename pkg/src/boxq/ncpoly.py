"""Noncommutative Laurent polynomials in x0..x3 over Q(q).

Words are tuples of letter codes (index*2, +1 for the inverse letter) and
are kept freely reduced: only a letter next to its own inverse cancels,
letters of distinct indices never interact at this layer.  All relation
knowledge lives in the rewrite/ideal engines.

Term order is graded lexicographic on the letter codes, so
x0 < x0^-1 < x1 < x1^-1 < ... ; outputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qcoeff import (
    RF_ONE,
    RF_ZERO,
    RatFunc,
    format_scalar,
    from_fraction,
    from_int,
    qfac,
    qint,
    qpow,
    scalar_is_monomial,
    subst_qinv,
)

NUM_GENS = 4


@dataclass(frozen=True)
class Letter:
    """A signed generator: sign +1 is x_index, sign -1 is its inverse."""

    index: int
    sign: int = 1

    def __post_init__(self):
        if self.index not in (0, 1, 2, 3) or self.sign not in (1, -1):
            raise ValueError("letter index must be in Z_4 with sign +-1")

    @property
    def code(self):
        return self.index * 2 + (0 if self.sign == 1 else 1)

    @staticmethod
    def from_code(code):
        return Letter(code >> 1, 1 if code % 2 == 0 else -1)


def letter_code(index, sign=1):
    return (index % NUM_GENS) * 2 + (0 if sign == 1 else 1)


def _cancels(a, b):
    return a >> 1 == b >> 1 and a != b


def word_reduce(seq):
    """Freely reduce a letter sequence; accepts Letters or raw codes."""
    out = []
    for item in seq:
        c = item.code if isinstance(item, Letter) else item
        if out and _cancels(out[-1], c):
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def word_concat(a, b):
    """Concatenate two already-reduced words, cancelling at the junction."""
    i = len(a) - 1
    j = 0
    while i >= 0 and j < len(b) and _cancels(a[i], b[j]):
        i -= 1
        j += 1
    return a[: i + 1] + b[j:]


def word_invert(w):
    return tuple(c ^ 1 for c in reversed(w))


def word_key(w):
    return (len(w), w)


class NCPoly:
    """Finite map from reduced words to nonzero Q(q) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        d = {}
        if terms:
            for w, c in terms.items():
                if not isinstance(c, RatFunc):
                    c = from_fraction(c)
                if not c.is_zero():
                    d[tuple(w)] = c
        self.terms = d

    @classmethod
    def _raw(cls, d):
        p = cls.__new__(cls)
        p.terms = d
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({(): RF_ONE})

    @classmethod
    def scalar(cls, c):
        if not isinstance(c, RatFunc):
            c = from_fraction(c)
        return cls._raw({(): c} if not c.is_zero() else {})

    @classmethod
    def gen(cls, index, power=1):
        """x_index**power; negative powers use the inverse letter."""
        if power == 0:
            return cls.one()
        code = letter_code(index, 1 if power > 0 else -1)
        return cls._raw({(code,) * abs(power): RF_ONE})

    @classmethod
    def word(cls, w, coeff=RF_ONE):
        w = word_reduce(w)
        return cls._raw({w: coeff} if not coeff.is_zero() else {})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return NCPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not isinstance(c, RatFunc):
            c = from_fraction(c)
        if c.is_zero():
            return NCPoly.zero()
        return NCPoly._raw({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (RatFunc, int)):
            return self.scale(other if isinstance(other, RatFunc) else from_int(other))
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = word_concat(w1, w2)
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return NCPoly._raw(out)

    def __rmul__(self, other):
        if isinstance(other, (RatFunc, int)):
            return self.scale(other if isinstance(other, RatFunc) else from_int(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            inv = self.inverse_of_word()
            return inv ** (-k)
        out = NCPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse_of_word(self):
        """Inverse when the polynomial is a single invertible-coefficient word."""
        if len(self.terms) != 1:
            raise ValueError("only single-term polynomials invert at this layer")
        (w, c), = self.terms.items()
        return NCPoly._raw({word_invert(w): c.inverse()})

    def degree(self):
        """Maximal word length; inverse letters count with weight 1."""
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(len(w) for w in self.terms)

    def linear_in(self, index):
        """True iff every word uses index (either sign) at most once."""
        for w in self.terms:
            if sum(1 for c in w if c >> 1 == index) > 1:
                return False
        return True

    def coeff(self, w):
        return self.terms.get(tuple(w), RF_ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def __repr__(self):
        return "NCPoly(%s)" % format_poly(self)

    def __str__(self):
        return format_poly(self)


def _coerce_poly(v):
    if isinstance(v, NCPoly):
        return v
    if isinstance(v, (RatFunc, int)):
        return NCPoly.scalar(v if isinstance(v, RatFunc) else from_int(v))
    return NotImplemented


def poly_arith(a, b, op):
    """Dispatch polynomial arithmetic by name; scale takes a RatFunc."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError("unknown polynomial operation %r" % op)


# ---------------------------------------------------------------------------
# algebra and anti-algebra maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraMap:
    """Letter-wise (anti)homomorphism with an optional q -> 1/q twist.

    images[i] is the word that x_i maps to; inverse letters map to the
    inverse word.  Antihomomorphisms reverse word order.
    """

    images: tuple
    antihom: bool = False
    twist: bool = False

    def letter_image(self, code):
        w = self.images[code >> 1]
        return word_invert(w) if code & 1 else w

    def apply_word(self, w):
        parts = [self.letter_image(c) for c in w]
        if self.antihom:
            parts.reverse()
        out = ()
        for p in parts:
            out = word_concat(out, p)
        return out

    def apply(self, p):
        out = {}
        for w, c in p.terms.items():
            nw = self.apply_word(w)
            nc = subst_qinv(c) if self.twist else c
            s = out.get(nw)
            s = nc if s is None else s + nc
            if s.is_zero():
                out.pop(nw, None)
            else:
                out[nw] = s
        return NCPoly._raw(out)

    def compose(self, other):
        """self after other, as a single AlgebraMap.

        Letter images carry coefficient 1, so the twist only needs to be
        tracked as a flag.
        """
        images = []
        for i in range(NUM_GENS):
            images.append(self.apply_word(other.images[i]))
        return AlgebraMap(
            images=tuple(images),
            antihom=self.antihom != other.antihom,
            twist=self.twist != other.twist,
        )


def identity_map():
    return AlgebraMap(images=((0,), (2,), (4,), (6,)))


def rotation():
    """Automorphism shifting every generator index by one."""
    return AlgebraMap(images=((2,), (4,), (6,), (0,)))


def edge_mirror_01():
    """Antiautomorphism swapping x0 with x1 and x2 with x3."""
    return AlgebraMap(images=((2,), (0,), (6,), (4,)), antihom=True)


def edge_mirror_12():
    """Antiautomorphism swapping x1 with x2 and x3 with x0."""
    return AlgebraMap(images=((6,), (4,), (2,), (0,)), antihom=True)


def q_transpose():
    """Word-reversing map fixing generators and sending q to 1/q.

    Applying it twice is the identity; it exchanges the q- and 1/q-relation
    regimes, so images of identities must be read against twisted relations.
    """
    return AlgebraMap(images=((0,), (2,), (4,), (6,)), antihom=True, twist=True)


def dihedral_group_maps():
    """The eight maps generated by the rotation and one edge mirror."""
    r = rotation()
    f = edge_mirror_01()
    maps = []
    cur = identity_map()
    for _ in range(4):
        maps.append(cur)
        cur = r.compose(cur)
    cur = f
    for _ in range(4):
        maps.append(cur)
        cur = r.compose(cur)
    return maps


def maps_agree(m1, m2, max_len, alphabet=None):
    """Compare two maps on every reduced word up to max_len letters."""
    alphabet = alphabet if alphabet is not None else list(range(2 * NUM_GENS))
    stack = [()]
    while stack:
        w = stack.pop()
        p = NCPoly.word(w)
        if m1.apply(p) != m2.apply(p):
            return False
        if len(w) < max_len:
            for c in alphabet:
                if w and _cancels(w[-1], c):
                    continue
                stack.append(w + (c,))
    return True


# ---------------------------------------------------------------------------
# shared text grammar
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


_NSYM = {"n01": 0, "n12": 1, "n23": 2, "n30": 3}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = self._tokenize(text)
        self.i = 0

    @staticmethod
    def _tokenize(text):
        toks = []
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(("num", int(text[i:j]), i))
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(("name", text[i:j], i))
                i = j
                continue
            if ch in "+-*/^(),":
                toks.append((ch, ch, i))
                i += 1
                continue
            raise ParseError("unexpected character %r" % ch, i)
        toks.append(("end", None, n))
        return toks

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError("expected %r" % kind, t[2])
        return t

    def parse_expr(self):
        neg = False
        if self.peek()[0] == "-":
            self.next()
            neg = True
        acc = self.parse_term()
        if neg:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            t = self.parse_term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def parse_term(self):
        acc = self.parse_factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.next()
            f = self.parse_factor()
            if op == "*":
                acc = acc * f
            else:
                if len(f.terms) != 1 or () not in f.terms:
                    raise ParseError("division only by scalars", pos)
                acc = acc.scale(f.terms[()].inverse())
        return acc

    def parse_factor(self):
        atom = self.parse_atom()
        if self.peek()[0] == "^":
            self.next()
            k = self.parse_signed_int()
            atom = atom**k
        return atom

    def parse_signed_int(self):
        neg = False
        if self.peek()[0] == "-":
            self.next()
            neg = True
        t = self.expect("num")
        return -t[1] if neg else t[1]

    def parse_atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return NCPoly.scalar(from_int(val))
        if kind == "(":
            e = self.parse_expr()
            self.expect(")")
            return e
        if kind == "name":
            if val == "q":
                return NCPoly.scalar(qpow(1))
            if val == "qint":
                self.expect("(")
                n = self.parse_signed_int()
                self.expect(")")
                return NCPoly.scalar(qint(n))
            if val == "qfac":
                self.expect("(")
                n = self.parse_signed_int()
                self.expect(")")
                return NCPoly.scalar(qfac(n))
            if val in ("x0", "x1", "x2", "x3"):
                return NCPoly.gen(int(val[1]))
            if val in _NSYM:
                from . import algebra

                return algebra.nelem(_NSYM[val])
            if val in ("exp", "expinv"):
                from . import algebra

                self.expect("(")
                t = self.expect("name")
                if t[1] not in _NSYM:
                    raise ParseError("expected one of n01, n12, n23, n30", t[2])
                self.expect(",")
                n = self.parse_signed_int()
                self.expect(")")
                return algebra.exp_trunc(_NSYM[t[1]], n, inverse=(val == "expinv"))
            raise ParseError("unknown symbol %r" % val, pos)
        raise ParseError("unexpected token", pos)


def parse_poly(text):
    """Parse the shared expression grammar into an NCPoly."""
    p = _Parser(text)
    e = p.parse_expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError("trailing input", t[2])
    return e


def parse_scalar(text):
    """Parse a coefficient-only expression into a RatFunc."""
    p = parse_poly(text)
    if p.is_zero():
        return RF_ZERO
    if list(p.terms) != [()]:
        raise ParseError("expected a scalar expression", 0)
    return p.terms[()]


def _format_word(w):
    parts = []
    i = 0
    while i < len(w):
        c = w[i]
        j = i
        while j < len(w) and w[j] == c:
            j += 1
        run = j - i
        name = "x%d" % (c >> 1)
        if c & 1:
            parts.append("%s^-%d" % (name, run))
        elif run > 1:
            parts.append("%s^%d" % (name, run))
        else:
            parts.append(name)
        i = j
    return "*".join(parts)


def format_poly(p):
    """Deterministic text form; parse_poly inverts it exactly."""
    if p.is_zero():
        return "0"
    chunks = []
    for w, c in p.sorted_terms():
        if scalar_is_monomial(c):
            s = format_scalar(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            if not w:
                body = s
            elif s == "1":
                body = _format_word(w)
            else:
                body = "%s*%s" % (s, _format_word(w))
            chunks.append(("-" if neg else "+", body))
        else:
            s = "(" + format_scalar(c) + ")"
            body = s if not w else "%s*%s" % (s, _format_word(w))
            chunks.append(("+", body))
    sign, body = chunks[0]
    out = [body if sign == "+" else "-" + body]
    for sign, body in chunks[1:]:
        out.append(" + " if sign == "+" else " - ")
        out.append(body)
    return "".join(out)
