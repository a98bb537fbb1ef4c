"""Certified oriented rewriting: replays the moving-letter reduction
strategies and regenerates the weighted-sum coefficient tables.

Every rule is certified against the relation ideal before the engine
will apply it.  Termination is enforced at run time: each rewrite step
must strictly decrease the phase measure

    (number of positive letters, number of inverted pattern pairs)

in lexicographic order.  A nonzero normal form is an unverified
residual, never a disproof: linear independence of normal words is not
established at this layer.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra, ideal
from .ncpoly import NCPoly, letter_code, word_concat, word_key
from .qcoeff import GenericField, RF_ONE, qint, qpow

Q = qpow(1)
QINV = qpow(-1)
QMINUS = Q - QINV


class RewriteError(RuntimeError):
    pass


class UncertifiedRule(RewriteError):
    pass


class StuckWord(RewriteError):
    def __init__(self, word, subword):
        super().__init__("no rule applies inside the declared alphabet: %r at %r" % (subword, word))
        self.word = word
        self.subword = subword


@dataclass(frozen=True)
class Rule:
    """Oriented rewrite lhs -> rhs with rhs a tuple of (word, coeff)."""

    name: str
    lhs: tuple
    rhs: tuple  # ((word, RatFunc), ...)
    # certification hints: context alphabet and degree bound for the search
    cert_alphabet: tuple = ()
    cert_bound: int = 0

    def diff_poly(self):
        """lhs - rhs as an NCPoly; lies in the relation ideal once certified."""
        p = NCPoly.word(self.lhs)
        for w, c in self.rhs:
            p = p - NCPoly.word(w, c)
        return p


_CERT_CACHE = {}


def certify_rule(rule: Rule, bound: int | None = None) -> Rule:
    """Prove lhs - rhs lies in the relation ideal at the given bound.

    The engine refuses uncertified rules; failures raise.  Results are
    cached on the rule's algebraic content.
    """
    key = (rule.lhs, rule.rhs)
    if key in _CERT_CACHE:
        return rule
    bound = bound if bound is not None else rule.cert_bound
    diff = rule.diff_poly()
    if diff.is_zero():
        _CERT_CACHE[key] = True
        return rule
    alphabet = rule.cert_alphabet or _signed_support(diff)
    indices = sorted({c >> 1 for c in _signed_support(diff)})
    relations = [ideal.RelationId("weyl", i) for i in range(4) if i in indices and (i + 1) % 4 in indices]
    relations += [ideal.RelationId("serre", i) for i in range(4) if i in indices and (i + 2) % 4 in indices]
    query = ideal.MembershipQuery(
        target=diff,
        relations=relations,
        alphabet=tuple(alphabet),
        degree_bound=max(bound, diff.degree()),
    )
    verdict = ideal.member(query)
    if not verdict.is_member or not ideal.verify_certificate(query, verdict):
        raise UncertifiedRule("rule %s failed certification at bound %d" % (rule.name, bound))
    _CERT_CACHE[key] = True
    return rule


def _signed_support(p):
    letters = set()
    for w in p.terms:
        for c in w:
            letters.add(c)
            letters.add(c ^ 1)
    return tuple(sorted(letters))


def is_certified(rule: Rule) -> bool:
    return (rule.lhs, rule.rhs) in _CERT_CACHE


# ---------------------------------------------------------------------------
# rule derivation
# ---------------------------------------------------------------------------


def _mk_weyl_rule(name, lhs, rhs, pair):
    i, j = pair
    letters = (letter_code(i), letter_code(i, -1), letter_code(j), letter_code(j, -1))
    return Rule(name=name, lhs=lhs, rhs=tuple(rhs), cert_alphabet=letters, cert_bound=4)


def derive_weyl_rules(i, move):
    """Oriented swap rules for the adjacent pair (i, i+1).

    move='lower_left' sends letters of class i leftward, 'upper_left'
    sends class i+1 leftward.  Each direction has exactly three rules:
    the inverse-inverse adjacency admits no polynomial right-hand side
    and is excluded by design.
    """
    i %= 4
    x, xb = letter_code(i), letter_code(i, -1)
    y, yb = letter_code(i + 1), letter_code(i + 1, -1)
    one = ()
    c = QMINUS
    if move == "lower_left":
        rules = [
            _mk_weyl_rule(
                "w%d+%d" % (i, (i + 1) % 4),
                (y, x),
                [((x, y), qpow(2)), (one, -(Q * c))],
                (i, (i + 1) % 4),
            ),
            _mk_weyl_rule(
                "w%d-%d" % (i, (i + 1) % 4),
                (y, xb),
                [((xb, y), qpow(-2)), ((xb, xb), QINV * c)],
                (i, (i + 1) % 4),
            ),
            _mk_weyl_rule(
                "w%d~%d" % (i, (i + 1) % 4),
                (yb, x),
                [((x, yb), qpow(-2)), ((yb, yb), QINV * c)],
                (i, (i + 1) % 4),
            ),
        ]
    elif move == "upper_left":
        rules = [
            _mk_weyl_rule(
                "u%d+%d" % ((i + 1) % 4, i),
                (x, y),
                [((y, x), qpow(-2)), (one, QINV * c)],
                (i, (i + 1) % 4),
            ),
            _mk_weyl_rule(
                "u%d-%d" % ((i + 1) % 4, i),
                (xb, y),
                [((y, xb), qpow(2)), ((xb, xb), -(Q * c))],
                (i, (i + 1) % 4),
            ),
            _mk_weyl_rule(
                "u%d~%d" % ((i + 1) % 4, i),
                (x, yb),
                [((yb, x), qpow(2)), ((yb, yb), -(Q * c))],
                (i, (i + 1) % 4),
            ),
        ]
    else:
        raise ValueError("move must be 'lower_left' or 'upper_left'")
    return [certify_rule(r) for r in rules]


def derive_serre_rule(i, orientation="far_left"):
    """Oriented cubic rule moving the far generator x_{i+2} past x_i triples."""
    i %= 4
    x = letter_code(i)
    z = letter_code(i + 2)
    t3 = qint(3)
    if orientation == "far_left":
        lhs = (x, x, x, z)
        rhs = (
            ((x, x, z, x), t3),
            ((x, z, x, x), -t3),
            ((z, x, x, x), RF_ONE),
        )
    elif orientation == "far_right":
        lhs = (z, x, x, x)
        rhs = (
            ((x, z, x, x), t3),
            ((x, x, z, x), -t3),
            ((x, x, x, z), RF_ONE),
        )
    else:
        raise ValueError("orientation must be 'far_left' or 'far_right'")
    rule = Rule(
        name="s%d/%d" % (i, (i + 2) % 4),
        lhs=lhs,
        rhs=rhs,
        cert_alphabet=(x, z),
        cert_bound=4,
    )
    return certify_rule(rule)


def inverse_sandwich_rule(i, mirror=False):
    """Length-5 collapse of the inverse sandwich into pure inverse words.

    Plain: y^-1 x^-1 y x^-1 y^-1 -> inverse monomials (x = x_i, y = x_{i+1}).
    Mirrored: x^-1 y^-1 x y^-1 x^-1 -> inverse monomials.
    """
    i %= 4
    x = letter_code(i)
    xb = letter_code(i, -1)
    y = letter_code(i + 1)
    yb = letter_code(i + 1, -1)
    c = (Q + QINV).inverse()
    if mirror:
        rule = Rule(
            name="sw%dm" % i,
            lhs=(xb, yb, x, yb, xb),
            rhs=(((xb, yb, yb), Q * c), ((yb, yb, xb), QINV * c)),
            cert_alphabet=(xb, yb),
            cert_bound=8,
        )
    else:
        rule = Rule(
            name="sw%d" % i,
            lhs=(yb, xb, y, xb, yb),
            rhs=(((xb, xb, yb), Q * c), ((yb, xb, xb), QINV * c)),
            cert_alphabet=(xb, yb),
            cert_bound=8,
        )
    return certify_rule(rule)


# ---------------------------------------------------------------------------
# strategies and reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Phase:
    rules: tuple
    name: str = ""

    def patterns(self):
        """Inverted adjacent pairs declared by the rules (for the measure)."""
        pats = set()
        for r in self.rules:
            if len(r.lhs) == 2:
                pats.add(r.lhs)
            elif len(r.lhs) == 4:
                pats.add((r.lhs[0], r.lhs[-1]))
        return pats


@dataclass(frozen=True)
class Strategy:
    """Ordered phases of certified rules with a run-time decreasing measure.

    The measure of a word is (positive letter count, inverted pattern
    pairs); every rewrite child must be strictly smaller, which the
    engine asserts on every step.
    """

    phases: tuple
    description: str = ""

    def all_rules(self):
        return [r for ph in self.phases for r in ph.rules]


def weyl_move_strategy(pivot, description=""):
    """Move every letter of class pivot leftward through both adjacent pairs."""
    pivot %= 4
    rules = derive_weyl_rules((pivot - 1) % 4, "upper_left") + derive_weyl_rules(
        pivot, "lower_left"
    )
    return Strategy(
        phases=(Phase(rules=tuple(rules), name="weyl-left:x%d" % pivot),),
        description=description or "weyl-left:x%d" % pivot,
    )


def weyl_serre_strategy(pivot, serre_pair, description=""):
    """Weyl move phase followed by a far-generator cubic phase."""
    pivot %= 4
    weyl = weyl_move_strategy(pivot)
    serre = derive_serre_rule(serre_pair[0], "far_left")
    return Strategy(
        phases=weyl.phases + (Phase(rules=(serre,), name="serre:x%d/x%d" % (serre_pair[0], serre_pair[1])),),
        description=description
        or "weyl-left:x%d,serre:x%d/x%d" % (pivot, serre_pair[0], serre_pair[1]),
    )


def parse_strategy(text):
    """Parse the CLI strategy descriptor, e.g. 'weyl-left:x1,serre:x0/x2'."""
    phases = []
    for part in text.split(","):
        part = part.strip()
        if part.startswith("weyl-left:"):
            pivot = _gen_index(part[len("weyl-left:") :])
            sub = weyl_move_strategy(pivot)
            phases.extend(sub.phases)
        elif part.startswith("serre:"):
            spec = part[len("serre:") :]
            a, _, b = spec.partition("/")
            ia, ib = _gen_index(a), _gen_index(b)
            if (ia + 2) % 4 != ib:
                raise ValueError("cubic rule needs an opposite pair, got %s" % part)
            phases.append(Phase(rules=(derive_serre_rule(ia, "far_left"),), name=part))
        else:
            raise ValueError("unknown strategy phase %r" % part)
    return Strategy(phases=tuple(phases), description=text)


def _gen_index(token):
    token = token.strip()
    if len(token) == 2 and token[0] == "x" and token[1] in "0123":
        return int(token[1])
    raise ValueError("expected a generator name x0..x3, got %r" % token)


def _measure(word, patterns):
    pos = sum(1 for c in word if not (c & 1))
    inv = 0
    n = len(word)
    for a in range(n):
        wa = word[a]
        for b in range(a + 1, n):
            if (wa, word[b]) in patterns:
                inv += 1
    return (pos, inv)


def _find_redex(word, index):
    for pos in range(len(word)):
        for lhs, rule in index.get(word[pos], ()):
            if word[pos : pos + len(lhs)] == lhs:
                return pos, rule
    return None


def reduce_terms(terms, strategy, field=GenericField, trace=None, check_measure=True):
    """Reduce a word->coefficient dict to normal form under the strategy."""
    for rule in strategy.all_rules():
        if not is_certified(rule):
            raise UncertifiedRule("strategy contains uncertified rule %s" % rule.name)
    for phase in strategy.phases:
        index = {}
        rhs_cache = {}
        for rule in phase.rules:
            index.setdefault(rule.lhs[0], []).append((rule.lhs, rule))
            rhs_cache[rule] = [(w, field.from_scalar(c)) for w, c in rule.rhs]
        patterns = phase.patterns()
        normal = {}
        active = dict(terms)
        while active:
            nxt = {}
            for w, c in active.items():
                hit = _find_redex(w, index)
                if hit is None:
                    s = normal.get(w, field.zero)
                    s = field.add(s, c)
                    if field.is_zero(s):
                        normal.pop(w, None)
                    else:
                        normal[w] = s
                    continue
                pos, rule = hit
                if check_measure:
                    parent = _measure(w, patterns)
                prefix = w[:pos]
                suffix = w[pos + len(rule.lhs) :]
                if trace is not None:
                    trace.append((c, prefix, rule, suffix))
                for rw, rc in rhs_cache[rule]:
                    nw = word_concat(word_concat(prefix, rw), suffix)
                    if check_measure and not _measure(nw, patterns) < parent:
                        raise RewriteError(
                            "measure failed to decrease: %r -> %r in %s"
                            % (w, nw, rule.name)
                        )
                    nc = field.mul(c, rc)
                    s = nxt.get(nw, field.zero)
                    s = field.add(s, nc)
                    if field.is_zero(s):
                        nxt.pop(nw, None)
                    else:
                        nxt[nw] = s
            active = nxt
        terms = normal
    return terms


def reduce_poly(p, strategy, trace=None):
    """NCPoly front end of reduce_terms over the generic field."""
    out = reduce_terms(dict(p.terms), strategy, GenericField, trace=trace)
    return NCPoly(out)


def table(p, strategy):
    """Normal form as a sorted (word, coefficient) list."""
    nf = reduce_poly(p, strategy)
    return nf.sorted_terms()


def expand_trace(trace):
    """Sum of c * u * (lhs - rhs) * v over the trace; equals input - output."""
    acc = NCPoly.zero()
    for c, prefix, rule, suffix in trace:
        mid = rule.diff_poly()
        acc = acc + (NCPoly.word(prefix) * mid * NCPoly.word(suffix)).scale(c)
    return acc
