"""Named table presets: the weighted-sum coefficient tables regenerated
from fixed expressions with their replayed reduction recipes.

Each preset is a list of expressions; table(preset, index) reduces each
one and returns its normal form as a term/coefficient table.  The
lemma9.1 and thm9.3 presets use a single moving-letter strategy; the
thm9.4 preset replays per-expression rule selections because its
cancellation recipe orients the same relation differently from one
expression to the next.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra, rewrite
from .ncpoly import NCPoly, format_poly, word_key
from .qcoeff import format_scalar, qpow

Q = qpow(1)
QINV = qpow(-1)
QM = Q - QINV


@dataclass(frozen=True)
class TableExpression:
    name: str
    build: object  # index -> NCPoly
    strategy: object  # index -> Strategy


def _gen(i, p=1):
    return NCPoly.gen(i % 4, p)


def _one_phase(name, rules):
    return rewrite.Strategy(phases=(rewrite.Phase(rules=tuple(rules), name=name),), description=name)


def _lemma91_strategy(i):
    return rewrite.weyl_move_strategy((i + 1) % 4)


def _thm93_strategy(i):
    return rewrite.weyl_move_strategy(i % 4)


def _lemma91_exprs():
    scale3 = qpow(3) * QM**3
    scale4 = qpow(4) * QM**2

    def nzn(a, b):
        def build(i, a=a, b=b):
            return (algebra.npow(i, a) * _gen(i + 2) * algebra.npow(i, b)).scale(scale3)

        return build

    def nxn(i):
        return (algebra.npow(i, 1) * _gen(i) * algebra.npow(i, 1)).scale(scale4)

    return [
        TableExpression("n^3 z", nzn(3, 0), _lemma91_strategy),
        TableExpression("n^2 z n", nzn(2, 1), _lemma91_strategy),
        TableExpression("n z n^2", nzn(1, 2), _lemma91_strategy),
        TableExpression("z n^3", nzn(0, 3), _lemma91_strategy),
        TableExpression("n x n", nxn, _lemma91_strategy),
    ]


def _thm93_exprs():
    def f1(i):
        return (_gen(i + 3) * algebra.npow(i, 1)).scale(-(QINV / QM))

    def f2(i):
        return (_gen(i) * _gen(i + 1) * _gen(i + 3) * algebra.npow(i, 1)).scale(Q / QM)

    def f3(i):
        return (_gen(i + 3) * algebra.npow(i, 2)).scale(Q / (Q + QINV))

    return [
        TableExpression("t n", f1, _thm93_strategy),
        TableExpression("x y t n", f2, _thm93_strategy),
        TableExpression("t n^2", f3, _thm93_strategy),
    ]


def _thm94_exprs():
    c2 = QM * (qpow(2) - qpow(-2))

    def rule_x_left_past_t(i):
        return rewrite.derive_weyl_rules((i + 3) % 4, "upper_left")[0]

    def rule_t_left_past_x(i):
        return rewrite.derive_weyl_rules((i + 3) % 4, "lower_left")[0]

    def rule_y_left_past_xb(i):
        return rewrite.derive_weyl_rules(i % 4, "upper_left")[1]

    def rule_y_left_past_x(i):
        return rewrite.derive_weyl_rules(i % 4, "upper_left")[0]

    def rule_xb_left_past_y(i):
        return rewrite.derive_weyl_rules(i % 4, "lower_left")[1]

    def sandwich(i):
        return rewrite.inverse_sandwich_rule(i % 4)

    def core(i, with_nil, nil_power=1, tail=True):
        # y^-1 x^-1 [n^k] t [x^-1 y^-1]
        e = _gen(i + 1, -1) * _gen(i, -1)
        if with_nil:
            e = e * algebra.npow(i, nil_power)
        e = e * _gen(i + 3)
        if tail:
            e = e * _gen(i, -1) * _gen(i + 1, -1)
        return e

    def g1(i):
        return (
            _gen(i + 1, -1) * _gen(i, -1) * _gen(i + 3) * _gen(i) * _gen(i + 1)
        ).scale(qpow(3) / c2)

    def g2(i):
        return core(i, True, 1, tail=False).scale(QINV / QM)

    def g3(i):
        return core(i, True, 1).scale(-(qpow(-3) / QM))

    def g4(i):
        return core(i, True, 2).scale(qpow(-3) / (Q + QINV))

    def g5(i):
        return (
            _gen(i + 1, -1) * _gen(i, -1) * _gen(i + 1) * _gen(i) * _gen(i + 1)
        ).scale(qpow(-2))

    def g6(i):
        return (_gen(i + 1, -1) * _gen(i, -1) * _gen(i + 1)).scale(
            -(qpow(-3) * (Q + QINV))
        )

    def g7(i):
        return (
            _gen(i + 1, -1)
            * _gen(i, -1)
            * _gen(i + 1)
            * _gen(i, -1)
            * _gen(i + 1, -1)
        ).scale(qpow(-4))

    return [
        TableExpression(
            "y' x' t x y",
            g1,
            lambda i: _one_phase("g1", [rule_x_left_past_t(i), rule_y_left_past_xb(i)]),
        ),
        TableExpression("y' x' n t", g2, lambda i: _one_phase("g2", [])),
        TableExpression("y' x' n t x' y'", g3, lambda i: _one_phase("g3", [])),
        TableExpression(
            "y' x' n^2 t x' y'",
            g4,
            lambda i: _one_phase(
                "g4",
                [rule_y_left_past_x(i), rule_t_left_past_x(i), rule_xb_left_past_y(i)],
            ),
        ),
        TableExpression(
            "y' x' y x y", g5, lambda i: _one_phase("g5", [rule_y_left_past_xb(i)])
        ),
        TableExpression(
            "y' x' y", g6, lambda i: _one_phase("g6", [rule_y_left_past_xb(i)])
        ),
        TableExpression("y' x' y x' y'", g7, lambda i: _one_phase("g7", [sandwich(i)])),
    ]


PRESETS = {
    "lemma9.1": _lemma91_exprs,
    "thm9.3": _thm93_exprs,
    "thm9.4": _thm94_exprs,
}


def preset_tables(preset, index):
    """All tables of a preset at a generator index: (name, sorted terms)."""
    if preset not in PRESETS:
        raise KeyError("unknown preset %r (have: %s)" % (preset, ", ".join(sorted(PRESETS))))
    out = []
    for expr in PRESETS[preset]():
        poly = expr.build(index)
        strat = expr.strategy(index)
        out.append((expr.name, rewrite.table(poly, strat)))
    return out


def format_tables(tables, fmt="text"):
    if fmt == "json":
        return [
            {
                "expression": name,
                "table": [
                    {"term": format_poly(NCPoly.word(w)) if w else "1", "coeff": format_scalar(c)}
                    for w, c in rows
                ],
            }
            for name, rows in tables
        ]
    lines = []
    for name, rows in tables:
        lines.append("expression: %s" % name)
        width = max((len(format_poly(NCPoly.word(w)) if w else "1") for w, _ in rows), default=1)
        for w, c in rows:
            term = format_poly(NCPoly.word(w)) if w else "1"
            lines.append("  %-*s  %s" % (width, term, format_scalar(c)))
        lines.append("")
    return "\n".join(lines)
