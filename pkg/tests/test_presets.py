"""Golden coefficient tables, frozen term-for-term and coefficient-for-
coefficient.  Template letters are relative to the instance index:
x = x_i, y = x_{i+1}, z = x_{i+2}, t = x_{i+3}, primes are inverses."""

import pytest

from boxq.ncpoly import NCPoly, letter_code, parse_scalar, word_reduce
from boxq.presets import format_tables, preset_tables

# every entry: expression name -> {term template: coefficient expression}
GOLDEN_LEMMA91 = {
    "n^3 z": {
        "z": "1",
        "y x z": "-q^-2*qint(3)",
        "y y x x z": "q^-4*qint(3)",
        "y y y x x x z": "-q^-6",
    },
    "n^2 z n": {
        "z": "1",
        "x": "q^2 - 1",
        "y x z": "-1 - q^-2",
        "y z x": "-q^-2",
        "y x x": "q^-2 - q^2",
        "y y x x z": "q^-2",
        "y y x z x": "q^-2 + q^-4",
        "y y x x x": "1 - q^-2",
        "y y y x x z x": "-q^-4",
    },
    "n z n^2": {
        "z": "1",
        "x": "q^2 - q^-2",
        "y x z": "-1",
        "y z x": "-1 - q^-2",
        "y x x": "q^-1*(q^-1 + q)*(q^-2 - q^2)",
        "y y z x x": "q^-2",
        "y y x z x": "q^-2 + 1",
        "y y x x x": "1 - q^-4",
        "y y y x z x x": "-q^-2",
    },
    "z n^3": {
        "z": "1",
        "x": "q^2 - q^-4",
        "y z x": "-qint(3)",
        "y x x": "q^-2*(q^-2 - q^2)*qint(3)",
        "y y z x x": "qint(3)",
        "y y x x x": "1 - q^-6",
        "y y y z x x x": "-1",
    },
    "n x n": {
        "x": "1",
        "y x x": "-1 - q^-2",
        "y y x x x": "q^-2",
    },
}

GOLDEN_THM93 = {
    "t n": {
        "t": "-1/(q - q^-1)^2",
        "x t y": "q^-2/(q - q^-1)^2",
        "y": "q^-1/(q - q^-1)",
    },
    "x y t n": {
        "x y t": "q^2/(q - q^-1)^2",
        "x x y t y": "-q^2/(q - q^-1)^2",
        "x t y": "q/(q - q^-1)",
        "x y y": "-q/(q - q^-1)",
    },
    "t n^2": {
        "t": "q^3/((q - q^-1)*(q^2 - q^-2))",
        "x t y": "-q^2/(q - q^-1)^2",
        "y": "-q^3/(q - q^-1)",
        "x x t y y": "q/((q - q^-1)*(q^2 - q^-2))",
        "x y y": "q^3/(q - q^-1)",
    },
}

GOLDEN_THM94 = {
    "y' x' t x y": {
        "y' t y": "q/((q - q^-1)*(q^2 - q^-2))",
        "x'": "q^4/(q^2 - q^-2)",
        "y' x' x'": "-q^3/(q + q^-1)",
    },
    "y' x' n t": {
        "y' x' t": "1/(q - q^-1)^2",
        "t": "-1/(q - q^-1)^2",
    },
    "y' x' n t x' y'": {
        "y' x' t x' y'": "-q^-2/(q - q^-1)^2",
        "t x' y'": "q^-2/(q - q^-1)^2",
    },
    "y' x' n^2 t x' y'": {
        "y' x' t x' y'": "q^-1/((q - q^-1)*(q^2 - q^-2))",
        "t x' y'": "-q^-2/(q - q^-1)^2",
        "x'": "-q^-4/(q^2 - q^-2)",
        "x' x' y'": "-q^-3/(q + q^-1)",
        "y t y'": "q^-1/((q - q^-1)*(q^2 - q^-2))",
    },
    "y' x' y x y": {
        "y": "1",
        "x'": "1 - q^2",
        "y' x' x'": "(q - q^-1)^2",
    },
    "y' x' y": {
        "x'": "-q^-1*(q + q^-1)",
        "y' x' x'": "q^-2*(q^2 - q^-2)",
    },
    "y' x' y x' y'": {
        "x' x' y'": "q^-3/(q + q^-1)",
        "y' x' x'": "q^-5/(q + q^-1)",
    },
}


def _template_word(template, i):
    codes = []
    rel = {"x": i, "y": i + 1, "z": i + 2, "t": i + 3}
    for token in template.split():
        sign = -1 if token.endswith("'") else 1
        codes.append(letter_code(rel[token.rstrip("'")], sign))
    return word_reduce(codes)


def _check_preset(preset, golden, i):
    tables = dict(preset_tables(preset, i))
    assert set(tables) == set(golden)
    for name, expected in golden.items():
        got = dict(tables[name])
        want = {
            _template_word(tpl, i): parse_scalar(expr) for tpl, expr in expected.items()
        }
        assert got == want, "%s[%s] at index %d" % (preset, name, i)


@pytest.mark.parametrize("i", range(4))
def test_lemma91_tables(i):
    _check_preset("lemma9.1", GOLDEN_LEMMA91, i)


@pytest.mark.parametrize("i", range(4))
def test_thm93_tables(i):
    _check_preset("thm9.3", GOLDEN_THM93, i)


@pytest.mark.parametrize("i", range(4))
def test_thm94_tables(i):
    _check_preset("thm9.4", GOLDEN_THM94, i)


def test_table_counts():
    assert len(preset_tables("lemma9.1", 0)) == 5
    assert len(preset_tables("thm9.3", 0)) == 3
    assert len(preset_tables("thm9.4", 0)) == 7


def test_format_tables_json():
    js = format_tables(preset_tables("lemma9.1", 0), "json")
    assert js[0]["expression"] == "n^3 z"
    assert {"term": "x1^3*x0^3*x2", "coeff": "-q^-6"} in js[0]["table"]


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset_tables("lemma1.1", 0)
