import random

import pytest

from polyhasse import GF, QQ, Polynomial, Zmod, format_poly, parse_poly
from polyhasse.errors import NonInvertibleDenominator, ParseError, UnknownVariable

from _gen import RINGS, names, poly

XY = ("x", "y")


def test_literal_reading():
    p = parse_poly("x^2 - 2*x*y + 1", XY, QQ)
    assert p.terms == {(2, 0): 1, (1, 1): -2, (0, 0): 1}


def test_reduction_on_parse():
    assert parse_poly("3*x", ("x",), GF(3)).is_zero()
    assert parse_poly("1/2*x", ("x",), GF(3)) == parse_poly("2*x", ("x",), GF(3))
    with pytest.raises(NonInvertibleDenominator):
        parse_poly("1/2*x", ("x",), Zmod(4))


@pytest.mark.parametrize("text, column", [
    ("x + * y", 5),
    ("x +", 4),
    ("x ^ y", 5),
    ("2*x y", 5),
    ("x $ y", 3),
])
def test_parse_error_columns(text, column):
    with pytest.raises(ParseError) as info:
        parse_poly(text, XY, QQ)
    assert info.value.column == column
    assert str(info.value).endswith(f"(column {column})")


def test_zero_denominator():
    with pytest.raises(ParseError):
        parse_poly("1/0*x", XY, QQ)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_poly("x + w", XY, QQ)


def test_printing_rules():
    assert format_poly(Polynomial.zero(QQ, XY)) == "0"
    assert str(parse_poly("1 - x", XY, QQ)) == "-x + 1"
    assert str(parse_poly("y - x^2*y + 1/2*x", XY, QQ)) == "-x^2*y + 1/2*x + y"
    assert str(parse_poly("x + y^2", XY, GF(2))) == "y^2 + x"
    assert str(parse_poly("x^2 - 2*x*y + 1", XY, QQ)) == "x^2 - 2*x*y + 1"
    assert str(parse_poly("-1", XY, QQ)) == "-1"


def test_whitespace_ignored():
    assert parse_poly("  x^2*y  -3 * y ", XY, QQ) == parse_poly("x^2*y-3*y", XY, QQ)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_parse_print_parse(ring):
    rng = random.Random(9)
    vars = names(3)
    for _ in range(200):
        p = poly(rng, ring, vars, 4, 5)
        text = str(p)
        q = parse_poly(text, vars, ring)
        assert q == p
        assert str(q) == text
