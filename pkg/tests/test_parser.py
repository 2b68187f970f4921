from fractions import Fraction

import pytest
from hypothesis import given

from crtangents import ParseError, Polynomial, parse_expression, parse_real
from crtangents.parser import max_index, tokenize

from strategies import polynomials


def test_single_variable():
    p = parse_expression("z1", n=3)
    assert p == Polynomial.z(1, 3)
    assert p.dimension == 3


def test_dimension_inferred():
    assert parse_expression("z1*zb4").dimension == 4
    assert max_index("2 + z3") == 3


def test_real_coordinates():
    assert parse_expression("x1 + i*y1", real_coords=True) == Polynomial.z(1, 1)
    assert parse_expression("x1^2 + y1^2", n=2, real_coords=True) == Polynomial.z(1, 2) * Polynomial.zbar(1, 2)


def test_real_coordinates_need_flag():
    with pytest.raises(ParseError):
        parse_expression("x1")


def test_real_ring():
    q = parse_real("x1*y2 - 3", n=2)
    assert q.dimension == 4
    with pytest.raises(ParseError):
        parse_real("z1", n=2)


def test_precedence():
    z1 = Polynomial.z(1, 1)
    assert parse_expression("-z1^2") == -(z1 ** 2)
    assert parse_expression("2*z1 + 3/4") == z1.scale(2) + Polynomial.constant(Fraction(3, 4), 1)
    assert parse_expression("(1 + i)*(1 - i)") == Polynomial.constant(2, 1)
    assert parse_expression("z1^(3)") == z1 ** 3


@pytest.mark.parametrize(
    "text,position",
    [("z1^(1/2)", 4), ("z0", 0), ("z1 +", 4), ("z1 * * z1", 5), ("(z1", 3), ("z1^-1", 3), ("3/0", 0), ("w1", 0), ("", 0), ("z1 z2", 3)],
)
def test_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.position == position
    assert info.value.category == "parse"


def test_index_beyond_n():
    with pytest.raises(ParseError):
        parse_expression("z4", n=3)


def test_tokens():
    kinds = [t.kind for t in tokenize("zb2^3 - 1/2*i")]
    assert kinds == ["var", "op", "num", "op", "num", "op", "unit", "end"]


@given(polynomials(n=3, max_degree=4, max_terms=6))
def test_print_parse_round_trip(p):
    text = str(p)
    q = parse_expression(text, n=3)
    assert q == p
    assert str(q) == text
