from fractions import Fraction

import pytest

from meroflat.algebra import LaurentPuiseuxPoly
from meroflat.errors import ParseError
from meroflat.expr import parse


def test_grammar_example():
    f = parse("3/2*z^(-3/2)*w^2 - 1", ("z",), ("w",))
    assert f.terms == LaurentPuiseuxPoly(
        {(Fraction(-3, 2), Fraction(2)): Fraction(3, 2), (Fraction(0), Fraction(0)): Fraction(-1)},
        ("z", "w"), 1,
    ).terms


def test_leading_sign_and_bare_names():
    assert parse("-z^-1 + z") == parse("z - 1*z^-1")


def test_repeated_factors_multiply():
    assert parse("z*z^(1/2)") == parse("z^(3/2)")


@pytest.mark.parametrize("text,offset", [
    ("z^", 2),
    ("2*", 2),
    ("z + ? ", 4),
    ("q^-1", 0),
    ("z^(1/0)", 5),
])
def test_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == offset
    assert f"(at offset {offset})" in str(info.value)


def test_negative_tame_exponent_rejected():
    with pytest.raises(ParseError):
        parse("w^-1", ("z",), ("w",))
