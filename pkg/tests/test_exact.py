from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reebcz.exact import Angle, as_rational, floor_div, is_resonant, rational_to_str

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=500)
positive = st.fractions(min_value=Fraction(1, 500), max_value=1000, max_denominator=500)


@pytest.mark.parametrize(
    "a, b, expected",
    [(20, Fraction(99, 20), 4), (0, Fraction(7, 3), 0), (4, 3, 1), (-1, 2, -1), (Fraction(9, 2), Fraction(3, 2), 3)],
)
def test_floor_div_values(a, b, expected):
    assert floor_div(a, b) == expected


@pytest.mark.parametrize("b", [0, -1, Fraction(-1, 3)])
def test_floor_div_rejects_nonpositive_divisor(b):
    with pytest.raises(ValueError):
        floor_div(1, b)


@given(rationals, positive)
def test_floor_div_brackets_quotient(a, b):
    q = floor_div(a, b)
    assert q <= a / b < q + 1


def test_as_rational_parsing():
    assert as_rational("1/1000") == Fraction(1, 1000)
    assert as_rational(" 3 ") == 3
    assert as_rational(Fraction(2, 4)) == Fraction(1, 2)
    with pytest.raises(TypeError):
        as_rational(0.1)
    with pytest.raises(TypeError):
        as_rational(True)
    with pytest.raises(ValueError):
        as_rational("one half")
    with pytest.raises(ValueError):
        as_rational("1/0")


def test_rational_string_form():
    assert rational_to_str(Fraction(6, 4)) == "3/2"
    assert rational_to_str(Fraction(5)) == "5/1"


def test_resonance_examples():
    assert is_resonant(Angle(4))
    assert not is_resonant(Angle(Fraction(1, 2)))
    assert not is_resonant(Angle(3))
    assert is_resonant(Angle(-2))
    assert is_resonant(Angle(0))


def test_no_resonance_of_transverse_angle_for_default_eps():
    eps = Fraction(1, 1000)
    for N in range(1, 101):
        assert not is_resonant(Angle(2 * N * (1 - eps) / (1 + eps)))


@given(rationals, rationals, rationals)
def test_angle_arithmetic_is_exact(a, b, c):
    x, y, z = Angle(a), Angle(b), Angle(c)
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x - y) + y == x
    assert (x * 3) / 3 == x
    assert -(-x) == x


def test_angle_helpers():
    assert Angle.turns(1) == Angle(2)
    assert Angle(1).winding == Fraction(1, 2)
    assert Angle(Fraction(1, 2)).radians == pytest.approx(1.5707963267948966)
    assert Angle(1) < Angle(2)
