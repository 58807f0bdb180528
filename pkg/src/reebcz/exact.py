"""Exact rationals and angles measured in units of pi.

All index computations run on :class:`fractions.Fraction`; floats only appear
in the numerical cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = ["Rational", "Angle", "as_rational", "floor_div", "is_resonant", "rational_to_str"]


def as_rational(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions and strings such as ``"1/1000"`` or ``"3"``.
    Floats are refused: a binary float is almost never the number the user meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def floor_div(a, b) -> int:
    """Exact ``floor(a / b)`` for rationals with ``b > 0``."""
    a, b = as_rational(a), as_rational(b)
    if b <= 0:
        raise ValueError(f"floor_div requires a positive divisor, got {b}")
    return math.floor(a / b)


@dataclass(frozen=True, order=True)
class Angle:
    """The angle ``coeff * pi`` with an exact rational coefficient."""

    coeff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_rational(self.coeff))

    @classmethod
    def turns(cls, q) -> "Angle":
        """Angle of ``q`` full turns, i.e. ``2*pi*q``."""
        return cls(2 * as_rational(q))

    def __add__(self, other: "Angle") -> "Angle":
        if not isinstance(other, Angle):
            return NotImplemented
        return Angle(self.coeff + other.coeff)

    def __sub__(self, other: "Angle") -> "Angle":
        if not isinstance(other, Angle):
            return NotImplemented
        return Angle(self.coeff - other.coeff)

    def __neg__(self) -> "Angle":
        return Angle(-self.coeff)

    def __mul__(self, k) -> "Angle":
        return Angle(self.coeff * as_rational(k))

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Angle":
        return Angle(self.coeff / as_rational(k))

    @property
    def radians(self) -> float:
        return float(self.coeff) * math.pi

    @property
    def winding(self) -> Fraction:
        """The angle divided by 2*pi."""
        return self.coeff / 2

    def is_multiple_of_2pi(self) -> bool:
        return self.coeff.denominator == 1 and self.coeff.numerator % 2 == 0

    def __str__(self) -> str:
        return f"{self.coeff}*pi"


def is_resonant(angle: Angle) -> bool:
    """True iff ``e^{i*angle} == 1`` exactly."""
    return angle.is_multiple_of_2pi()
