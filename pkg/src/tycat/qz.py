"""Exact elements of Q/Z.

A value ``t`` stands for the root of unity ``exp(2*pi*i*t)``; addition in
Q/Z is multiplication of roots of unity.  So ``QZ(1, 4)`` is ``i``,
``QZ(1, 2)`` is ``-1`` and ``QZ(0)`` is ``+1``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

Number = Union[int, Fraction, "QZ", str]


class QZ:
    __slots__ = ("numerator", "denominator")

    def __init__(self, value: Number = 0, denominator: int | None = None):
        if isinstance(value, QZ) and denominator is None:
            num, den = value.numerator, value.denominator
        else:
            if isinstance(value, str):
                frac = Fraction(value.strip())
            elif isinstance(value, QZ):
                frac = Fraction(value.numerator, value.denominator)
            else:
                frac = Fraction(value)
            if denominator is not None:
                if denominator <= 0:
                    raise ValueError("denominator must be positive")
                frac = frac / denominator
            num, den = frac.numerator % frac.denominator, frac.denominator
            g = gcd(num, den)
            num, den = num // g, den // g
            if num == 0:
                den = 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, name, value):
        raise AttributeError("QZ is immutable")

    @classmethod
    def from_int(cls, numerator: int, modulus: int) -> "QZ":
        return cls(numerator, modulus)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def order(self) -> int:
        return self.denominator

    def is_zero(self) -> bool:
        return self.numerator == 0

    def to_complex(self) -> complex:
        import cmath

        return cmath.exp(2j * cmath.pi * self.numerator / self.denominator)

    def __add__(self, other: Number) -> "QZ":
        o = other if isinstance(other, QZ) else QZ(other)
        return QZ(Fraction(self.numerator, self.denominator) + Fraction(o.numerator, o.denominator))

    __radd__ = __add__

    def __neg__(self) -> "QZ":
        return QZ(-self.numerator, self.denominator)

    def __sub__(self, other: Number) -> "QZ":
        o = other if isinstance(other, QZ) else QZ(other)
        return self + (-o)

    def __rsub__(self, other: Number) -> "QZ":
        return QZ(other) - self

    def __mul__(self, k: int) -> "QZ":
        if not isinstance(k, int):
            return NotImplemented
        return QZ(self.numerator * k, self.denominator)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, QZ):
            return self.numerator == other.numerator and self.denominator == other.denominator
        if isinstance(other, (int, Fraction, str)):
            return self == QZ(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("QZ", self.numerator, self.denominator))

    def __lt__(self, other: "QZ") -> bool:
        return Fraction(self.numerator, self.denominator) < Fraction(other.numerator, other.denominator)

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __str__(self) -> str:
        if self.numerator == 0:
            return "0"
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"QZ({str(self)!r})"


ZERO = QZ(0)
HALF = QZ(1, 2)
QUARTER = QZ(1, 4)


def parse_qz(text: Number) -> QZ:
    """Parse ``"1/4"``, ``"-1/4"``, ``"0"``, ints and fractions."""
    return QZ(text)
