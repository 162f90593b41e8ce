"""Closed rational intervals with exact interval arithmetic.

Used to push rational sample points through maps whose coefficients are algebraic: every
algebraic input is replaced by its isolating interval, and the result is an interval that
certainly contains the exact value.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from algebra.algreal import AlgReal
from common.errors import PreconditionViolation


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise PreconditionViolation("enclosure", f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> "Enclosure":
        value = Fraction(value)
        return cls(value, value)

    @classmethod
    def of(cls, a: Union[AlgReal, Fraction, int]) -> "Enclosure":
        if isinstance(a, AlgReal):
            return cls.point(a.value) if a.is_rational else cls(a.lo, a.hi)
        return cls.point(a)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return self + (-other)

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        products = [a * b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Enclosure(min(products), max(products))

    def reciprocal(self) -> "Enclosure":
        if self.lo <= 0 <= self.hi:
            raise PreconditionViolation("enclosure", "division by an interval containing zero")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: "Enclosure") -> "Enclosure":
        return self * other.reciprocal()

    def abs(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(Fraction(0), max(-self.lo, self.hi))

    def strictly_below(self, other: "Enclosure") -> bool:
        return self.hi < other.lo
