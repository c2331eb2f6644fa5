"""Exact values u + v*sqrt(q) for the half-integer powers of q in the closed forms."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Union

from ..exceptions import IntegralityError

Number = Union[int, Fraction]


@dataclass
class SurdValue:
    """Accumulates terms c * q^(e/2); sqrt(q) is kept symbolic unless q is a square."""
    q: int
    rational: Fraction = field(default_factory=Fraction)
    surd: Fraction = field(default_factory=Fraction)

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"q must be at least 2, got {self.q}")
        root = isqrt(self.q)
        self._root = root if root * root == self.q else None

    def add(self, value: Number) -> 'SurdValue':
        self.rational += Fraction(value)
        return self

    def add_half_power(self, coeff: Number, e: int) -> 'SurdValue':
        """Add coeff * q^(e/2)."""
        coeff = Fraction(coeff)
        if e % 2 == 0:
            self.rational += coeff * Fraction(self.q) ** (e // 2)
        elif self._root is not None:
            self.rational += coeff * Fraction(self._root) ** e
        else:
            self.surd += coeff * Fraction(self.q) ** ((e - 1) // 2)
        return self

    def to_int(self) -> int:
        """The value as an int; a surviving sqrt(q) part or a fraction is a bug."""
        if self.surd != 0:
            raise IntegralityError(
                f"Half-power coefficient {self.surd} of sqrt({self.q}) did not cancel")
        if self.rational.denominator != 1:
            raise IntegralityError(f"Value {self.rational} is not an integer")
        return int(self.rational)
