"""Multiplicative characters of F_q*, as exponents of a fixed root of unity."""

from dataclasses import dataclass
from math import gcd
from typing import List

from ..gf import FieldTable, dlog
from ..numth import CyclotomicInt


@dataclass(frozen=True)
class Character:
    """psi(g^t) = zeta_{q-1}^(r t) for the field generator g."""
    field: FieldTable
    r: int

    def __post_init__(self):
        object.__setattr__(self, 'r', self.r % self.field.order)

    @property
    def order(self) -> int:
        """Order delta of psi in the character group."""
        q1 = self.field.order
        return q1 // gcd(self.r, q1)

    @property
    def reduced_exponent(self) -> int:
        """r' with psi(g^t) = zeta_delta^(r' t)."""
        return self.r // (self.field.order // self.order)

    def is_trivial(self) -> bool:
        return self.r == 0

    def conjugate(self) -> 'Character':
        return Character(self.field, -self.r)

    def power(self, e: int) -> 'Character':
        return Character(self.field, self.r * e)

    def is_trivial_power(self, e: int) -> bool:
        """Whether psi^e is the trivial character."""
        return (self.r * e) % self.field.order == 0

    def exponent_at(self, x: int) -> int:
        """Exponent u with psi(x) = zeta_{q-1}^u, x nonzero."""
        return (self.r * dlog(self.field, x)) % self.field.order

    def value(self, x: int) -> CyclotomicInt:
        """psi(x) in Z[zeta_delta].

        psi(0) is 1 for the trivial character and 0 otherwise; the character
        sums of this package never evaluate at zero.
        """
        if x == 0:
            return CyclotomicInt.from_int(self.order, 1 if self.is_trivial() else 0)
        return CyclotomicInt.root(
            self.order, (self.reduced_exponent * dlog(self.field, x)) % self.order)


def all_characters(F: FieldTable) -> List[Character]:
    return [Character(F, r) for r in range(F.order)]


def characters_dividing(F: FieldTable, d: int) -> List[Character]:
    """Characters with psi^d trivial, i.e. r a multiple of (q-1)/gcd(d, q-1)."""
    step = F.order // gcd(d, F.order)
    return [Character(F, r) for r in range(0, F.order, step)]


def corollary1_characters(F: FieldTable, d: int, k0: int) -> List[Character]:
    """Characters of order dividing d but not k0."""
    return [psi for psi in characters_dividing(F, d) if not psi.is_trivial_power(k0)]


def lemma1_characters(F: FieldTable, k0: int) -> List[Character]:
    """Characters of order not dividing k0."""
    return [psi for psi in all_characters(F) if not psi.is_trivial_power(k0)]
