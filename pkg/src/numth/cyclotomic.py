"""Exact arithmetic in Z[zeta_delta].

An element is kept in the power basis 1, zeta, ..., zeta^(phi(delta)-1), that
is, reduced modulo the cyclotomic polynomial Phi_delta. The coefficient list
has length delta; entries at indices >= phi(delta) are always zero.
"""

from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

from sympy import totient

from ..exceptions import IntegralityError
from .integers import cyclotomic_poly


@lru_cache(maxsize=256)
def _power_basis(order: int) -> Tuple[Tuple[int, ...], ...]:
    """Reduced coefficient vectors of zeta^i for i in [0, order)."""
    phi = cyclotomic_poly(order)
    degree = len(phi) - 1
    rows = []
    current = [0] * degree
    current[0] = 1
    for _ in range(order):
        rows.append(tuple(current))
        # multiply by zeta, then fold the overflow back with Phi (monic)
        overflow = current[-1]
        current = [0] + current[:-1]
        if overflow:
            current = [c - overflow * phi[i] for i, c in enumerate(current)]
    return tuple(rows)


def _reduce(order: int, raw: Sequence[int]) -> List[int]:
    """Reduce raw coefficients of zeta^0..zeta^(order-1) into the power basis."""
    basis = _power_basis(order)
    degree = len(basis[0])
    reduced = [0] * degree
    for i, count in enumerate(raw):
        if not count:
            continue
        row = basis[i % order]
        for idx in range(degree):
            if row[idx]:
                reduced[idx] += count * row[idx]
    return reduced + [0] * (order - degree)


class CyclotomicInt:
    """Element of Z[zeta_delta] with arbitrary-precision coefficients."""

    __slots__ = ('order', 'coeffs')

    def __init__(self, order: int, coeffs: Iterable[int] = ()):
        if order < 1:
            raise ValueError(f"Root-of-unity order must be positive, got {order}")
        raw = [0] * order
        for i, c in enumerate(coeffs):
            raw[i % order] += int(c)
        self.order = order
        self.coeffs = _reduce(order, raw)

    @classmethod
    def zero(cls, order: int) -> 'CyclotomicInt':
        return cls(order)

    @classmethod
    def from_int(cls, order: int, value: int) -> 'CyclotomicInt':
        return cls(order, [value])

    @classmethod
    def root(cls, order: int, power: int, count: int = 1) -> 'CyclotomicInt':
        """count * zeta^power."""
        element = cls(order)
        element.accumulate(power, count)
        return element

    @property
    def degree(self) -> int:
        """Dimension phi(order) of Z[zeta] over Z."""
        return int(totient(self.order))

    def accumulate(self, root_power: int, count: int) -> 'CyclotomicInt':
        """Add count * zeta^root_power in place."""
        if count:
            row = _power_basis(self.order)[root_power % self.order]
            for idx, c in enumerate(row):
                if c:
                    self.coeffs[idx] += count * c
        return self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check_order(self, other: 'CyclotomicInt') -> None:
        if self.order != other.order:
            raise ValueError(
                f"Cannot combine Z[zeta_{self.order}] with Z[zeta_{other.order}]; lift first")

    def __add__(self, other: Union['CyclotomicInt', int]) -> 'CyclotomicInt':
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.order, other)
        self._check_order(other)
        result = CyclotomicInt(self.order)
        result.coeffs = [a + b for a, b in zip(self.coeffs, other.coeffs)]
        return result

    __radd__ = __add__

    def __neg__(self) -> 'CyclotomicInt':
        result = CyclotomicInt(self.order)
        result.coeffs = [-c for c in self.coeffs]
        return result

    def __sub__(self, other: Union['CyclotomicInt', int]) -> 'CyclotomicInt':
        return self + (-other)

    def __mul__(self, other: Union['CyclotomicInt', int]) -> 'CyclotomicInt':
        if isinstance(other, int):
            result = CyclotomicInt(self.order)
            result.coeffs = [c * other for c in self.coeffs]
            return result
        self._check_order(other)
        raw = [0] * self.order
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    raw[(i + j) % self.order] += a * b
        return CyclotomicInt(self.order, raw)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.order, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, tuple(self.coeffs)))

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CyclotomicInt[{self.order}]({' + '.join(terms) or '0'})"

    def rotate(self, power: int) -> 'CyclotomicInt':
        """Multiply by zeta^power."""
        raw = [0] * self.order
        for i, c in enumerate(self.coeffs):
            if c:
                raw[(i + power) % self.order] += c
        return CyclotomicInt(self.order, raw)

    def conjugate(self) -> 'CyclotomicInt':
        """Image under zeta -> zeta^(-1) (complex conjugation)."""
        raw = [0] * self.order
        for i, c in enumerate(self.coeffs):
            if c:
                raw[(-i) % self.order] += c
        return CyclotomicInt(self.order, raw)

    def lift(self, new_order: int) -> 'CyclotomicInt':
        """Embed into Z[zeta_new_order] via zeta_order = zeta_new_order^(new_order/order)."""
        if new_order % self.order:
            raise ValueError(f"{self.order} does not divide {new_order}")
        step = new_order // self.order
        raw = [0] * new_order
        for i, c in enumerate(self.coeffs):
            if c:
                raw[i * step] += c
        return CyclotomicInt(new_order, raw)

    def divisible_by(self, n: int) -> bool:
        if n == 0:
            return False
        return all(c % n == 0 for c in self.coeffs)

    def exact_div(self, n: int) -> 'CyclotomicInt':
        """Divide by a rational integer; the quotient must lie in Z[zeta]."""
        if not self.divisible_by(n):
            raise IntegralityError(
                f"{self!r} is not divisible by {n} in Z[zeta_{self.order}]")
        result = CyclotomicInt(self.order)
        result.coeffs = [c // n for c in self.coeffs]
        return result

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_integer(self) -> int:
        if not self.is_rational():
            raise IntegralityError(f"{self!r} is not a rational integer")
        return self.coeffs[0]
