"""Explicit finite fields F_{p^s} driven by discrete-logarithm tables.

Elements are integer encodings: c = c_0 + c_1 p + ... + c_{s-1} p^{s-1} stands
for the polynomial c_0 + c_1 x + ... + c_{s-1} x^{s-1} modulo the field's
modulus. Multiplication goes through the exp/log tables, addition through the
base-p digit matrix.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime, primefactors
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

from ..exceptions import FieldConstructionError, FieldElementError

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 1 << 17


def _to_dense(coeffs: Sequence[int]) -> List[int]:
    """Constant-first coefficients -> galoistools dense list (highest first, stripped)."""
    dense = [int(c) for c in reversed(coeffs)]
    while dense and dense[0] == 0:
        dense.pop(0)
    return dense


def _encode_dense(dense: Sequence[int], p: int) -> int:
    value = 0
    for c in dense:
        value = value * p + int(c)
    return value


def _decode_dense(c: int, p: int) -> List[int]:
    digits = []
    while c:
        digits.append(c % p)
        c //= p
    return list(reversed(digits))


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    return bool(gf_irreducible_p(_to_dense(modulus), p, ZZ))


def _smallest_irreducible(p: int, s: int) -> Tuple[int, ...]:
    """Smallest monic irreducible of degree s, lower coefficients read as a base-p integer."""
    for tail in range(p ** s):
        coeffs = [(tail // p ** i) % p for i in range(s)] + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldConstructionError(
        f"No irreducible polynomial of degree {s} over F_{p}")


@dataclass(frozen=True, eq=False)
class FieldTable:
    """A fully materialized finite field with a fixed primitive element."""
    p: int
    s: int
    q: int
    modulus: Tuple[int, ...]
    generator_index: int
    exp_table: np.ndarray
    log_table: np.ndarray
    digits: np.ndarray

    def __repr__(self) -> str:
        return f"FieldTable(q={self.q}, p={self.p}, s={self.s}, g={self.generator_index})"

    @property
    def order(self) -> int:
        """Order q - 1 of the multiplicative group."""
        return self.q - 1

    def nonzero(self) -> Iterator[int]:
        return iter(range(1, self.q))

    def check(self, x: int) -> int:
        """Validate an element encoding and return it as a plain int."""
        x = int(x)
        if x < 0 or x >= self.q:
            raise FieldElementError(
                f"Element encoding {x} out of range for F_{self.q}")
        return x

    def encode(self, digit_row: Sequence[int]) -> int:
        return int(sum(int(c) * self.p ** i for i, c in enumerate(digit_row)))

    def add(self, x: int, y: int) -> int:
        if self.s == 1:
            return (x + y) % self.p
        return self.encode((self.digits[x] + self.digits[y]) % self.p)

    def neg(self, x: int) -> int:
        if self.s == 1:
            return (-x) % self.p
        return self.encode((-self.digits[x]) % self.p)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        t = (int(self.log_table[x]) + int(self.log_table[y])) % self.order
        return int(self.exp_table[t])

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldElementError("Zero has no multiplicative inverse")
        return int(self.exp_table[(-int(self.log_table[x])) % self.order])

    def power(self, x: int, e: int) -> int:
        if x == 0:
            if e <= 0:
                raise FieldElementError("0 raised to a non-positive power")
            return 0
        return int(self.exp_table[(int(self.log_table[x]) * e) % self.order])

    def gen_power(self, t: int) -> int:
        """g^t for any integer t."""
        return int(self.exp_table[t % self.order])

    def add_column(self, c: int) -> np.ndarray:
        """Vector whose entry x is the encoding of x + c, for every x in F_q."""
        shifted = (self.digits + self.digits[c]) % self.p
        return shifted @ (self.p ** np.arange(self.s, dtype=np.int64))

    def power_map(self, m: int) -> np.ndarray:
        """Vector whose entry x is x^m, for every x in F_q (0 maps to 0)."""
        out = np.zeros(self.q, dtype=np.int64)
        logs = self.log_table[1:]
        out[1:] = self.exp_table[(logs * m) % self.order]
        return out

    def scale_vector(self, values: np.ndarray, c: int) -> np.ndarray:
        """Elementwise c * values for an array of element encodings."""
        values = np.asarray(values, dtype=np.int64)
        if c == 0:
            return np.zeros_like(values)
        out = np.zeros_like(values)
        nz = values != 0
        out[nz] = self.exp_table[(self.log_table[values[nz]] + int(self.log_table[c])) % self.order]
        return out

    def term_histogram(self, a: int, m: int, include_zero: bool) -> np.ndarray:
        """Counts of a * x^m over x in F_q (or F_q* when include_zero is False)."""
        values = self.scale_vector(self.power_map(m), a)
        if not include_zero:
            values = values[1:]
        return np.bincount(values, minlength=self.q)


def _find_generator(p: int, s: int, modulus: Tuple[int, ...]) -> int:
    q = p ** s
    if q == 2:
        return 1
    dense_mod = _to_dense(modulus)
    one = [1]
    exponents = [(q - 1) // r for r in primefactors(q - 1)]
    for c in range(2, q):
        g = _decode_dense(c, p)
        if all(gf_pow_mod(g, e, dense_mod, p, ZZ) != one for e in exponents):
            return c
    raise FieldConstructionError(f"No primitive element found for F_{q}")


def _validate_modulus(modulus: Sequence[int], p: int, s: int) -> Tuple[int, ...]:
    coeffs = tuple(int(c) for c in modulus)
    if len(coeffs) != s + 1:
        raise FieldConstructionError(
            f"Modulus must have {s + 1} coefficients (constant term first), got {len(coeffs)}")
    if any(c < 0 or c >= p for c in coeffs):
        raise FieldConstructionError(f"Modulus coefficients must lie in [0, {p})")
    if coeffs[-1] != 1:
        raise FieldConstructionError("Modulus must be monic")
    if not _is_irreducible(coeffs, p):
        raise FieldConstructionError(f"Modulus {coeffs} is reducible over F_{p}")
    return coeffs


def build_field(
    p: int,
    s: int = 1,
    modulus: Optional[Sequence[int]] = None,
    max_order: int = DEFAULT_MAX_ORDER
) -> FieldTable:
    """Build F_{p^s} with exp/log tables.

    Args:
        p: Characteristic, must be prime
        s: Extension degree, at least 1
        modulus: Optional monic irreducible of degree s, constant term first.
            Defaults to the smallest one when its lower coefficients are read
            as a base-p integer.
        max_order: Largest admissible field size

    Returns:
        FieldTable: the field, with the smallest-encoding primitive element as generator

    Raises:
        FieldConstructionError: If p is not prime, s < 1, q is too large or the modulus is invalid
    """
    if not isinstance(p, int) or not isprime(p):
        raise FieldConstructionError(f"Characteristic {p} is not prime")
    if not isinstance(s, int) or s < 1:
        raise FieldConstructionError(f"Extension degree must be >= 1, got {s}")
    q = p ** s
    if q > max_order:
        raise FieldConstructionError(
            f"Field order {q} exceeds the table bound {max_order}")

    if modulus is None:
        coeffs = _smallest_irreducible(p, s)
    else:
        coeffs = _validate_modulus(modulus, p, s)

    g = _find_generator(p, s, coeffs)
    logger.debug(f"Building F_{q}: modulus={coeffs}, generator={g}")

    exp_table = np.zeros(q - 1, dtype=np.int64)
    log_table = np.full(q, -1, dtype=np.int64)
    if s == 1:
        value = 1
        for t in range(q - 1):
            exp_table[t] = value
            log_table[value] = t
            value = (value * g) % p
    else:
        dense_mod = _to_dense(coeffs)
        dense_g = _decode_dense(g, p)
        value = [1]
        for t in range(q - 1):
            code = _encode_dense(value, p)
            exp_table[t] = code
            log_table[code] = t
            value = gf_rem(gf_mul(value, dense_g, p, ZZ), dense_mod, p, ZZ)

    if (log_table[1:] < 0).any():
        raise FieldConstructionError(
            f"Generator {g} does not have order {q - 1}")

    codes = np.arange(q, dtype=np.int64)
    digits = (codes[:, None] // (p ** np.arange(s, dtype=np.int64))) % p

    for table in (exp_table, log_table, digits):
        table.setflags(write=False)

    return FieldTable(
        p=p,
        s=s,
        q=q,
        modulus=coeffs,
        generator_index=g,
        exp_table=exp_table,
        log_table=log_table,
        digits=digits,
    )


@lru_cache(maxsize=64)
def cached_field(p: int, s: int = 1, modulus: Optional[Tuple[int, ...]] = None) -> FieldTable:
    """Memoized build_field for the default bound; FieldTable is immutable."""
    return build_field(p, s, modulus)


def field_for_order(q: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldTable:
    """Build the canonical field of order q (q must be a prime power)."""
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise FieldConstructionError(f"{q} is not a prime power")
    (p, s), = factors.items()
    if max_order == DEFAULT_MAX_ORDER:
        return cached_field(p, s)
    return build_field(p, s, max_order=max_order)


def element_from_int(F: FieldTable, c: int) -> int:
    """Interpret c in base p as coefficients relative to the modulus."""
    if c < 0 or c >= F.q:
        raise FieldElementError(f"Element encoding {c} out of range [0, {F.q})")
    return int(c)


def dlog(F: FieldTable, x: int) -> int:
    """Discrete logarithm of a nonzero element to the base of the field generator."""
    x = F.check(x)
    if x == 0:
        raise FieldElementError("Discrete logarithm of zero is undefined")
    return int(F.log_table[x])


def eta(F: FieldTable, x: int) -> int:
    """Quadratic character: +1 on nonzero squares, -1 on nonsquares, 0 at zero."""
    if F.p == 2:
        raise FieldElementError("The quadratic character is undefined in characteristic 2")
    x = F.check(x)
    if x == 0:
        return 0
    return 1 if F.log_table[x] % 2 == 0 else -1


def is_kth_power(F: FieldTable, x: int, t: int) -> bool:
    """Whether a nonzero x is a t-th power in F_q.

    For t dividing q - 1 this is dlog(x) = 0 (mod t); in general the t-th
    powers are the gcd(t, q - 1)-th powers.
    """
    if t < 1:
        raise FieldElementError(f"Power index must be positive, got {t}")
    return dlog(F, x) % gcd(t, F.order) == 0
