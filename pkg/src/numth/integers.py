"""Integer and combinatorial helpers: gcd/lcm, the I-count, symmetric polynomials, cyclotomic polynomials."""

import itertools
import logging
from functools import lru_cache, reduce
from math import comb, gcd, lcm, prod
from typing import List, Optional, Sequence, Tuple

from sympy import divisors

from ..exceptions import IntegralityError
from ..utils.logger import debug_checks_enabled

logger = logging.getLogger(__name__)


def gcd_all(xs: Sequence[int]) -> int:
    """gcd of all entries (absolute values); 0 for an all-zero or empty input."""
    return reduce(gcd, (abs(int(x)) for x in xs), 0)


def lcm_all(xs: Sequence[int]) -> int:
    """lcm of a nonempty sequence of positive integers."""
    values = [int(x) for x in xs]
    if not values:
        raise ValueError("lcm_all needs at least one value")
    if any(x < 1 for x in values):
        raise ValueError(f"lcm_all needs positive integers, got {values}")
    return reduce(lcm, values, 1)


def _validate_vs(vs: Sequence[int]) -> Tuple[int, ...]:
    values = tuple(int(v) for v in vs)
    if not values:
        raise ValueError("I-count needs at least one argument")
    if any(v < 1 for v in values):
        raise ValueError(f"I-count arguments must be positive, got {values}")
    return values


def i_count_inclusion_exclusion(vs: Sequence[int]) -> int:
    """(-1)^r + sum over nonempty subsets J of (-1)^(r-|J|) * prod(v_J) / lcm(v_J)."""
    values = _validate_vs(vs)
    r = len(values)
    total = (-1) ** r
    for size in range(1, r + 1):
        sign = (-1) ** (r - size)
        for subset in itertools.combinations(values, size):
            total += sign * (prod(subset) // lcm_all(subset))
    return total


def i_count_product(vs: Sequence[int]) -> int:
    """((-1)^r / prod v) * sum_{t < prod v} prod_{v_j | t} (1 - v_j).

    The summand is periodic in t with period lcm(v), so the sum runs over one
    period and is scaled back up.
    """
    values = _validate_vs(vs)
    r = len(values)
    period = lcm_all(values)
    total = 0
    for t in range(period):
        term = 1
        for v in values:
            if t % v == 0:
                term *= 1 - v
        total += term
    if total % period:
        raise IntegralityError(
            f"Product form of I{values} is not integral: {total}/{period}")
    return (-1) ** r * (total // period)


def i_count_enumerate(vs: Sequence[int]) -> int:
    """Direct count of tuples 1 <= j_t <= v_t - 1 with sum j_t / v_t integral."""
    values = _validate_vs(vs)
    period = lcm_all(values)
    weights = [period // v for v in values]
    count = 0
    for js in itertools.product(*(range(1, v) for v in values)):
        if sum(j * w for j, w in zip(js, weights)) % period == 0:
            count += 1
    return count


def i_count_equal(v: int, r: int) -> int:
    """I(v, ..., v) with r copies: ((v-1)^r + (-1)^r (v-1)) / v."""
    if v < 1 or r < 1:
        raise ValueError(f"i_count_equal needs v, r >= 1, got v={v}, r={r}")
    numerator = (v - 1) ** r + (-1) ** r * (v - 1)
    if numerator % v:
        raise IntegralityError(f"I({v} x {r}) closed form is not integral")
    return numerator // v


@lru_cache(maxsize=4096)
def _i_count_cached(values: Tuple[int, ...]) -> int:
    return i_count_inclusion_exclusion(values)


def i_count(vs: Sequence[int], crosscheck: Optional[bool] = None) -> int:
    """Number of r-tuples (j_1..j_r), 1 <= j_t <= v_t - 1, with sum j_t/v_t an integer.

    Evaluated with the inclusion-exclusion form. With crosscheck the product
    form, and for prod(v) <= 10**6 direct enumeration, must agree; it defaults
    to on in debug mode.
    """
    values = tuple(sorted(_validate_vs(vs)))
    result = _i_count_cached(values)
    if crosscheck is None:
        crosscheck = debug_checks_enabled()
    if crosscheck:
        product_form = i_count_product(values)
        if product_form != result:
            raise IntegralityError(
                f"I{values}: inclusion-exclusion {result} != product form {product_form}")
        if prod(values) <= 10 ** 6:
            enumerated = i_count_enumerate(values)
            if enumerated != result:
                raise IntegralityError(
                    f"I{values}: closed form {result} != enumeration {enumerated}")
    return result


def i_count_subset_sum(vs: Sequence[int], r: int) -> int:
    """Sum of I over all r-element subsets (by position) of vs."""
    return sum(i_count(subset) for subset in itertools.combinations(vs, r))


def sym_poly(j: int, zs: Sequence[int]) -> int:
    """Elementary symmetric polynomial sigma_j evaluated at zs."""
    values = [int(z) for z in zs]
    if j < 0 or j > len(values):
        raise ValueError(f"sigma_{j} undefined for {len(values)} arguments")
    # coefficients of prod (1 + z X), truncated at degree j
    coeffs = [1] + [0] * j
    for z in values:
        for deg in range(j, 0, -1):
            coeffs[deg] += z * coeffs[deg - 1]
    return coeffs[j]


def binomial(n: int, r: int) -> int:
    return comb(n, r)


def _poly_divide_exact(num: List[int], den: List[int]) -> List[int]:
    """Exact division of integer polynomials (constant term first), den monic."""
    num = list(num)
    quotient = [0] * (len(num) - len(den) + 1)
    for shift in range(len(quotient) - 1, -1, -1):
        lead = num[shift + len(den) - 1]
        quotient[shift] = lead
        if lead:
            for i, c in enumerate(den):
                num[shift + i] -= lead * c
    if any(num):
        raise IntegralityError("Cyclotomic division left a remainder")
    return quotient


@lru_cache(maxsize=None)
def cyclotomic_poly(delta: int) -> Tuple[int, ...]:
    """Phi_delta as integer coefficients, constant term first.

    Computed by dividing x^delta - 1 by Phi_e for every proper divisor e.
    """
    if delta < 1:
        raise ValueError(f"Cyclotomic order must be positive, got {delta}")
    poly = [-1] + [0] * (delta - 1) + [1]
    for e in divisors(delta):
        if e == delta:
            continue
        poly = _poly_divide_exact(poly, list(cyclotomic_poly(e)))
    return tuple(poly)
