"""Closed forms for N_q, the number of solutions of
(a_1 x_1^m_1 + ... + a_n x_n^m_n)^k = b x_1^k_1 ... x_n^k_n over F_q.

Theorems 1 and 2 cover b outside the k0-th powers, Theorems 3 and 4 cover
k0-th powers when d = k0. Each evaluator refuses to run outside its
hypotheses.
"""

import logging
from typing import Callable, Dict

from ..diagonal import base_term, eta_sigma_sum, eta_values, sorted_coefficients
from ..eqmodel import ApplicabilityReport, DerivedParams, EquationSpec, Method, classify
from ..exceptions import ClosedFormMismatchError, HypothesisViolationError
from ..gf import eta
from ..numth import SurdValue, binomial, i_count, i_count_equal, i_count_subset_sum

logger = logging.getLogger(__name__)


def _require(spec: EquationSpec, dp: DerivedParams, method: Method) -> ApplicabilityReport:
    report = classify(spec, dp)
    if method not in report.applicable_methods():
        raise HypothesisViolationError(
            f"{method.value} does not apply to this instance", report.reasons)
    return report


def _eta_of_product(spec: EquationSpec, start) -> int:
    F = spec.field
    c = start
    for a_j in spec.a:
        c = F.mul(c, a_j)
    return eta(F, c)


def _sign_exponent(spec: EquationSpec, dp: DerivedParams) -> int:
    return spec.field.s // (2 * dp.ell)


def _power_head(q: int, n: int, k0: int) -> int:
    """q^(n-1) - (-1)^n + (k0 - 1)((q-1)^n - (-1)^n)/q."""
    return q ** (n - 1) - (-1) ** n + (k0 - 1) * (((q - 1) ** n - (-1) ** n) // q)


def theorem1(spec: EquationSpec, dp: DerivedParams) -> int:
    _require(spec, dp, Method.THEOREM1)
    F = spec.field
    q, n, t = spec.q, spec.n, dp.t_odd
    zs = eta_values(F, sorted_coefficients(spec, dp)[t:])

    if t == 0 and n % 2 == 0:
        return (q ** (n - 1) - ((q - 1) ** n + q - 1) // q
                - (q - 1) * eta_sigma_sum(F, zs, q, upper=(n - 2) // 2))
    if t == n:
        return q ** (n - 1) - base_term(q, n)
    return (q ** (n - 1) - base_term(q, n)
            - (-1) ** n * (q - 1) * eta_sigma_sum(F, zs, q, upper=(n - t) // 2))


def theorem3(spec: EquationSpec, dp: DerivedParams) -> int:
    _require(spec, dp, Method.THEOREM3)
    F = spec.field
    q, n, t, k0 = spec.q, spec.n, dp.t_odd, dp.k0
    zs = eta_values(F, sorted_coefficients(spec, dp)[t:])

    if t == 0 and n % 2 == 0:
        middle = SurdValue(q).add_half_power(
            k0 * _eta_of_product(spec, F.power(F.neg(1), n // 2)), n - 2).to_int()
        return (q ** (n - 1) - 1 + (k0 - 1) * (((q - 1) ** n - 1) // q)
                - middle
                - (k0 + q - 1) * eta_sigma_sum(F, zs, q, upper=(n - 2) // 2))
    if t == n:
        return _power_head(q, n, k0)
    return (_power_head(q, n, k0)
            - (-1) ** n * (k0 + q - 1) * eta_sigma_sum(F, zs, q, upper=(n - t) // 2))


def _subset_r_sum(spec: EquationSpec, dp: DerivedParams) -> int:
    """sum_{r=2}^{n-1} (-1)^(r s/2l) q^((r-2)/2) sum over r-subsets of I(d_j1, ..., d_jr)."""
    e = _sign_exponent(spec, dp)
    total = SurdValue(spec.q)
    for r in range(2, spec.n):
        total.add_half_power((-1) ** (r * e) * i_count_subset_sum(dp.dj, r), r - 2)
    return total.to_int()


def _binomial_r_sum(spec: EquationSpec, dp: DerivedParams) -> int:
    e = _sign_exponent(spec, dp)
    n = spec.n
    total = SurdValue(spec.q)
    for r in range(2, n):
        total.add_half_power((-1) ** (r * e) * binomial(n, r) * i_count_equal(dp.D, r), r - 2)
    return total.to_int()


def _require_equal_dj(dp: DerivedParams) -> None:
    if any(d_j != dp.D for d_j in dp.dj):
        raise HypothesisViolationError(
            "Binomial form needs d_1 = ... = d_n = D", [f"d_j = {list(dp.dj)}, D = {dp.D}"])


def _cross_check(method: Method, general: int, special: int) -> int:
    if general != special:
        logger.error(f"{method.value}: subset form {general} != binomial form {special}")
        raise ClosedFormMismatchError(
            f"{method.value}: subset form gives {general}, binomial form gives {special}")
    return general


def theorem2_general(spec: EquationSpec, dp: DerivedParams) -> int:
    _require(spec, dp, Method.THEOREM2)
    q, n = spec.q, spec.n
    return q ** (n - 1) - base_term(q, n) - (-1) ** n * (q - 1) * _subset_r_sum(spec, dp)


def theorem2_equal(spec: EquationSpec, dp: DerivedParams) -> int:
    _require(spec, dp, Method.THEOREM2)
    _require_equal_dj(dp)
    q, n = spec.q, spec.n
    return q ** (n - 1) - base_term(q, n) - (-1) ** n * (q - 1) * _binomial_r_sum(spec, dp)


def theorem2(spec: EquationSpec, dp: DerivedParams) -> int:
    """Theorem 2; the binomial specialisation is evaluated too when every d_j equals D."""
    value = theorem2_general(spec, dp)
    if all(d_j == dp.D for d_j in dp.dj):
        value = _cross_check(Method.THEOREM2, value, theorem2_equal(spec, dp))
    return value


def _theorem4_head(spec: EquationSpec, dp: DerivedParams, i_full: int) -> int:
    q, n, k0 = spec.q, spec.n, dp.k0
    e = _sign_exponent(spec, dp)
    middle = SurdValue(q).add_half_power((-1) ** ((e - 1) * n) * k0 * i_full, n - 2).to_int()
    return _power_head(q, n, k0) - middle


def theorem4_general(spec: EquationSpec, dp: DerivedParams) -> int:
    _require(spec, dp, Method.THEOREM4)
    q, n, k0 = spec.q, spec.n, dp.k0
    return (_theorem4_head(spec, dp, i_count(dp.dj))
            - (-1) ** n * (k0 + q - 1) * _subset_r_sum(spec, dp))


def theorem4_equal(spec: EquationSpec, dp: DerivedParams) -> int:
    _require(spec, dp, Method.THEOREM4)
    _require_equal_dj(dp)
    q, n, k0 = spec.q, spec.n, dp.k0
    return (_theorem4_head(spec, dp, i_count_equal(dp.D, n))
            - (-1) ** n * (k0 + q - 1) * _binomial_r_sum(spec, dp))


def theorem4(spec: EquationSpec, dp: DerivedParams) -> int:
    value = theorem4_general(spec, dp)
    if all(d_j == dp.D for d_j in dp.dj):
        value = _cross_check(Method.THEOREM4, value, theorem4_equal(spec, dp))
    return value


def pzc(spec: EquationSpec, dp: DerivedParams) -> int:
    """q^(n-1) + (-1)^(n-1), for any b, under the gcd condition."""
    _require(spec, dp, Method.PZC)
    return spec.q ** (spec.n - 1) + (-1) ** (spec.n - 1)


def carlitz_n3(spec: EquationSpec, dp: DerivedParams) -> int:
    """(a_1 x_1 + a_2 x_2 + a_3 x_3)^2 = b x_1 x_2 x_3, q odd."""
    _require(spec, dp, Method.CARLITZ_N3)
    return spec.q ** 2 + 1


def carlitz_n4(spec: EquationSpec, dp: DerivedParams) -> int:
    """(a_1 x_1 + ... + a_4 x_4)^2 = b x_1 x_2 x_3 x_4, q odd: q^3 - 1 - eta(b a_1 a_2 a_3 a_4) q."""
    _require(spec, dp, Method.CARLITZ_N4)
    q = spec.q
    return q ** 3 - 1 - _eta_of_product(spec, spec.b) * q


EVALUATORS: Dict[Method, Callable[[EquationSpec, DerivedParams], int]] = {
    Method.THEOREM1: theorem1,
    Method.THEOREM2: theorem2,
    Method.THEOREM3: theorem3,
    Method.THEOREM4: theorem4,
    Method.PZC: pzc,
    Method.CARLITZ_N3: carlitz_n3,
    Method.CARLITZ_N4: carlitz_n4,
}


def evaluate(method: Method, spec: EquationSpec, dp: DerivedParams) -> int:
    """Run the closed form registered for method."""
    try:
        evaluator = EVALUATORS[method]
    except KeyError:
        raise HypothesisViolationError(f"{method.value} is not a closed form", [])
    value = evaluator(spec, dp)
    logger.debug(f"{method.value} for q={spec.q}, n={spec.n}: {value}")
    return value
