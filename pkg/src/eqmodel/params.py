"""Derived parameters of an equation instance and closed-form applicability."""

import logging
from math import gcd, prod
from typing import List, Optional, Sequence, Tuple

from ..exceptions import CountingError
from ..gf import is_kth_power
from ..numth import gcd_all, lcm_all
from .models import ApplicabilityReport, DerivedParams, EquationSpec

logger = logging.getLogger(__name__)


def parity_sort(dj: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    """Stable permutation putting odd d_j first, and the number of odd d_j."""
    odd = [i for i, d in enumerate(dj) if d % 2 == 1]
    even = [i for i, d in enumerate(dj) if d % 2 == 0]
    return tuple(odd + even), len(odd)


def minimal_ell(p: int, s: int, D: int) -> Optional[int]:
    """Least l in [1, s] with D | p^l + 1, for D > 2; None otherwise.

    When it exists, 2l divides s; this is checked rather than assumed.
    """
    if D <= 2:
        return None
    for ell in range(1, s + 1):
        if (pow(p, ell, D) + 1) % D == 0:
            if s % (2 * ell):
                raise CountingError(
                    f"Minimal l = {ell} with {D} | {p}^l + 1 does not satisfy 2l | s = {s}")
            return ell
    return None


def compute_d(spec: EquationSpec, M: int, dj: Sequence[int]) -> int:
    q1 = spec.q - 1
    head = sum(k_j * M // m_j for k_j, m_j in zip(spec.kj, spec.m)) - spec.k * M
    return gcd_all([head] + [k_j * q1 // d_j for k_j, d_j in zip(spec.kj, dj)] + [q1])


def d_unit_exponents(spec: EquationSpec) -> int:
    """gcd(sum M/m_j - kM, (q-1)/D): the value of d when every k_j = 1."""
    q1 = spec.q - 1
    M = lcm_all(spec.m)
    D = lcm_all([gcd(m_j, q1) for m_j in spec.m])
    return gcd_all([sum(M // m_j for m_j in spec.m) - spec.k * M, q1 // D])


def pzc_condition(spec: EquationSpec) -> bool:
    """gcd(sum_j k_j * prod(m) / m_j - k * prod(m), q - 1) == 1."""
    P = prod(spec.m)
    head = sum(k_j * P // m_j for k_j, m_j in zip(spec.kj, spec.m)) - spec.k * P
    return gcd(abs(head), spec.q - 1) == 1


def derive_params(spec: EquationSpec) -> DerivedParams:
    """Compute k0, M, d_j, D, d, the parity ordering, minimal l and the class of b."""
    F = spec.field
    q1 = spec.q - 1
    k0 = gcd_all([spec.k, *spec.kj, q1])
    M = lcm_all(spec.m)
    dj = tuple(gcd(m_j, q1) for m_j in spec.m)
    D = lcm_all(dj)
    d = compute_d(spec, M, dj)
    if d % k0:
        raise CountingError(f"k0 = {k0} does not divide d = {d}")
    perm, t_odd = parity_sort(dj)
    ell = minimal_ell(F.p, F.s, D)
    b_power = is_kth_power(F, spec.b, k0)
    params = DerivedParams(
        k0=k0,
        M=M,
        dj=dj,
        D=D,
        d=d,
        t_odd=t_odd,
        sorted_perm=perm,
        ell=ell,
        b_is_k0_power=b_power,
    )
    logger.debug(f"Derived parameters for q={spec.q}: {params}")
    return params


def lemma3_structure(dj: Sequence[int]) -> Tuple[bool, List[str]]:
    """Odd d_j together with the halves of even d_j must be pairwise coprime."""
    perm, t = parity_sort(dj)
    reduced = [dj[i] if dj[i] % 2 else dj[i] // 2 for i in perm]
    reasons = []
    for i in range(len(reduced)):
        for j in range(i + 1, len(reduced)):
            if gcd(reduced[i], reduced[j]) != 1:
                reasons.append(
                    f"d_j values {reduced[i]} and {reduced[j]} (odd d_j / halves of even d_j) "
                    f"are not coprime")
    return not reasons, reasons


def lemma4_structure(spec: EquationSpec, dp: DerivedParams) -> Tuple[bool, List[str]]:
    reasons = []
    if any(a_j != 1 for a_j in spec.a):
        reasons.append("not all a_j equal 1")
    if dp.D <= 2:
        reasons.append(f"D = {dp.D} is not greater than 2")
    elif dp.ell is None:
        reasons.append(f"no l <= s with D = {dp.D} dividing p^l + 1")
    return not reasons, reasons


def classify(spec: EquationSpec, dp: DerivedParams) -> ApplicabilityReport:
    """Decide which closed-form evaluations apply to the instance."""
    report = ApplicabilityReport()
    report.lemma3_structure, reasons3 = lemma3_structure(dp.dj)
    report.lemma4_structure, reasons4 = lemma4_structure(spec, dp)
    report.d_equals_k0 = dp.d == dp.k0
    power = dp.b_is_k0_power

    report.theorem1 = report.lemma3_structure and not power
    report.theorem3 = report.lemma3_structure and power and report.d_equals_k0
    report.theorem2 = report.lemma4_structure and not power
    report.theorem4 = report.lemma4_structure and power and report.d_equals_k0

    report.pzc = pzc_condition(spec)

    carlitz_shape = (
        all(m_j == 1 for m_j in spec.m)
        and all(k_j == 1 for k_j in spec.kj)
        and spec.k == 2
        and spec.field.p > 2
    )
    report.carlitz_n3 = carlitz_shape and spec.n == 3
    report.carlitz_n4 = carlitz_shape and spec.n == 4

    if not report.lemma3_structure:
        report.reasons.extend(f"Theorems 1/3: {r}" for r in reasons3)
    if not report.lemma4_structure:
        report.reasons.extend(f"Theorems 2/4: {r}" for r in reasons4)
    if power and not report.d_equals_k0:
        report.reasons.append(
            f"Theorems 3/4: d = {dp.d} differs from k0 = {dp.k0}")
    if power:
        report.reasons.append(f"b is a k0-th power (k0 = {dp.k0}): Theorems 1/2 excluded")
    else:
        report.reasons.append(f"b is not a k0-th power (k0 = {dp.k0}): Theorems 3/4 excluded")
    if not report.pzc:
        report.reasons.append("PZC: gcd condition fails")

    if report.reasons:
        logger.info(f"Classification notes for q={spec.q}: {'; '.join(report.reasons)}")
    return report
