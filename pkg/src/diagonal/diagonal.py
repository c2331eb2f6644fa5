"""Counts N_q(0), N_q*(0) for the diagonal equation a_1 x_1^m_1 + ... + a_n x_n^m_n = 0."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from ..eqmodel import (
    DerivedParams,
    DiagonalMethod,
    EquationSpec,
    lemma3_structure,
    lemma4_structure,
)
from ..exceptions import HypothesisViolationError, IntegralityError
from ..gf import FieldTable, eta
from ..numth import SurdValue, binomial, i_count, i_count_equal, i_count_subset_sum, sym_poly

logger = logging.getLogger(__name__)

INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class DiagonalCounts:
    """Solutions of the diagonal equation in F_q^n (n0) and in (F_q*)^n (nstar0)."""
    n0: int
    nstar0: int
    method: DiagonalMethod

    def to_dict(self) -> Dict:
        return {'n0': str(self.n0), 'nstar0': str(self.nstar0), 'method': self.method.value}


def count_dtype(bound: int):
    """int64 while counts provably fit, Python ints otherwise."""
    return np.int64 if bound < INT64_SAFE else object


def base_term(q: int, n: int) -> int:
    """((q-1)^n + (-1)^n (q-1)) / q, the all-nonzero count of a generic diagonal equation."""
    numerator = (q - 1) ** n + (-1) ** n * (q - 1)
    if numerator % q:
        raise IntegralityError(f"((q-1)^n + (-1)^n (q-1)) / q not integral for q={q}, n={n}")
    return numerator // q


def eta_values(F: FieldTable, values) -> List[int]:
    return [eta(F, v) for v in values]


def sorted_coefficients(spec: EquationSpec, dp: DerivedParams) -> List[int]:
    return [spec.a[i] for i in dp.sorted_perm]


def eta_sigma_sum(F: FieldTable, zs: List[int], q: int, upper: Optional[int] = None) -> int:
    """sum_{j=1}^{upper} eta((-1)^j) sigma_2j(zs) q^(j-1); upper defaults to [len(zs)/2]."""
    if upper is None:
        upper = len(zs) // 2
    if upper < 1:
        return 0
    eta_minus_one = eta(F, F.neg(1))
    return sum(
        eta_minus_one ** j * sym_poly(2 * j, zs) * q ** (j - 1)
        for j in range(1, upper + 1)
    )


def _require_lemma3(spec: EquationSpec, dp: DerivedParams) -> None:
    ok, reasons = lemma3_structure(dp.dj)
    if not ok:
        raise HypothesisViolationError("Lemma 3 hypotheses do not hold", reasons)
    if dp.t_odd < spec.n and spec.field.p == 2:
        raise HypothesisViolationError(
            "Even d_j in characteristic 2", ["q - 1 is odd, so every d_j must be odd"])


def _require_lemma4(spec: EquationSpec, dp: DerivedParams) -> None:
    ok, reasons = lemma4_structure(spec, dp)
    if not ok:
        raise HypothesisViolationError("Lemma 4 hypotheses do not hold", reasons)


def diag_lemma3(spec: EquationSpec, dp: DerivedParams) -> DiagonalCounts:
    """Diagonal counts when odd d_j and halves of even d_j are pairwise coprime."""
    _require_lemma3(spec, dp)
    F = spec.field
    q, n, t = spec.q, spec.n, dp.t_odd
    a_sorted = sorted_coefficients(spec, dp)

    n0 = SurdValue(q).add(q ** (n - 1))
    if t == 0 and n % 2 == 0:
        c = F.power(F.neg(1), n // 2)
        for a_j in a_sorted:
            c = F.mul(c, a_j)
        n0.add_half_power(eta(F, c) * (q - 1), n - 2)

    nstar0 = base_term(q, n)
    if t < n:
        zs = eta_values(F, a_sorted[t:])
        nstar0 += (-1) ** n * (q - 1) * eta_sigma_sum(F, zs, q)

    return DiagonalCounts(n0=n0.to_int(), nstar0=nstar0, method=DiagonalMethod.LEMMA3)


def _lemma4_sign_exponent(spec: EquationSpec, dp: DerivedParams) -> int:
    """s / 2l."""
    return spec.field.s // (2 * dp.ell)


def diag_lemma4(spec: EquationSpec, dp: DerivedParams) -> DiagonalCounts:
    """Diagonal counts for a_j = 1, D > 2 and D | p^l + 1."""
    _require_lemma4(spec, dp)
    q, n = spec.q, spec.n
    e = _lemma4_sign_exponent(spec, dp)

    n0 = SurdValue(q).add(q ** (n - 1))
    n0.add_half_power((-1) ** ((e - 1) * n) * (q - 1) * i_count(dp.dj), n - 2)

    tail = SurdValue(q)
    for r in range(2, n + 1):
        tail.add_half_power((-1) ** (r * e) * i_count_subset_sum(dp.dj, r), r - 2)
    nstar0 = base_term(q, n) + (-1) ** n * (q - 1) * tail.to_int()

    return DiagonalCounts(n0=n0.to_int(), nstar0=nstar0, method=DiagonalMethod.LEMMA4)


def diag_corollary2(spec: EquationSpec, dp: DerivedParams) -> DiagonalCounts:
    """Lemma 4 specialised to d_1 = ... = d_n = D."""
    _require_lemma4(spec, dp)
    if any(d_j != dp.D for d_j in dp.dj):
        raise HypothesisViolationError(
            "Corollary 2 needs all d_j equal", [f"d_j = {list(dp.dj)}, D = {dp.D}"])
    q, n, D = spec.q, spec.n, dp.D
    e = _lemma4_sign_exponent(spec, dp)

    n0 = SurdValue(q).add(q ** (n - 1))
    n0.add_half_power((-1) ** ((e - 1) * n) * (q - 1) * i_count_equal(D, n), n - 2)

    tail = SurdValue(q)
    for r in range(2, n + 1):
        tail.add_half_power((-1) ** (r * e) * binomial(n, r) * i_count_equal(D, r), r - 2)
    nstar0 = base_term(q, n) + (-1) ** n * (q - 1) * tail.to_int()

    return DiagonalCounts(n0=n0.to_int(), nstar0=nstar0, method=DiagonalMethod.COROLLARY2)


def sum_distribution(spec: EquationSpec, include_zero: bool) -> np.ndarray:
    """Distribution of a_1 x_1^m_1 + ... + a_n x_n^m_n over F_q.

    Coordinates range over F_q when include_zero is set, over F_q* otherwise.
    """
    F = spec.field
    q = F.q
    per_variable = q if include_zero else q - 1
    dtype = count_dtype(per_variable ** spec.n)
    dist = np.zeros(q, dtype=dtype)
    dist[0] = 1
    shifts: Dict[int, np.ndarray] = {}
    for a_j, m_j in zip(spec.a, spec.m):
        hist = F.term_histogram(a_j, m_j, include_zero)
        new = np.zeros(q, dtype=dtype)
        for c in np.flatnonzero(hist):
            c = int(c)
            if c not in shifts:
                shifts[c] = F.add_column(c)
            # x -> x + c permutes F_q, so the fancy-index update has no collisions
            new[shifts[c]] += dist * int(hist[c])
        dist = new
    return dist


def diag_oracle(spec: EquationSpec) -> DiagonalCounts:
    """Diagonal counts by dynamic programming over partial-sum values; no hypotheses."""
    n0 = int(sum_distribution(spec, include_zero=True)[0])
    nstar0 = int(sum_distribution(spec, include_zero=False)[0])
    logger.debug(f"Diagonal oracle q={spec.q}, n={spec.n}: n0={n0}, nstar0={nstar0}")
    return DiagonalCounts(n0=n0, nstar0=nstar0, method=DiagonalMethod.ORACLE)


def diag_closed_form(spec: EquationSpec, dp: DerivedParams) -> List[DiagonalCounts]:
    """Every closed form whose hypotheses hold (possibly none)."""
    results = []
    if lemma3_structure(dp.dj)[0]:
        results.append(diag_lemma3(spec, dp))
    if lemma4_structure(spec, dp)[0]:
        results.append(diag_lemma4(spec, dp))
        if all(d_j == dp.D for d_j in dp.dj):
            results.append(diag_corollary2(spec, dp))
    return results
