"""The W table: joint distribution of (diagonal sum, weighted log-sum) over (F_q*)^n.

W(s, t) = #{x in (F_q*)^n : sum a_j x_j^m_j = s, sum k_j dlog(x_j) = t (mod q-1)}.
N_q*, N_q*(0) and every T(psi) are read off this one table.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ..diagonal import count_dtype
from ..eqmodel import EquationSpec
from ..exceptions import IntegralityError
from ..gf import dlog
from ..numth import CyclotomicInt
from .characters import Character

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class WTable:
    spec: EquationSpec
    counts: np.ndarray

    def total(self) -> int:
        return int(self.counts.sum())

    def zero_row_total(self) -> int:
        return int(self.counts[0].sum())


def _variable_moves(spec: EquationSpec, j: int) -> Dict[Tuple[int, int], int]:
    """Multiplicity of each (a_j x^m_j, k_j dlog x) shift as x runs over F_q*."""
    F = spec.field
    q1 = F.order
    values = F.scale_vector(F.power_map(spec.m[j]), spec.a[j])[1:]
    logs = (F.log_table[1:] * spec.kj[j]) % q1
    return Counter(zip(values.tolist(), logs.tolist()))


def build_w(spec: EquationSpec) -> WTable:
    """Fold the variables in one at a time, starting from unit mass at (0, 0)."""
    F = spec.field
    q, q1 = F.q, F.order
    dtype = count_dtype(q1 ** spec.n)
    table = np.zeros((q, q1), dtype=dtype)
    table[0, 0] = 1
    shifts = {}
    for j in range(spec.n):
        new = np.zeros((q, q1), dtype=dtype)
        for (c, w), mult in _variable_moves(spec, j).items():
            if c not in shifts:
                shifts[c] = F.add_column(c)
            new[shifts[c]] += np.roll(table, w, axis=1) * mult
        table = new
    logger.debug(f"Built W table for q={q}, n={spec.n}: mass {int(table.sum())}")
    table.setflags(write=False)
    return WTable(spec=spec, counts=table)


def twisted_profile(W: WTable) -> np.ndarray:
    """V[e] = sum of W(s, t) over s != 0 with t - k dlog(s) = e (mod q-1)."""
    spec = W.spec
    F = spec.field
    q1 = F.order
    profile = np.zeros(q1, dtype=W.counts.dtype)
    for s in range(1, F.q):
        shift = (spec.k * dlog(F, s)) % q1
        profile = profile + np.roll(W.counts[s], -shift)
    return profile


def t_sum(W: WTable, psi: Character, profile: np.ndarray = None) -> CyclotomicInt:
    """T(psi) in Z[zeta_delta], exact.

    T(psi) = (1/(q-1)) sum_{s != 0} W(s, t) zeta^(r (t - k dlog s)).
    """
    if profile is None:
        profile = twisted_profile(W)
    delta = psi.order
    step = psi.reduced_exponent
    raw = [0] * delta
    for e, count in enumerate(profile.tolist()):
        if count:
            raw[(step * e) % delta] += int(count)
    total = CyclotomicInt(delta, raw)
    q1 = W.spec.field.order
    if not total.divisible_by(q1):
        raise IntegralityError(
            f"Character sum for r={psi.r} is not divisible by q-1 = {q1}: {total!r}")
    return total.exact_div(q1)


def count_from_w(W: WTable, profile: np.ndarray = None, b: int = None) -> Tuple[int, int]:
    """(N_q*, N_q*(0)) for the table's equation, or for another right-hand side b.

    The table does not depend on b, so one build serves every b.
    """
    spec = W.spec
    b = spec.b if b is None else b
    if profile is None:
        profile = twisted_profile(W)
    q1 = spec.field.order
    nstar = int(profile[(-dlog(spec.field, b)) % q1])
    return nstar, W.zero_row_total()
