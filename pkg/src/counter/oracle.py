"""Hypothesis-free counts of N_q: the W-table route and a direct enumerator."""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..charsum import build_w, count_from_w, twisted_profile
from ..diagonal import diag_oracle
from ..eqmodel import BClass, EquationSpec, derive_params
from ..exceptions import CountingError, ValidationError
from ..gf import dlog

logger = logging.getLogger(__name__)

DEFAULT_NAIVE_LIMIT = 200_000


def naive_count(spec: EquationSpec, limit: Optional[int] = DEFAULT_NAIVE_LIMIT) -> int:
    """Count solutions by looping over all of F_q^n.

    Uses only field addition, multiplication and powering, so it shares no
    code path with the W table.
    """
    F = spec.field
    q, n = spec.q, spec.n
    if limit is not None and q ** n > limit:
        raise ValidationError(f"q^n = {q ** n} exceeds the naive enumeration limit {limit}", field='n')

    add_table = [F.add_column(c).tolist() for c in range(q)]
    lhs_terms = [[F.mul(a_j, F.power(x, m_j)) for x in range(q)]
                 for a_j, m_j in zip(spec.a, spec.m)]
    rhs_terms = [[F.power(x, k_j) for x in range(q)] for k_j in spec.kj]

    count = 0
    for xs in itertools.product(range(q), repeat=n):
        total = 0
        rhs = spec.b
        for j, x in enumerate(xs):
            total = add_table[lhs_terms[j][x]][total]
            rhs = F.mul(rhs, rhs_terms[j][x])
        if F.power(total, spec.k) == rhs:
            count += 1
    logger.debug(f"Naive count q={q}, n={n}: {count}")
    return count


def oracle_count(spec: EquationSpec, naive_limit: Optional[int] = None,
                 crosscheck_naive: bool = False) -> int:
    """N_q = N_q* + N_q(0) - N_q*(0), from the W table and the diagonal DP.

    When q^n is at most naive_limit the direct enumerator answers instead;
    with crosscheck_naive both run and must agree.
    """
    small = naive_limit is not None and spec.q ** spec.n <= naive_limit
    if small and not crosscheck_naive:
        return naive_count(spec, limit=naive_limit)

    W = build_w(spec)
    diag = diag_oracle(spec)
    nstar, nstar0 = count_from_w(W)
    value = nstar + diag.n0 - nstar0

    if small and crosscheck_naive:
        naive = naive_count(spec, limit=naive_limit)
        if naive != value:
            logger.error(f"Oracle mismatch q={spec.q}, n={spec.n}: DP {value}, naive {naive}")
            raise CountingError(f"W-table route gives {value} but enumeration gives {naive}")
    logger.debug(f"Oracle count q={spec.q}, n={spec.n}: {value}")
    return value


@dataclass
class BProfile:
    """N_q for every b in F_q*, grouped by k0-th power class and by coset of (F_q*)^d."""
    k0: int
    d: int
    counts: Dict[int, int] = field(default_factory=dict)
    logs: Dict[int, int] = field(default_factory=dict)

    def values_for(self, b_class: BClass) -> Counter:
        """Multiset of counts over the b in the given class."""
        power = b_class == BClass.POWER
        return Counter(v for b, v in self.counts.items() if self._is_power(b) == power)

    def cosets(self) -> Dict[int, List[int]]:
        """Counts keyed by dlog(b) mod d; constant on each coset."""
        grouped: Dict[int, List[int]] = {}
        for b, v in self.counts.items():
            grouped.setdefault(self.logs[b] % self.d, []).append(v)
        return grouped

    def is_b_independent(self, b_class: BClass) -> bool:
        return len(self.values_for(b_class)) <= 1

    def _is_power(self, b: int) -> bool:
        return self.logs[b] % self.k0 == 0

    def to_dict(self) -> Dict:
        return {
            'k0': self.k0,
            'd': self.d,
            'counts': {str(b): str(v) for b, v in sorted(self.counts.items())},
            'power': {str(v): c for v, c in sorted(self.values_for(BClass.POWER).items())},
            'nonpower': {str(v): c for v, c in sorted(self.values_for(BClass.NONPOWER).items())},
        }


def b_profile(spec: EquationSpec) -> BProfile:
    """One W table, one diagonal count, every right-hand side b."""
    F = spec.field
    dp = derive_params(spec)
    W = build_w(spec)
    profile = twisted_profile(W)
    diag = diag_oracle(spec)
    result = BProfile(k0=dp.k0, d=dp.d, logs={b: dlog(F, b) for b in F.nonzero()})
    for b in F.nonzero():
        nstar, nstar0 = count_from_w(W, profile=profile, b=b)
        result.counts[b] = nstar + diag.n0 - nstar0
    logger.debug(f"b profile q={spec.q}: {len(set(result.counts.values()))} distinct counts")
    return result
