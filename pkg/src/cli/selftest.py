"""Randomized invariant suites with a reproducible seed."""

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..charsum import (
    all_characters,
    assemble,
    assemble_lemma1,
    build_w,
    count_by_split,
    t_sum,
    twisted_profile,
)
from ..counter import closed_forms, naive_count, oracle_count
from ..diagonal import diag_closed_form, diag_oracle
from ..eqmodel import EquationSpec, classify, derive_params, lemma3_structure, lemma4_structure
from ..exceptions import CountingError
from ..gf import cached_field, eta
from ..numth import i_count, i_count_enumerate, i_count_equal, i_count_product

logger = logging.getLogger(__name__)

PRIME_POWERS = {
    2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2),
    11: (11, 1), 13: (13, 1), 16: (2, 4), 17: (17, 1), 19: (19, 1), 23: (23, 1),
    25: (5, 2), 27: (3, 3),
}

DIAGONAL_FIELDS = (3, 4, 5, 7, 8, 9, 11, 13, 16, 25)
LEMMA2_PER_Q = 20
SUITE_NAMES = ('i_function', 'lemma2', 'assembly', 'diagonal', 'theorems', 'pzc', 'carlitz')

Check = Callable[[object], Optional[str]]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    budget_exhausted: bool = False
    counterexample: Optional[Dict] = None
    message: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'cases': self.cases,
            'failures': self.failures,
            'budget_exhausted': self.budget_exhausted,
            'counterexample': self.counterexample,
            'message': self.message,
            'passed': self.passed,
        }


@dataclass
class Suite:
    name: str
    cases: List
    check: Check
    describe: Callable[[object], Dict] = field(default=lambda case: {'case': repr(case)})


def random_spec_over(rng: np.random.Generator, q: int, max_n: int) -> EquationSpec:
    F = cached_field(*PRIME_POWERS[q])
    n = int(rng.integers(2, max_n + 1))
    return EquationSpec(
        field=F,
        a=[int(x) for x in rng.integers(1, q, size=n)],
        b=int(rng.integers(1, q)),
        m=[int(x) for x in rng.integers(1, 13, size=n)],
        kj=[int(x) for x in rng.integers(1, q, size=n)],
        k=int(rng.integers(1, 2 * (q - 1) + 1)),
    )


def random_spec(rng: np.random.Generator, max_q: int, max_n: int) -> EquationSpec:
    q = int(rng.choice([q for q in PRIME_POWERS if q <= max_q and q > 2]))
    return random_spec_over(rng, q, max_n)


def describe_spec(spec: EquationSpec) -> Dict:
    return spec.to_dict()


def _by_size(specs: List[EquationSpec]) -> List[EquationSpec]:
    """Smallest instances first, so the first failure is a minimal one."""
    return sorted(specs, key=lambda spec: (spec.q ** spec.n, spec.q, spec.n, spec.m, spec.kj, spec.k))


def check_i_function(case) -> Optional[str]:
    kind, values = case
    if kind == 'equal':
        v, r = values
        expected = i_count([v] * r)
        if i_count_equal(v, r) != expected:
            return f"I({v} x {r}): closed form {i_count_equal(v, r)} != {expected}"
        return None
    enumerated = i_count_enumerate(values)
    for name, value in (('inclusion-exclusion', i_count(values)), ('product', i_count_product(values))):
        if value != enumerated:
            return f"I{values}: {name} form {value} != enumeration {enumerated}"
    return None


def i_function_cases() -> List:
    cases = []
    for r in range(1, 5):
        cases.extend(('subset', vs) for vs in itertools.combinations_with_replacement(range(2, 9), r))
    cases.extend(('equal', (v, r)) for v in range(2, 13) for r in range(1, 7))
    return cases


def check_lemma2(spec: EquationSpec) -> Optional[str]:
    dp = derive_params(spec)
    W = build_w(spec)
    profile = twisted_profile(W)
    for psi in all_characters(spec.field):
        if dp.d % psi.order and not t_sum(W, psi, profile).is_zero():
            return f"T(psi) nonzero for r={psi.r}, order {psi.order} not dividing d={dp.d}"
    return None


def check_assembly(spec: EquationSpec) -> Optional[str]:
    dp = derive_params(spec)
    W = build_w(spec)
    profile = twisted_profile(W)
    diag = diag_oracle(spec)
    for b in spec.field.nonzero():
        routes = {
            'split': count_by_split(W, diag, b=b, profile=profile),
            'corollary1': assemble(spec, dp, W, diag=diag, b=b, profile=profile),
            'lemma1': assemble_lemma1(spec, dp, W, diag=diag, b=b, profile=profile),
        }
        if b == spec.b:
            routes['naive'] = naive_count(spec, limit=None)
        if len(set(routes.values())) != 1:
            return f"b={b}: {routes}"
    return None


def check_diagonal(spec: EquationSpec) -> Optional[str]:
    dp = derive_params(spec)
    oracle = diag_oracle(spec)
    for counts in diag_closed_form(spec, dp):
        if (counts.n0, counts.nstar0) != (oracle.n0, oracle.nstar0):
            return (f"{counts.method.value}: ({counts.n0}, {counts.nstar0}) "
                    f"!= oracle ({oracle.n0}, {oracle.nstar0})")
    return None


def check_theorems(spec: EquationSpec) -> Optional[str]:
    dp = derive_params(spec)
    values = closed_forms(spec, dp, classify(spec, dp))
    if not values:
        return None
    oracle = oracle_count(spec)
    bad = {m.value: v for m, v in values.items() if v != oracle}
    if bad:
        return f"closed forms {bad} != oracle {oracle}"
    return None


def check_pzc(spec: EquationSpec) -> Optional[str]:
    expected = spec.q ** (spec.n - 1) + (-1) ** (spec.n - 1)
    oracle = oracle_count(spec)
    if oracle != expected:
        return f"oracle {oracle} != q^(n-1) + (-1)^(n-1) = {expected}"
    return None


def check_carlitz(spec: EquationSpec) -> Optional[str]:
    F, q = spec.field, spec.q
    if spec.n == 3:
        expected = q ** 2 + 1
    else:
        c = spec.b
        for a_j in spec.a:
            c = F.mul(c, a_j)
        expected = q ** 3 - 1 - eta(F, c) * q
    oracle = oracle_count(spec)
    if oracle != expected:
        return f"n={spec.n}: oracle {oracle} != {expected}"
    return None


def carlitz_cases(rng: np.random.Generator, samples: int) -> List[EquationSpec]:
    cases = []
    for q in (3, 5, 7, 9, 11, 13):
        p, s = PRIME_POWERS[q]
        F = cached_field(p, s)
        for n in (3, 4):
            for _ in range(max(1, samples // 12)):
                cases.append(EquationSpec(
                    field=F,
                    a=[int(x) for x in rng.integers(1, q, size=n)],
                    b=int(rng.integers(1, q)),
                    m=[1] * n, kj=[1] * n, k=2,
                ))
    return cases


def _sample(rng: np.random.Generator, samples: int, accept: Callable[[EquationSpec], bool],
            max_q: int, max_n: int, attempts: int = 200) -> List[EquationSpec]:
    found = []
    for _ in range(samples * attempts):
        if len(found) >= samples:
            break
        spec = random_spec(rng, max_q, max_n)
        if accept(spec):
            found.append(spec)
    return _by_size(found)


def _has_closed_form(spec: EquationSpec) -> bool:
    try:
        dp = derive_params(spec)
    except CountingError:
        return False
    return bool(classify(spec, dp).applicable_methods())


def _diagonal_applies(spec: EquationSpec) -> bool:
    try:
        dp = derive_params(spec)
    except CountingError:
        return False
    return lemma3_structure(dp.dj)[0] or lemma4_structure(spec, dp)[0]


def _pzc_applies(spec: EquationSpec) -> bool:
    try:
        dp = derive_params(spec)
    except CountingError:
        return False
    return classify(spec, dp).pzc


def lemma2_cases(rng: np.random.Generator, per_q: int = LEMMA2_PER_Q, max_q: int = 25) -> List[EquationSpec]:
    """per_q random instances for every field order up to max_q."""
    cases = []
    for q in sorted(PRIME_POWERS):
        if q > max_q:
            continue
        cases.extend(random_spec_over(rng, q, 3) for _ in range(per_q))
    return _by_size(cases)


def diagonal_cases(rng: np.random.Generator, fields: Sequence[int] = DIAGONAL_FIELDS,
                   max_n: int = 4, max_m: int = 12) -> List[EquationSpec]:
    """Every sorted exponent tuple m_1 <= ... <= m_n <= max_m whose diagonal closed forms apply.

    Each tuple is taken with all a_j = 1 and once with random a_j.
    """
    cases = []
    for q in fields:
        F = cached_field(*PRIME_POWERS[q])
        for n in range(2, max_n + 1):
            for m in itertools.combinations_with_replacement(range(1, max_m + 1), n):
                for a in ([1] * n, [int(x) for x in rng.integers(1, q, size=n)]):
                    spec = EquationSpec(field=F, a=a, b=1, m=list(m), kj=[1] * n, k=1)
                    if _diagonal_applies(spec):
                        cases.append(spec)
    return _by_size(cases)


def _suite_factories(samples: int) -> Dict[str, Callable[[np.random.Generator], Suite]]:
    return {
        'i_function': lambda rng: Suite('i_function', i_function_cases(), check_i_function,
                                        lambda case: {'kind': case[0], 'values': list(case[1])}),
        'lemma2': lambda rng: Suite('lemma2', lemma2_cases(rng), check_lemma2, describe_spec),
        'assembly': lambda rng: Suite('assembly', _sample(rng, samples, lambda s: True, 25, 3),
                                      check_assembly, describe_spec),
        'diagonal': lambda rng: Suite('diagonal', diagonal_cases(rng), check_diagonal, describe_spec),
        'theorems': lambda rng: Suite('theorems', _sample(rng, samples, _has_closed_form, 27, 4),
                                      check_theorems, describe_spec),
        'pzc': lambda rng: Suite('pzc', _sample(rng, samples, _pzc_applies, 27, 4), check_pzc, describe_spec),
        'carlitz': lambda rng: Suite('carlitz', carlitz_cases(rng, samples), check_carlitz, describe_spec),
    }


def build_suites(seed: int, samples: int, names: Optional[Iterable[str]] = None) -> List[Suite]:
    """The selected suites in fixed order, cases drawn up front.

    Each suite has its own generator seeded by (seed, suite index), so its
    cases do not depend on which other suites were selected.
    """
    factories = _suite_factories(samples)
    wanted = SUITE_NAMES if names is None else [name for name in SUITE_NAMES if name in set(names)]
    return [factories[name](np.random.default_rng([seed, SUITE_NAMES.index(name)])) for name in wanted]


def run_suite(suite: Suite, deadline: float) -> SuiteResult:
    result = SuiteResult(name=suite.name)
    for case in suite.cases:
        if time.monotonic() > deadline:
            result.budget_exhausted = True
            break
        result.cases += 1
        try:
            message = suite.check(case)
        except CountingError as e:
            message = f"{type(e).__name__}: {e}"
        if message is not None:
            result.failures += 1
            if result.counterexample is None:
                result.counterexample = suite.describe(case)
                result.message = message
                logger.error(f"Suite {suite.name} failed: {message}")
    logger.debug(f"Suite {suite.name}: {result.cases} cases, {result.failures} failures")
    return result


def run_selftest(seed: int = 1, budget_seconds: float = 60, samples: int = 40,
                 threads: int = 1, suites: Optional[Iterable[str]] = None) -> List[SuiteResult]:
    """Run the suites, optionally in parallel; results come back in suite order."""
    selected = build_suites(seed, samples, suites)
    deadline = time.monotonic() + budget_seconds
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        futures = [executor.submit(run_suite, suite, deadline) for suite in selected]
        return [future.result() for future in futures]
