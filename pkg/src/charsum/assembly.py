"""N_q from the W table: the N_q* + N_q(0) - N_q*(0) split, Lemma 1 and Corollary 1."""

import logging
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from ..diagonal import DiagonalCounts, diag_oracle
from ..eqmodel import DerivedParams, EquationSpec
from ..exceptions import IntegralityError
from ..gf import dlog
from ..numth import CyclotomicInt
from .characters import Character, corollary1_characters, lemma1_characters
from .wtable import WTable, count_from_w, t_sum, twisted_profile

logger = logging.getLogger(__name__)


def count_by_split(W: WTable, diag: DiagonalCounts, b: Optional[int] = None,
                  profile: Optional[np.ndarray] = None) -> int:
    """N_q = N_q* + N_q(0) - N_q*(0)."""
    nstar, nstar0 = count_from_w(W, profile=profile, b=b)
    if nstar0 != diag.nstar0:
        raise IntegralityError(
            f"W table gives N_q*(0) = {nstar0} but diagonal counts say {diag.nstar0}")
    return nstar + diag.n0 - nstar0


def character_sum(W: WTable, characters: Iterable[Character], b: int,
                  profile: Optional[np.ndarray] = None) -> CyclotomicInt:
    """sum psi(b) T(psi) over the given characters, in Z[zeta_{q-1}]."""
    F = W.spec.field
    q1 = F.order
    if profile is None:
        profile = twisted_profile(W)
    log_b = dlog(F, b)
    total = CyclotomicInt.zero(q1)
    for psi in characters:
        value = t_sum(W, psi, profile).lift(q1).rotate(psi.r * log_b)
        total = total + value
    return total


def _assemble(spec: EquationSpec, dp: DerivedParams, W: WTable,
              diag: Optional[DiagonalCounts], characters, b: Optional[int],
              profile: Optional[np.ndarray]) -> int:
    F = spec.field
    b = spec.b if b is None else b
    if diag is None:
        diag = diag_oracle(spec)
    q, n, k0 = spec.q, spec.n, dp.k0

    if dlog(F, b) % k0:
        # N_q* vanishes when b is not a k0-th power
        return diag.n0 - diag.nstar0

    value = (
        Fraction(k0 * (q - 1) ** (n - 1) + diag.n0)
        - Fraction(k0 + q - 1, q - 1) * diag.nstar0
    )
    twist = character_sum(W, characters, b, profile)
    if not twist.is_rational():
        raise IntegralityError(f"Character sum {twist!r} is not a rational integer")
    value += twist.to_integer()
    if value.denominator != 1:
        raise IntegralityError(f"Assembled count {value} is not an integer")
    return int(value)


def assemble(spec: EquationSpec, dp: DerivedParams, W: WTable,
             diag: Optional[DiagonalCounts] = None, b: Optional[int] = None,
             profile: Optional[np.ndarray] = None) -> int:
    """N_q by Lemma 1 (b not a k0-th power) or Corollary 1 (b a k0-th power).

    The Corollary 1 sum runs over characters of order dividing d but not k0;
    it is empty when d = k0.
    """
    characters = corollary1_characters(spec.field, dp.d, dp.k0)
    result = _assemble(spec, dp, W, diag, characters, b, profile)
    logger.debug(f"Corollary 1 assembly q={spec.q}: {len(characters)} characters, N_q={result}")
    return result


def assemble_lemma1(spec: EquationSpec, dp: DerivedParams, W: WTable,
                    diag: Optional[DiagonalCounts] = None, b: Optional[int] = None,
                    profile: Optional[np.ndarray] = None) -> int:
    """N_q by Lemma 1 with the full sum over characters of order not dividing k0."""
    characters = lemma1_characters(spec.field, dp.k0)
    return _assemble(spec, dp, W, diag, characters, b, profile)
