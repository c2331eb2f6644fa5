from dataclasses import dataclass, field as dc_field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import ValidationError
from ..gf import FieldTable
from .constants import Method


def _as_int_tuple(values: Sequence[int], name: str) -> Tuple[int, ...]:
    try:
        return tuple(int(v) for v in values)
    except (TypeError, ValueError):
        raise ValidationError(f"'{name}' must be a sequence of integers", field=name)


@dataclass(frozen=True)
class EquationSpec:
    """One instance of (a_1 x_1^m_1 + ... + a_n x_n^m_n)^k = b x_1^k_1 ... x_n^k_n over F_q."""
    field: FieldTable
    a: Tuple[int, ...]
    b: int
    m: Tuple[int, ...]
    kj: Tuple[int, ...]
    k: int

    def __post_init__(self):
        """Coerce sequences to tuples and validate the instance."""
        for name in ('a', 'm', 'kj'):
            object.__setattr__(self, name, _as_int_tuple(getattr(self, name), name))
        object.__setattr__(self, 'b', int(self.b))
        object.__setattr__(self, 'k', int(self.k))
        self._validate()

    def _validate(self) -> None:
        n = len(self.a)
        if n < 2:
            raise ValidationError(f"Need at least 2 variables, got {n}", field='a')
        for name in ('m', 'kj'):
            if len(getattr(self, name)) != n:
                raise ValidationError(
                    f"'{name}' has {len(getattr(self, name))} entries but n = {n}", field=name)
        q = self.field.q
        for j, a_j in enumerate(self.a):
            if a_j <= 0 or a_j >= q:
                raise ValidationError(
                    f"a[{j}] = {a_j} must be a nonzero element of F_{q}", field='a')
        if self.b <= 0 or self.b >= q:
            raise ValidationError(f"b = {self.b} must be a nonzero element of F_{q}", field='b')
        for name in ('m', 'kj'):
            if any(v < 1 for v in getattr(self, name)):
                raise ValidationError(f"'{name}' entries must be positive", field=name)
        if self.k < 1:
            raise ValidationError(f"k must be positive, got {self.k}", field='k')

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return self.field.q

    def with_b(self, b: int) -> 'EquationSpec':
        return replace(self, b=b)

    def permuted(self, perm: Sequence[int]) -> 'EquationSpec':
        """Relabel variables: position i of the result holds variable perm[i]."""
        return replace(
            self,
            a=tuple(self.a[i] for i in perm),
            m=tuple(self.m[i] for i in perm),
            kj=tuple(self.kj[i] for i in perm),
        )

    def to_dict(self) -> Dict:
        return {
            'p': self.field.p,
            's': self.field.s,
            'q': self.q,
            'modulus': list(self.field.modulus),
            'n': self.n,
            'a': list(self.a),
            'b': self.b,
            'm': list(self.m),
            'kj': list(self.kj),
            'k': self.k,
        }


@dataclass(frozen=True)
class DerivedParams:
    """Invariants k0, M, d_j, D, d and the data the hypotheses are phrased in."""
    k0: int
    M: int
    dj: Tuple[int, ...]
    D: int
    d: int
    t_odd: int
    sorted_perm: Tuple[int, ...]
    ell: Optional[int]
    b_is_k0_power: bool

    @property
    def sorted_dj(self) -> Tuple[int, ...]:
        return tuple(self.dj[i] for i in self.sorted_perm)

    def to_dict(self) -> Dict:
        return {
            'k0': self.k0,
            'M': self.M,
            'dj': list(self.dj),
            'D': self.D,
            'd': self.d,
            't_odd': self.t_odd,
            'sorted_perm': list(self.sorted_perm),
            'ell': self.ell,
            'b_is_k0_power': self.b_is_k0_power,
        }


@dataclass
class ApplicabilityReport:
    """Which closed forms apply to an instance, and why the others do not."""
    theorem1: bool = False
    theorem2: bool = False
    theorem3: bool = False
    theorem4: bool = False
    pzc: bool = False
    carlitz_n3: bool = False
    carlitz_n4: bool = False
    lemma3_structure: bool = False
    lemma4_structure: bool = False
    d_equals_k0: bool = False
    reasons: List[str] = dc_field(default_factory=list)

    def applicable_methods(self) -> List[Method]:
        return [method for method in Method.get_closed_forms() if getattr(self, method.value)]

    def to_dict(self) -> Dict:
        return {
            'theorem1': self.theorem1,
            'theorem2': self.theorem2,
            'theorem3': self.theorem3,
            'theorem4': self.theorem4,
            'pzc': self.pzc,
            'carlitz_n3': self.carlitz_n3,
            'carlitz_n4': self.carlitz_n4,
            'lemma3_structure': self.lemma3_structure,
            'lemma4_structure': self.lemma4_structure,
            'd_equals_k0': self.d_equals_k0,
            'reasons': list(self.reasons),
        }
