"""Spec files: JSON descriptions of one equation instance."""

import json
import logging
import os
import re
from dataclasses import dataclass
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Union

from ..eqmodel import BClass, EquationSpec
from ..exceptions import ValidationError
from ..gf import DEFAULT_MAX_ORDER, FieldTable, build_field, cached_field, element_from_int, is_kth_power
from ..numth import gcd_all

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ('p', 'a', 'b', 'm', 'kj', 'k')
INT_PATTERN = re.compile(r'^[+-]?\d+$')


def _as_int(value: Any) -> int:
    """An int or a decimal-digit string; floats and bools are rejected."""
    if isinstance(value, bool):
        raise ValueError(value)
    if isinstance(value, int):
        return value
    if isinstance(value, str) and INT_PATTERN.match(value.strip()):
        return int(value.strip())
    raise ValueError(value)


def parse_int_list(value: Union[str, Sequence[int]], name: str) -> List[int]:
    """Accept '1,2,3' or a JSON list."""
    if isinstance(value, str):
        parts = [part.strip() for part in value.split(',') if part.strip()]
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise ValidationError(f"'{name}' must be a list of integers, got {value!r}", field=name)
    try:
        return [_as_int(part) for part in parts]
    except ValueError:
        raise ValidationError(f"'{name}' must be a list of integers, got {value!r}", field=name)


def _validate_int(value: Any, name: str) -> int:
    try:
        return _as_int(value)
    except ValueError:
        raise ValidationError(f"'{name}' must be an integer, got {value!r}", field=name)


@dataclass
class SpecFile:
    """Raw instance description; b is an element encoding or a 'power'/'nonpower' directive."""
    p: int
    a: List[int]
    b: Union[int, str]
    m: List[int]
    kj: List[int]
    k: int
    s: int = 1
    modulus: Optional[List[int]] = None
    run_oracle: bool = True
    list_characters: bool = False

    @classmethod
    def from_dict(cls, data: Dict) -> 'SpecFile':
        if not isinstance(data, dict):
            raise ValidationError("Spec file must hold a JSON object", field='spec')
        for name in REQUIRED_FIELDS:
            if name not in data:
                raise ValidationError(f"Missing required field '{name}'", field=name)

        b = data['b']
        if isinstance(b, str):
            try:
                b = BClass(b.strip().lower())
            except ValueError:
                b = _validate_int(b, 'b')
        else:
            b = _validate_int(b, 'b')

        modulus = data.get('modulus')
        return cls(
            p=_validate_int(data['p'], 'p'),
            s=_validate_int(data.get('s', 1), 's'),
            modulus=parse_int_list(modulus, 'modulus') if modulus is not None else None,
            a=parse_int_list(data['a'], 'a'),
            b=b,
            m=parse_int_list(data['m'], 'm'),
            kj=parse_int_list(data['kj'], 'kj'),
            k=_validate_int(data['k'], 'k'),
            run_oracle=bool(data.get('run_oracle', True)),
            list_characters=bool(data.get('list_characters', False)),
        )

    @classmethod
    def load(cls, path: str) -> 'SpecFile':
        if not os.path.exists(path):
            raise ValidationError(f"Spec file not found: {path}", field='path')
        try:
            with open(path, 'r') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"Spec file {path} is not valid JSON: {e}", field='path')
        logger.debug(f"Loaded spec file {path}")
        return cls.from_dict(data)

    def build_field(self, max_order: int = DEFAULT_MAX_ORDER) -> FieldTable:
        if self.modulus is None and self.p ** self.s <= min(max_order, DEFAULT_MAX_ORDER):
            return cached_field(self.p, self.s)
        return build_field(self.p, self.s, modulus=self.modulus, max_order=max_order)

    def to_equation_spec(self, max_order: int = DEFAULT_MAX_ORDER) -> EquationSpec:
        F = self.build_field(max_order)
        a = [self._element(F, a_j, 'a') for a_j in self.a]
        b = self.resolve_b(F)
        return EquationSpec(field=F, a=a, b=b, m=self.m, kj=self.kj, k=self.k)

    def resolve_b(self, F: FieldTable) -> int:
        """The encoding of b, resolving class directives to the smallest matching element."""
        if not isinstance(self.b, BClass):
            return self._element(F, self.b, 'b')
        k0 = gcd_all([self.k, *self.kj, F.order])
        return smallest_in_class(F, k0, self.b)

    @staticmethod
    def _element(F: FieldTable, value: int, name: str) -> int:
        if value < 0 or value >= F.q:
            raise ValidationError(f"'{name}' entry {value} is not an element of F_{F.q}", field=name)
        return element_from_int(F, value)


def smallest_in_class(F: FieldTable, k0: int, b_class: BClass) -> int:
    """Smallest nonzero encoding that is (or is not) a k0-th power."""
    want_power = b_class == BClass.POWER
    for b in F.nonzero():
        if is_kth_power(F, b, k0) == want_power:
            return b
    raise ValidationError(
        f"F_{F.q} has no {'' if want_power else 'non-'}{k0}-th power "
        f"(every element is a {gcd(k0, F.order)}-th power)", field='b')
