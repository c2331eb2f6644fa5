from .constants import BClass, DiagonalMethod, Method
from .models import ApplicabilityReport, DerivedParams, EquationSpec
from .params import (
    classify,
    compute_d,
    d_unit_exponents,
    derive_params,
    lemma3_structure,
    lemma4_structure,
    minimal_ell,
    parity_sort,
    pzc_condition,
)

__all__ = [
    'ApplicabilityReport',
    'BClass',
    'DerivedParams',
    'DiagonalMethod',
    'EquationSpec',
    'Method',
    'classify',
    'compute_d',
    'd_unit_exponents',
    'derive_params',
    'lemma3_structure',
    'lemma4_structure',
    'minimal_ell',
    'parity_sort',
    'pzc_condition',
]
