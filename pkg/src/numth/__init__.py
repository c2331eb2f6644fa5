from .integers import (
    binomial,
    cyclotomic_poly,
    gcd_all,
    i_count,
    i_count_enumerate,
    i_count_equal,
    i_count_inclusion_exclusion,
    i_count_product,
    i_count_subset_sum,
    lcm_all,
    sym_poly,
)
from .cyclotomic import CyclotomicInt
from .surd import SurdValue

__all__ = [
    'CyclotomicInt',
    'SurdValue',
    'binomial',
    'cyclotomic_poly',
    'gcd_all',
    'i_count',
    'i_count_enumerate',
    'i_count_equal',
    'i_count_inclusion_exclusion',
    'i_count_product',
    'i_count_subset_sum',
    'lcm_all',
    'sym_poly',
]
