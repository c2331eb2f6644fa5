from .theorems import (
    EVALUATORS,
    carlitz_n3,
    carlitz_n4,
    evaluate,
    pzc,
    theorem1,
    theorem2,
    theorem2_equal,
    theorem2_general,
    theorem3,
    theorem4,
    theorem4_equal,
    theorem4_general,
)
from .oracle import DEFAULT_NAIVE_LIMIT, BProfile, b_profile, naive_count, oracle_count
from .dispatcher import CountReport, closed_forms, dispatch

__all__ = [
    'BProfile',
    'CountReport',
    'DEFAULT_NAIVE_LIMIT',
    'EVALUATORS',
    'b_profile',
    'carlitz_n3',
    'carlitz_n4',
    'closed_forms',
    'dispatch',
    'evaluate',
    'naive_count',
    'oracle_count',
    'pzc',
    'theorem1',
    'theorem2',
    'theorem2_equal',
    'theorem2_general',
    'theorem3',
    'theorem4',
    'theorem4_equal',
    'theorem4_general',
]
