from .diagonal import (
    DiagonalCounts,
    base_term,
    count_dtype,
    diag_closed_form,
    diag_corollary2,
    diag_lemma3,
    diag_lemma4,
    diag_oracle,
    eta_sigma_sum,
    eta_values,
    sorted_coefficients,
    sum_distribution,
)

__all__ = [
    'DiagonalCounts',
    'base_term',
    'count_dtype',
    'diag_closed_form',
    'diag_corollary2',
    'diag_lemma3',
    'diag_lemma4',
    'diag_oracle',
    'eta_sigma_sum',
    'eta_values',
    'sorted_coefficients',
    'sum_distribution',
]
