from .field import (
    DEFAULT_MAX_ORDER,
    FieldTable,
    build_field,
    cached_field,
    dlog,
    element_from_int,
    eta,
    field_for_order,
    is_kth_power,
)

__all__ = [
    'DEFAULT_MAX_ORDER',
    'FieldTable',
    'build_field',
    'cached_field',
    'dlog',
    'element_from_int',
    'eta',
    'field_for_order',
    'is_kth_power',
]
