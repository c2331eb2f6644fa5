"""Published reference counts, embedded so verification runs offline."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..counter import b_profile, dispatch
from ..eqmodel import BClass
from ..exceptions import CountingError
from .spec_file import SpecFile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TableRow:
    table: int
    p: int
    s: int
    a: Tuple[int, ...]
    m: Tuple[int, ...]
    kj: Tuple[int, ...]
    k: int
    k0: int
    expected: int
    b_class: BClass
    note: Optional[str] = None

    @property
    def q(self) -> int:
        return self.p ** self.s

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def label(self) -> str:
        return f"T{self.table} q={self.q}"

    def to_spec_file(self, b=None) -> SpecFile:
        """Spec file for the row; b defaults to the row's class directive."""
        return SpecFile(
            p=self.p,
            s=self.s,
            a=list(self.a),
            b=self.b_class if b is None else b,
            m=list(self.m),
            kj=list(self.kj),
            k=self.k,
        )

    def to_dict(self) -> Dict:
        return {
            'table': self.table,
            'q': self.q,
            'n': self.n,
            'a': list(self.a),
            'm': list(self.m),
            'kj': list(self.kj),
            'k': self.k,
            'k0': self.k0,
            'expected': str(self.expected),
            'b_class': self.b_class.value,
            'note': self.note,
        }


# First reference set: b is not a k0-th power.
TABLE_1: List[TableRow] = [
    # q=16, n=5; all d_j odd, t = n
    TableRow(1, 2, 4, (1, 1, 1, 1, 1), (2, 4, 6, 8, 10), (5, 5, 10, 10, 10), 10, 5, 18076, BClass.NONPOWER),
    # q=17, n=6
    TableRow(1, 17, 1, (1, 1, 1, 1, 3, 5), (2, 6, 6, 8, 10, 14), (4, 4, 8, 8, 8, 12), 8, 4, 433249,
             BClass.NONPOWER),
    # q=19, n=6
    TableRow(1, 19, 1, (1, 1, 1, 2, 2, 2), (2, 2, 2, 6, 14, 14), (3, 3, 3, 3, 6, 9), 6, 3, 684901,
             BClass.NONPOWER),
    # q=25, n=5; printed with six coefficients (1,1,1,1,1,1)
    TableRow(1, 5, 2, (1, 1, 1, 1, 1), (3, 9, 10, 15, 18), (4, 4, 8, 12, 16), 8, 4, 81553, BClass.NONPOWER,
             note="coefficient list printed with six entries for n=5; read as five 1s"),
    # q=31, n=4
    TableRow(1, 31, 1, (1, 1, 5, 7), (5, 7, 9, 11), (2, 4, 6, 8), 10, 2, 3661, BClass.NONPOWER),
    # q=43, n=5
    TableRow(1, 43, 1, (1, 1, 2, 2, 3), (5, 8, 8, 12, 28), (7, 7, 14, 14, 28), 21, 7, 377665, BClass.NONPOWER),
    # q=81, n=4; D=4 divides 3+1
    TableRow(1, 3, 4, (1, 1, 1, 1), (4, 4, 12, 28), (8, 8, 16, 32), 24, 8, 7041, BClass.NONPOWER),
]

# Second reference set: b is a k0-th power and d = k0.
TABLE_2: List[TableRow] = [
    # q=37, n=6
    TableRow(2, 37, 1, (1, 1, 1, 2, 2, 2), (1, 2, 2, 2, 4, 6), (9, 9, 9, 9, 9, 18), 9, 9, 539998021, BClass.POWER),
    # q=47, n=5
    TableRow(2, 47, 1, (1, 1, 1, 5, 5), (3, 7, 8, 12, 14), (2, 4, 6, 8, 10), 4, 2, 9261921, BClass.POWER),
    # q=61, n=4
    TableRow(2, 61, 1, (1, 1, 1, 2), (6, 8, 10, 14), (6, 6, 6, 6), 12, 6, 1289641, BClass.POWER),
    # q=64, n=4; D=9 divides 2^3+1
    TableRow(2, 2, 6, (1, 1, 1, 1), (9, 18, 27, 36), (3, 3, 3, 3), 12, 3, 781975, BClass.POWER),
    # q=71, n=3
    TableRow(2, 71, 1, (1, 1, 1), (3, 15, 49), (7, 21, 28), 35, 7, 34028, BClass.POWER),
    # q=81, n=5; D=10 divides 3^2+1
    TableRow(2, 3, 4, (1, 1, 1, 1, 1), (3, 15, 30, 35, 70), (5, 5, 15, 15, 20), 25, 5, 205707971, BClass.POWER),
    # q=97, n=3
    TableRow(2, 97, 1, (1, 7, 7), (2, 10, 12), (4, 4, 4), 8, 4, 36673, BClass.POWER),
]

ALL_ROWS: List[TableRow] = TABLE_1 + TABLE_2


def select_rows(table: Optional[int] = None, q: Optional[int] = None) -> List[TableRow]:
    rows = ALL_ROWS
    if table is not None:
        rows = [row for row in rows if row.table == table]
    if q is not None:
        rows = [row for row in rows if row.q == q]
    return rows


@dataclass
class RowResult:
    row: TableRow
    b: Optional[int] = None
    k0: Optional[int] = None
    closed_form_method: Optional[str] = None
    closed_form_value: Optional[int] = None
    oracle_value: Optional[int] = None
    b_values_checked: int = 0
    b_independent: Optional[bool] = None
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return (
            self.error is None
            and self.closed_form_value == self.row.expected
            and self.oracle_value == self.row.expected
            and self.k0 == self.row.k0
            and bool(self.b_independent)
        )

    def to_dict(self) -> Dict:
        return {
            'row': self.row.to_dict(),
            'b': self.b,
            'k0': self.k0,
            'closed_form_method': self.closed_form_method,
            'closed_form_value': None if self.closed_form_value is None else str(self.closed_form_value),
            'oracle_value': None if self.oracle_value is None else str(self.oracle_value),
            'b_values_checked': self.b_values_checked,
            'b_independent': self.b_independent,
            'error': self.error,
            'passed': self.passed,
        }


def verify_row(row: TableRow, naive_limit: Optional[int] = None) -> RowResult:
    """Closed form and oracle for the row's smallest b of the required class, plus a sweep over the class."""
    result = RowResult(row=row)
    try:
        spec = row.to_spec_file().to_equation_spec()
        report = dispatch(spec, run_oracle=True, naive_limit=naive_limit)
        result.b = spec.b
        result.k0 = report.params.k0
        result.closed_form_method = report.closed_form_method
        result.closed_form_value = report.closed_form_value
        result.oracle_value = report.oracle_value

        profile = b_profile(spec)
        in_class = profile.values_for(row.b_class)
        result.b_values_checked = sum(in_class.values())
        result.b_independent = profile.is_b_independent(row.b_class) and list(in_class) == [row.expected]
    except CountingError as e:
        logger.error(f"{row.label}: {e}")
        result.error = str(e)
    return result
