import json
from typing import Dict, List, Optional

from rich import box
from rich.table import Table

from ..counter import BProfile, CountReport
from .selftest import SuiteResult
from .tables import RowResult


def to_json(data: Dict) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def format_count(value: Optional[int]) -> str:
    return "-" if value is None else str(value)


def _yes_no(flag: Optional[bool]) -> str:
    if flag is None:
        return "[dim]n/a[/]"
    return "[bold green]yes[/]" if flag else "[bold red]no[/]"


def report_table(report: CountReport) -> Table:
    """Summary grid for one CountReport."""
    spec, dp = report.spec, report.params
    grid = Table.grid(padding=(0, 2))
    grid.add_column(justify="right", style="bold cyan")
    grid.add_column(style="white", overflow="fold")
    grid.add_row("Field", f"F_{spec.q} (p={spec.field.p}, s={spec.field.s})")
    grid.add_row("a", str(list(spec.a)))
    grid.add_row("b", str(spec.b))
    grid.add_row("m", str(list(spec.m)))
    grid.add_row("k_j", str(list(spec.kj)))
    grid.add_row("k", str(spec.k))
    grid.add_row("k0 / d / D", f"{dp.k0} / {dp.d} / {dp.D}")
    grid.add_row("b a k0-th power", _yes_no(dp.b_is_k0_power))
    grid.add_row("Closed form", report.closed_form_method or "[dim]none applies[/]")
    grid.add_row("Closed-form N_q", format_count(report.closed_form_value))
    grid.add_row("Oracle N_q", format_count(report.oracle_value))
    grid.add_row("Agreement", _yes_no(report.agreement))
    return grid


def params_table(report: CountReport) -> Table:
    table = Table(title="Derived parameters", box=box.MINIMAL_DOUBLE_HEAD, header_style="bold cyan")
    table.add_column("Parameter", style="bold")
    table.add_column("Value", overflow="fold")
    for key, value in report.params.to_dict().items():
        table.add_row(key, str(value))
    for key, value in report.applicability.to_dict().items():
        if key != 'reasons':
            table.add_row(key, _yes_no(value))
    return table


def reasons_text(report: CountReport) -> str:
    return "\n".join(f"• {reason}" for reason in report.applicability.reasons) or "No notes."


def b_profile_table(profile: BProfile) -> Table:
    table = Table(title="N_q by right-hand side b", box=box.MINIMAL_DOUBLE_HEAD, header_style="bold cyan")
    table.add_column("b", style="magenta", justify="right")
    table.add_column("dlog b", justify="right")
    table.add_column("k0-th power", justify="center")
    table.add_column("N_q", style="bold white", justify="right")
    for b, value in sorted(profile.counts.items()):
        log_b = profile.logs[b]
        table.add_row(str(b), str(log_b), _yes_no(log_b % profile.k0 == 0), str(value))
    return table


def verify_table(results: List[RowResult]) -> Table:
    table = Table(title="Published tables", box=box.MINIMAL_DOUBLE_HEAD, header_style="bold cyan",
                  show_lines=True)
    table.add_column("Row", style="magenta")
    table.add_column("n", justify="right")
    table.add_column("Expected", justify="right")
    table.add_column("Method")
    table.add_column("Closed form", justify="right")
    table.add_column("Oracle", justify="right")
    table.add_column("b sweep", justify="center")
    table.add_column("Status", style="bold")
    for result in results:
        row = result.row
        status = "[bold green]pass[/]" if result.passed else "[bold red]FAIL[/]"
        table.add_row(
            row.label + (" *" if row.note else ""),
            str(row.n),
            str(row.expected),
            result.closed_form_method or "-",
            format_count(result.closed_form_value),
            format_count(result.oracle_value),
            f"{_yes_no(result.b_independent)} ({result.b_values_checked})",
            status if result.error is None else f"[bold red]error[/] {result.error}",
        )
    return table


def selftest_table(results: List[SuiteResult]) -> Table:
    table = Table(title="Self-test", box=box.MINIMAL_DOUBLE_HEAD, header_style="bold cyan")
    table.add_column("Suite", style="magenta")
    table.add_column("Cases", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Budget", justify="center")
    table.add_column("Status", style="bold")
    for result in results:
        table.add_row(
            result.name,
            str(result.cases),
            str(result.failures),
            "[yellow]exhausted[/]" if result.budget_exhausted else "ok",
            "[bold green]pass[/]" if result.passed else "[bold red]FAIL[/]",
        )
    return table


def tsum_table(rows: List[Dict]) -> Table:
    table = Table(title="T(psi) for psi^d trivial", box=box.MINIMAL_DOUBLE_HEAD, header_style="bold cyan")
    table.add_column("r", style="magenta", justify="right")
    table.add_column("order", justify="right")
    table.add_column("coefficients in Z[zeta]", overflow="fold")
    for row in rows:
        table.add_row(str(row['r']), str(row['order']), str(row['coefficients']))
    return table
