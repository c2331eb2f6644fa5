import logging
import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager, nullcontext
from typing import Dict, List, Optional, Tuple

import click
from rich.align import Align
from rich.console import Console
from rich.panel import Panel
from rich.text import Text

from ..charsum import build_w, characters_dividing, t_sum, twisted_profile
from ..counter import CountReport, b_profile, dispatch
from ..eqmodel import EquationSpec, classify, derive_params
from ..exceptions import (
    ClosedFormMismatchError,
    ConfigurationError,
    CountingError,
    FieldConstructionError,
    FieldElementError,
    ValidationError,
)
from ..load_env import config_path_from_env
from ..services.config_service import ConfigService
from ..utils.logger import setup_logger
from .formatters import (
    b_profile_table,
    params_table,
    reasons_text,
    report_table,
    selftest_table,
    to_json,
    tsum_table,
    verify_table,
)
from .selftest import run_selftest
from .spec_file import SpecFile
from .tables import select_rows, verify_row

console = Console()

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_DISAGREEMENT = 2

PARSE_ERRORS = (ValidationError, FieldConstructionError, FieldElementError, ConfigurationError)


def _fail(ctx: click.Context, message: str, title: str, code: int) -> None:
    console.print(Panel.fit(message, title=title, border_style="red"))
    ctx.exit(code)


def _parse_failure(ctx: click.Context, error: Exception) -> None:
    field = getattr(error, 'field', '')
    title = f"Invalid input: {field}" if field else "Invalid input"
    logging.error(f"{title}: {error}")
    _fail(ctx, str(error), title, EXIT_PARSE_ERROR)


@contextmanager
def _exit_on_error(ctx: click.Context):
    """Bad input or settings exit 1; disagreements and internal inconsistencies exit 2."""
    try:
        yield
    except ClosedFormMismatchError as e:
        _fail(ctx, str(e), "Closed forms disagree", EXIT_DISAGREEMENT)
    except PARSE_ERRORS as e:
        _parse_failure(ctx, e)
    except CountingError as e:
        logging.error(f"Counting failed: {e}")
        _fail(ctx, str(e), "Counting failed", EXIT_DISAGREEMENT)


def _config(ctx: click.Context) -> ConfigService:
    return ctx.obj['config']


def _inline_spec(p, s, modulus, a, b, m, kj, k) -> Dict:
    """Spec-file dict from the inline flags that were given."""
    given = {'p': p, 's': s, 'modulus': modulus, 'a': a, 'b': b, 'm': m, 'kj': kj, 'k': k}
    return {key: value for key, value in given.items() if value is not None}


def _load_spec(ctx: click.Context, spec_path: Optional[str], inline: Dict) -> Tuple[SpecFile, EquationSpec]:
    try:
        spec_file = SpecFile.load(spec_path) if spec_path else SpecFile.from_dict(inline)
        spec = spec_file.to_equation_spec(max_order=_config(ctx).get_max_order())
    except PARSE_ERRORS as e:
        _parse_failure(ctx, e)
    return spec_file, spec


def _spec_options(func):
    options = [
        click.argument('spec_path', required=False, type=click.Path(dir_okay=False)),
        click.option('--p', type=int, help="Field characteristic"),
        click.option('--s', type=int, help="Extension degree (default 1)"),
        click.option('--modulus', help="Monic modulus digits, constant term first, e.g. '1,1,0,0,1'"),
        click.option('--a', help="Coefficients a_j as comma-separated encodings"),
        click.option('--b', help="Right-hand side encoding, or 'power' / 'nonpower'"),
        click.option('--m', help="Exponents m_j, comma-separated"),
        click.option('--kj', help="Exponents k_j, comma-separated"),
        click.option('--k', type=int, help="Outer exponent k"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _tsum_rows(spec: EquationSpec, d: int) -> List[Dict]:
    W = build_w(spec)
    profile = twisted_profile(W)
    rows = []
    for psi in characters_dividing(spec.field, d):
        value = t_sum(W, psi, profile)
        rows.append({
            'r': psi.r,
            'order': psi.order,
            'coefficients': [str(c) for c in value.coeffs[:value.degree]],
        })
    return rows


@click.group()
@click.option('--debug', is_flag=True, help="Enable debug logging")
@click.option('--log-file', type=click.Path(dir_okay=False), help="Also write logs to this file")
@click.option('--config', 'config_path', default=None, help="Settings file (default config/settings.json)")
@click.pass_context
def cli(ctx: click.Context, debug: bool, log_file: Optional[str], config_path: Optional[str]):
    """Count solutions of (a_1 x_1^m_1 + ... + a_n x_n^m_n)^k = b x_1^k_1 ... x_n^k_n over F_q."""
    setup_logger(debug=debug, log_file=log_file)
    ctx.ensure_object(dict)
    try:
        ctx.obj['config'] = ConfigService(config_path or config_path_from_env("config/settings.json"))
    except ConfigurationError as e:
        _parse_failure(ctx, e)


@cli.command()
@_spec_options
@click.option('--all-b', is_flag=True, help="Sweep every b in F_q* and report counts by class")
@click.option('--oracle/--no-oracle', 'run_oracle', default=None, help="Run the hypothesis-free oracle")
@click.option('--list-characters/--no-list-characters', default=None, help="Include T(psi) for every psi^d trivial")
@click.option('--naive-limit', type=int, help="q^n at or below which the direct enumerator is the oracle")
@click.option('--format', 'output_format', type=click.Choice(['both', 'json', 'text']), default='both',
              help="What to print on standard output")
@click.option('--output', type=click.Path(dir_okay=False), help="Also write the JSON report to this file")
@click.pass_context
def count(ctx: click.Context, spec_path, p, s, modulus, a, b, m, kj, k, all_b: bool,
          run_oracle: Optional[bool], list_characters: Optional[bool], naive_limit: Optional[int],
          output_format: str, output: Optional[str]):
    """Count N_q for one instance given as a spec file or inline flags."""
    spec_file, spec = _load_spec(ctx, spec_path, _inline_spec(p, s, modulus, a, b, m, kj, k))
    config = _config(ctx)
    if run_oracle is None:
        run_oracle = spec_file.run_oracle
    if list_characters is None:
        list_characters = spec_file.list_characters

    with _exit_on_error(ctx):
        if naive_limit is None:
            naive_limit = config.get_naive_limit()
        quiet = output_format == 'json'
        with nullcontext() if quiet else console.status("Counting solutions...", spinner="dots"):
            report = dispatch(spec, run_oracle=run_oracle, naive_limit=naive_limit,
                              crosscheck_naive=config.get_crosscheck_naive())
            payload = report.to_dict()
            profile = None
            if all_b:
                profile = b_profile(spec)
                payload['b_profile'] = profile.to_dict()
            if list_characters:
                payload['characters'] = _tsum_rows(spec, report.params.d)

    text = to_json(payload)
    if output:
        directory = os.path.dirname(output)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(output, 'w') as f:
            f.write(text)

    if output_format in ('both', 'json'):
        click.echo(text, nl=False)
    if output_format in ('both', 'text'):
        console.print(Panel.fit(report_table(report), title="N_q", border_style="cyan"))
        if profile is not None:
            console.print(b_profile_table(profile))
        if list_characters:
            console.print(tsum_table(payload['characters']))

    if report.agreement is False:
        logging.error(f"Closed form {report.closed_form_value} != oracle {report.oracle_value}")
        ctx.exit(EXIT_DISAGREEMENT)


@cli.command()
@_spec_options
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text')
@click.pass_context
def derive(ctx: click.Context, spec_path, p, s, modulus, a, b, m, kj, k, output_format: str):
    """Print derived parameters and which closed forms apply."""
    _, spec = _load_spec(ctx, spec_path, _inline_spec(p, s, modulus, a, b, m, kj, k))
    with _exit_on_error(ctx):
        dp = derive_params(spec)
        applicability = classify(spec, dp)
    report = CountReport(spec=spec, params=dp, applicability=applicability)
    if output_format == 'json':
        click.echo(to_json({
            'spec': spec.to_dict(),
            'params': report.params.to_dict(),
            'applicability': report.applicability.to_dict(),
        }), nl=False)
        return
    console.print(params_table(report))
    console.print(Panel(reasons_text(report), title="Classification notes", border_style="yellow"))


@cli.command()
@_spec_options
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text')
@click.pass_context
def tsum(ctx: click.Context, spec_path, p, s, modulus, a, b, m, kj, k, output_format: str):
    """Print T(psi) for every character with psi^d trivial, as exact cyclotomic coefficients."""
    _, spec = _load_spec(ctx, spec_path, _inline_spec(p, s, modulus, a, b, m, kj, k))
    with _exit_on_error(ctx):
        d = derive_params(spec).d
        rows = _tsum_rows(spec, d)
    if output_format == 'json':
        click.echo(to_json({'d': d, 'characters': rows}), nl=False)
        return
    console.print(tsum_table(rows))


@cli.command(name='verify-tables')
@click.option('--table', type=click.Choice(['1', '2']), help="Only one of the two tables")
@click.option('--q', type=int, help="Only rows with this field order")
@click.option('--threads', type=click.IntRange(min=1), help="Rows verified in parallel")
@click.option('--output', type=click.Path(dir_okay=False), help="Write the JSON results to this file")
@click.pass_context
def verify_tables(ctx: click.Context, table: Optional[str], q: Optional[int],
                  threads: Optional[int], output: Optional[str]):
    """Reproduce the published tables with the closed forms and the oracle."""
    config = _config(ctx)
    rows = select_rows(int(table) if table else None, q)
    if not rows:
        _fail(ctx, "No table rows match the filters.", "Verify Tables", EXIT_PARSE_ERROR)
    with _exit_on_error(ctx):
        workers = threads or config.get_threads()
        naive_limit = config.get_naive_limit()

    with console.status(f"Verifying {len(rows)} rows...", spinner="dots"):
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(verify_row, row, naive_limit) for row in rows]
            results = [future.result() for future in futures]

    console.print(verify_table(results))
    for row in rows:
        if row.note:
            console.print(Align.center(Text(f"* {row.label}: {row.note}", style="dim")))
    if output:
        with open(output, 'w') as f:
            f.write(to_json({'rows': [result.to_dict() for result in results]}))

    failed = [result.row.label for result in results if not result.passed]
    passed = len(results) - len(failed)
    if failed:
        _fail(ctx, f"{passed}/{len(results)} rows pass; failing: {', '.join(failed)}",
              "Verify Tables", EXIT_DISAGREEMENT)
    console.print(Panel.fit(f"{passed}/{len(results)} rows pass", title="Verify Tables",
                            border_style="green"))


@cli.command()
@click.option('--seed', type=int, help="Random seed")
@click.option('--budget', 'budget_seconds', type=float, help="Time budget in seconds")
@click.option('--samples', type=int, help="Random instances per sampled suite")
@click.option('--suite', 'suites', multiple=True, help="Run only the named suite (repeatable)")
@click.option('--threads', type=click.IntRange(min=1), help="Suites run in parallel")
@click.pass_context
def selftest(ctx: click.Context, seed: Optional[int], budget_seconds: Optional[float],
             samples: Optional[int], suites, threads: Optional[int]):
    """Run the randomized invariant suites."""
    config = _config(ctx)
    with _exit_on_error(ctx):
        settings = config.get_selftest_config()
        workers = threads or config.get_threads()
    seed = settings['seed'] if seed is None else seed
    budget_seconds = settings['budget_seconds'] if budget_seconds is None else budget_seconds
    samples = settings['samples'] if samples is None else samples

    with console.status(f"Running self-test with seed {seed}...", spinner="dots"):
        results = run_selftest(seed=seed, budget_seconds=budget_seconds, samples=samples,
                               threads=workers, suites=suites or None)

    console.print(selftest_table(results))
    failed = [result for result in results if not result.passed]
    for result in failed:
        console.print(Panel(
            f"{result.message}\n\n{to_json(result.counterexample or {})}",
            title=f"First counterexample: {result.name}",
            border_style="red",
        ))
    if failed:
        ctx.exit(EXIT_DISAGREEMENT)
    console.print(Panel.fit(f"All {len(results)} suites pass (seed {seed})", title="Self-test",
                            border_style="green"))
