import json
from collections import Counter

import numpy as np
import pytest
from click.testing import CliRunner

from src.cli import cli
from src.cli.selftest import SUITE_NAMES, build_suites, diagonal_cases, lemma2_cases, run_selftest
from src.cli.spec_file import SpecFile, parse_int_list, smallest_in_class
from src.cli.tables import ALL_ROWS, TABLE_1, TABLE_2, select_rows
from src.eqmodel import BClass
from src.exceptions import ClosedFormMismatchError, IntegralityError, ValidationError
from src.utils.logger import setup_logger

CARLITZ_FLAGS = ['--p', '7', '--a', '1,1,1', '--b', '1', '--m', '1,1,1', '--kj', '1,1,1', '--k', '2']


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner, tmp_path):
    """Runs the CLI against a settings file private to the test."""
    settings = str(tmp_path / 'settings.json')

    def _invoke(*args):
        return runner.invoke(cli, ['--config', settings, *args])
    return _invoke


@pytest.fixture
def table1_spec(tmp_path):
    path = tmp_path / 'row1.json'
    path.write_text(json.dumps({
        'p': 2, 's': 4, 'a': [1, 1, 1, 1, 1], 'b': 'nonpower',
        'm': [2, 4, 6, 8, 10], 'kj': [5, 5, 10, 10, 10], 'k': 10,
    }))
    return str(path)


class TestSpecFile:
    def test_parse_int_list(self):
        """Comma strings and lists both parse; a bad entry names its field."""
        assert parse_int_list("1, 2,3", 'm') == [1, 2, 3]
        assert parse_int_list([4, 5], 'm') == [4, 5]
        with pytest.raises(ValidationError) as excinfo:
            parse_int_list("1,x", 'kj')
        assert excinfo.value.field == 'kj'

    @pytest.mark.parametrize("overrides,field", [
        ({'a': [1.9, 1]}, 'a'),
        ({'b': 2.5}, 'b'),
        ({'b': '2.5'}, 'b'),
        ({'k': 2.0}, 'k'),
        ({'m': ['1.5', '1']}, 'm'),
        ({'p': True}, 'p'),
        ({'kj': 3}, 'kj'),
    ])
    def test_non_integers_are_rejected(self, overrides, field):
        """Floats, bools and scalars in list fields are errors, never truncated."""
        data = {'p': 7, 'a': [1, 1], 'b': 2, 'm': [1, 1], 'kj': [1, 1], 'k': 1}
        data.update(overrides)
        with pytest.raises(ValidationError) as excinfo:
            SpecFile.from_dict(data)
        assert excinfo.value.field == field

    def test_missing_field(self):
        """A missing required key is reported under its own name."""
        with pytest.raises(ValidationError) as excinfo:
            SpecFile.from_dict({'p': 7, 'a': [1, 1], 'b': 1, 'm': [1, 1], 'kj': [1, 1]})
        assert excinfo.value.field == 'k'

    def test_class_directive(self):
        """'nonpower' resolves to the smallest non-square in F_7."""
        spec_file = SpecFile.from_dict({'p': 7, 'a': [1, 1], 'b': 'NonPower', 'm': [2, 2], 'kj': [2, 2], 'k': 2})
        assert spec_file.b == BClass.NONPOWER
        assert spec_file.to_equation_spec().b == 3

    def test_out_of_range_element(self):
        """Coefficients outside [0, q) are rejected under 'a'."""
        spec_file = SpecFile.from_dict({'p': 7, 'a': [1, 9], 'b': 1, 'm': [1, 1], 'kj': [1, 1], 'k': 1})
        with pytest.raises(ValidationError) as excinfo:
            spec_file.to_equation_spec()
        assert excinfo.value.field == 'a'

    def test_no_nonpower_when_k0_is_one(self, f7):
        """Every element is a 1st power, so no non-power b exists."""
        with pytest.raises(ValidationError, match="no non-1-th power"):
            smallest_in_class(f7, 1, BClass.NONPOWER)

    def test_missing_file(self, tmp_path):
        """A missing spec file is reported under 'path'."""
        with pytest.raises(ValidationError) as excinfo:
            SpecFile.load(str(tmp_path / 'absent.json'))
        assert excinfo.value.field == 'path'


class TestTables:
    def test_row_counts(self):
        """Seven rows in each reference table."""
        assert len(TABLE_1) == 7
        assert len(TABLE_2) == 7
        assert len(ALL_ROWS) == 14

    def test_select_rows(self):
        """Rows filter by table and by field order."""
        assert [row.label for row in select_rows(q=81)] == ["T1 q=81", "T2 q=81"]
        assert [row.q for row in select_rows(table=2, q=64)] == [64]
        assert select_rows(q=999) == []

    def test_flagged_row(self):
        """The q = 25 row carries its coefficient note."""
        row = select_rows(table=1, q=25)[0]
        assert row.note
        assert row.n == len(row.a) == 5


class TestCount:
    def test_inline_carlitz(self, invoke):
        """Inline flags produce a JSON report with agreeing closed form and oracle."""
        result = invoke('count', *CARLITZ_FLAGS, '--format', 'json')
        assert result.exit_code == 0, result.output
        data = json.loads(result.output)
        assert data['closed_form_value'] == '50'
        assert data['oracle_value'] == '50'
        assert data['agreement'] is True

    def test_text_report(self, invoke):
        """The text report shows the count."""
        result = invoke('count', *CARLITZ_FLAGS, '--format', 'text')
        assert result.exit_code == 0, result.output
        assert '50' in result.output

    def test_spec_file_table_row(self, invoke, table1_spec):
        """A reference row loaded from file is counted by Theorem 1."""
        result = invoke('count', table1_spec, '--format', 'json')
        assert result.exit_code == 0, result.output
        data = json.loads(result.output)
        assert data['closed_form_method'] == 'theorem1'
        assert data['closed_form_value'] == '18076'
        assert data['oracle_value'] == '18076'

    def test_malformed_exponents(self, invoke):
        """A non-numeric exponent exits 1."""
        flags = list(CARLITZ_FLAGS)
        flags[flags.index('--m') + 1] = '1,x,1'
        result = invoke('count', *flags)
        assert result.exit_code == 1
        assert 'Invalid input' in result.output

    def test_bad_json(self, invoke, tmp_path):
        """Truncated JSON is an input error."""
        path = tmp_path / 'broken.json'
        path.write_text('{"p": 7,')
        result = invoke('count', str(path))
        assert result.exit_code == 1
        assert 'Invalid input' in result.output

    def test_oracle_disagreement_exits_2(self, invoke, mocker):
        """Closed form vs oracle disagreement exits 2."""
        mocker.patch('src.counter.dispatcher.oracle_count', return_value=7)
        result = invoke('count', *CARLITZ_FLAGS, '--format', 'json')
        assert result.exit_code == 2

    def test_closed_form_mismatch_exits_2(self, invoke, mocker):
        """Disagreeing closed forms exit 2."""
        mocker.patch('src.cli.commands.dispatch', side_effect=ClosedFormMismatchError("theorem3=1, pzc=2"))
        result = invoke('count', *CARLITZ_FLAGS)
        assert result.exit_code == 2
        assert 'Closed forms disagree' in result.output

    def test_float_entries_exit_1(self, invoke, tmp_path):
        """A spec file with fractional coefficients is refused, naming the field."""
        path = tmp_path / 'float.json'
        path.write_text(json.dumps({'p': 7, 'a': [1.9, 1], 'b': 2.5, 'm': [1, 1], 'kj': [1, 1], 'k': 1}))
        result = invoke('count', str(path), '--format', 'json')
        assert result.exit_code == 1
        assert 'Invalid input: a' in result.output

    def test_internal_inconsistency_exits_2(self, invoke, mocker):
        """A non-integral intermediate is reported, not raised as a traceback."""
        mocker.patch('src.cli.commands.dispatch', side_effect=IntegralityError("sqrt(q) part survives"))
        result = invoke('count', *CARLITZ_FLAGS)
        assert result.exit_code == 2
        assert 'Counting failed' in result.output

    def test_debug_cross_checks_i_count(self, invoke, mocker):
        """--debug recomputes every I-count, so a broken product form surfaces."""
        mocker.patch('src.numth.integers.i_count_product', return_value=-1)
        try:
            result = invoke('--debug', 'count', '--p', '2', '--s', '4', '--a', '1,1', '--b', '1',
                            '--m', '5,5', '--kj', '5,5', '--k', '10', '--format', 'json')
        finally:
            setup_logger(debug=False)
        assert result.exit_code == 2
        assert 'product form' in result.output

    def test_without_debug_i_count_is_not_rechecked(self, invoke, mocker):
        """Outside debug mode the product form is never consulted."""
        mocker.patch('src.numth.integers.i_count_product', return_value=-1)
        result = invoke('count', '--p', '2', '--s', '4', '--a', '1,1', '--b', '1',
                        '--m', '5,5', '--kj', '5,5', '--k', '10', '--format', 'json')
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)['closed_form_value'] == '51'

    def test_output_is_byte_stable(self, invoke, tmp_path):
        """Two runs write byte-identical JSON, equal to what stdout shows."""
        first, second = tmp_path / 'out' / 'a.json', tmp_path / 'out' / 'b.json'
        results = [invoke('count', *CARLITZ_FLAGS, '--format', 'json', '--output', str(path))
                   for path in (first, second)]
        assert all(result.exit_code == 0 for result in results)
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text() == results[0].output

    def test_all_b(self, invoke):
        """--all-b reports N_q for every nonzero b."""
        result = invoke('count', '--p', '7', '--a', '1,1,1,1', '--b', '1', '--m', '1,1,1,1',
                        '--kj', '1,1,1,1', '--k', '2', '--all-b', '--format', 'json')
        assert result.exit_code == 0, result.output
        profile = json.loads(result.output)['b_profile']
        assert profile['counts']['1'] == '335'
        assert profile['counts']['3'] == '349'

    def test_no_oracle(self, invoke):
        """--no-oracle leaves oracle and agreement empty."""
        result = invoke('count', *CARLITZ_FLAGS, '--no-oracle', '--format', 'json')
        data = json.loads(result.output)
        assert data['oracle_value'] is None
        assert data['agreement'] is None

    def test_list_characters(self, invoke):
        """--list-characters adds each T(psi) coefficient vector."""
        result = invoke('count', '--p', '7', '--a', '1,1', '--b', '1', '--m', '1,1', '--kj', '1,1', '--k', '1',
                        '--list-characters', '--format', 'json')
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)['characters'] == [{'r': 0, 'order': 1, 'coefficients': ['5']}]


class TestDeriveAndTsum:
    def test_derive_json(self, invoke, table1_spec):
        """derive reports parameters and applicability as JSON."""
        result = invoke('derive', table1_spec, '--format', 'json')
        assert result.exit_code == 0, result.output
        data = json.loads(result.output)
        assert data['params']['k0'] == 5
        assert data['params']['dj'] == [1, 1, 3, 1, 5]
        assert data['applicability']['theorem1'] is True

    def test_derive_text(self, invoke, table1_spec):
        """derive defaults to a text report."""
        result = invoke('derive', table1_spec)
        assert result.exit_code == 0, result.output
        assert 'Derived parameters' in result.output

    def test_tsum_json(self, invoke):
        """With d = 1 only the trivial character sum is listed."""
        result = invoke('tsum', '--p', '5', '--a', '1,1', '--b', '1', '--m', '1,1', '--kj', '1,1', '--k', '1',
                        '--format', 'json')
        assert result.exit_code == 0, result.output
        data = json.loads(result.output)
        assert data['d'] == 1
        assert data['characters'] == [{'r': 0, 'order': 1, 'coefficients': ['3']}]


class TestVerifyTables:
    def test_single_row(self, invoke, tmp_path):
        """Reproduces the q = 31 row and writes the JSON results."""
        output = tmp_path / 'rows.json'
        result = invoke('verify-tables', '--q', '31', '--output', str(output))
        assert result.exit_code == 0, result.output
        assert '1/1 rows pass' in result.output
        rows = json.loads(output.read_text())['rows']
        assert rows[0]['passed'] is True
        assert rows[0]['closed_form_value'] == '3661'

    def test_no_matching_rows(self, invoke):
        """A filter that selects nothing exits 1."""
        result = invoke('verify-tables', '--q', '999')
        assert result.exit_code == 1

    def test_invalid_threads_setting_exits_1(self, invoke, monkeypatch):
        """A bad NQCOUNT_THREADS value is an input error for both parallel commands."""
        monkeypatch.setenv('NQCOUNT_THREADS', 'many')
        for args in (('verify-tables', '--q', '31'), ('selftest', '--suite', 'i_function')):
            result = invoke(*args)
            assert result.exit_code == 1
            assert 'NQCOUNT_THREADS' in result.output


class TestSelftest:
    def test_i_function_suite(self, invoke):
        """The I-function suite passes on a fixed seed."""
        result = invoke('selftest', '--suite', 'i_function', '--seed', '3')
        assert result.exit_code == 0, result.output

    def test_failure_reports_counterexample(self, invoke, mocker):
        """A failing suite exits 2 and prints its first counterexample."""
        mocker.patch('src.cli.selftest.i_count_equal', return_value=-1)
        result = invoke('selftest', '--suite', 'i_function')
        assert result.exit_code == 2
        assert 'First counterexample' in result.output

    def test_suites_are_deterministic(self):
        """The same seed draws the same cases."""
        names = [name for name in SUITE_NAMES if name != 'diagonal']
        first = build_suites(seed=11, samples=5, names=names)
        second = build_suites(seed=11, samples=5, names=names)
        assert [suite.name for suite in first] == names
        for a, b in zip(first, second):
            assert [repr(case) if a.name == 'i_function' else case.to_dict() for case in a.cases] == \
                [repr(case) if b.name == 'i_function' else case.to_dict() for case in b.cases]

    def test_cases_do_not_depend_on_selection(self):
        """A suite draws the same cases whether or not other suites run."""
        [alone] = build_suites(seed=4, samples=6, names=['theorems'])
        together = build_suites(seed=4, samples=6, names=['assembly', 'theorems'])
        assert [case.to_dict() for case in alone.cases] == [case.to_dict() for case in together[1].cases]

    def test_lemma2_cases_per_field(self):
        """Twenty instances for every field order up to 25."""
        cases = lemma2_cases(np.random.default_rng(0))
        per_q = Counter(spec.q for spec in cases)
        assert sorted(per_q) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25]
        assert set(per_q.values()) == {20}

    def test_diagonal_sweep_is_exhaustive(self):
        """Every sorted exponent tuple with a diagonal closed form appears with all a_j = 1."""
        cases = diagonal_cases(np.random.default_rng(0), fields=(3, 4, 5), max_n=3, max_m=6)
        unit = {(spec.q, spec.m) for spec in cases if set(spec.a) == {1}}
        assert all(list(spec.m) == sorted(spec.m) for spec in cases)
        assert {spec.q for spec in cases} == {3, 4, 5}
        assert (5, (2, 2)) in unit
        assert (4, (3, 3, 3)) in unit
        assert (3, (1, 2)) in unit
        # d_j = (4, 4) on F_5: halves share a factor and 4 divides no 5^l + 1
        assert (5, (4, 4)) not in {(spec.q, spec.m) for spec in cases}

    def test_budget_exhaustion(self):
        """An exhausted budget stops a suite without failing it."""
        [result] = run_selftest(seed=1, budget_seconds=-1, samples=2, suites=['assembly'])
        assert result.budget_exhausted
        assert result.cases == 0
        assert result.passed
