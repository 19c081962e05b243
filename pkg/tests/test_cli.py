"""
Tests for the input language, the task runner and the command line.
"""

import json
from pathlib import Path

import pytest

from cli.main import EXIT_OK, EXIT_PARSE_ERROR, EXIT_TASK_FAILURE, main
from cli.parser import InputDocument, format_document, parse
from cli.report import SCHEMA_VERSION, build_report, render_table
from cli.runner import ERROR, FAILED, OK, RunOptions, exit_code, run, run_async
from cli.workspace import Workspace
from common.errors import ParseError, ResolutionError

FIXTURES = Path(__file__).parent.parent / 'fixtures'

SIGMA = """
field F101
algebra Σ { vertices 3; arrows x:3->3; relations x*x; }
module S over Σ { simple 3; }
"""


def document(tasks: str) -> str:
    return SIGMA + tasks


class TestParser:
    """Tests for parsing and printing documents."""

    @pytest.mark.parametrize('name', ['example7.fdh', 'gorenstein_pair.fdh'])
    def test_fixture_round_trip(self, name):
        """Printing a parsed fixture and parsing it again gives the same document."""
        parsed = parse((FIXTURES / name).read_text(encoding='utf-8'))
        assert parse(format_document(parsed)) == parsed

    def test_empty_document(self):
        assert parse('') == InputDocument()
        assert parse('# nothing here\n') == InputDocument()

    def test_example7_contents(self):
        parsed = parse((FIXTURES / 'example7.fdh').read_text(encoding='utf-8'))
        assert parsed.field_name == 'F101'
        assert list(parsed.algebras) == ['Λ', 'Σ']
        assert parsed.algebras['Λ'].arrows == [('alpha', '1', '1'), ('beta', '1', '2')]
        assert parsed.modules['M'].over == 'Λ⊗Σop'
        assert parsed.tasks[4].kind == 'semtl-check'
        assert parsed.tasks[4].integer('level') == 1

    def test_relation_coefficients(self):
        parsed = parse("algebra A { vertices 1 2; arrows a:1->2 b:1->2 c:2->2; relations c*a - 1/2 b, -2 c*b; }")
        relations = parsed.algebras['A'].relations
        assert relations[0] == [('1', ['c', 'a']), ('-1/2', ['b'])]
        assert relations[1] == [('-2', ['c', 'b'])]

    def test_fraction_entries(self):
        parsed = parse((FIXTURES / 'gorenstein_pair.fdh').read_text(encoding='utf-8'))
        assert parsed.modules['Tinv'].maps['3×x^op'] == [['0', '0'], ['1/2', '0']]

    def test_unknown_arrow(self):
        with pytest.raises(ResolutionError, match="unknown arrow 'y'"):
            parse("algebra A { vertices 1; arrows x:1->1; relations y*x; }")

    def test_unknown_vertex(self):
        with pytest.raises(ResolutionError) as info:
            parse("algebra A { vertices 1; arrows x:1->2; }")
        assert info.value.kind == 'vertex'
        assert info.value.line == 1

    def test_unknown_module(self):
        with pytest.raises(ResolutionError, match="module"):
            parse(document("task mcm { module T; }"))

    def test_unknown_algebra_factor(self):
        with pytest.raises(ResolutionError, match="Γ"):
            parse(document("module B over Σ⊗Γ { dims 1; }"))

    def test_position(self):
        with pytest.raises(ParseError) as info:
            parse("field F101\nalgebra A {\n  vertices 1;\n  loops 2;\n}")
        assert info.value.line == 4
        assert info.value.column == 3
        assert 'Unknown algebra item' in str(info.value)

    def test_missing_parameter(self):
        with pytest.raises(ParseError, match="missing lambda"):
            parse(document("task semtl-check { sigma Σ; m S; n S; level 0; }"))

    def test_unknown_parameter(self):
        with pytest.raises(ParseError, match="takes no parameter 'upto'"):
            parse(document("task gorenstein { algebra Σ; upto 3; }"))

    def test_bad_expect(self):
        with pytest.raises(ParseError, match="expect must be one of"):
            parse(document("task gorenstein { algebra Σ; expect maybe; }"))

    def test_dim_needs_one_subject(self):
        with pytest.raises(ParseError, match="exactly one"):
            parse(document("task dim { algebra Σ; module S; }"))

    def test_constructor_with_dims(self):
        with pytest.raises(ParseError, match="mixes"):
            parse(document("module T over Σ { simple 3; dims 1; }"))

    def test_zero_denominator(self):
        with pytest.raises(ParseError, match="Zero denominator"):
            parse(document("module T over Σ { dims 1; map x = [[1/0]]; }"))

    def test_ragged_matrix(self):
        with pytest.raises(ParseError, match="different lengths"):
            parse(document("module T over Σ { dims 2; map x = [[0, 0], [1]]; }"))

    def test_bad_field(self):
        with pytest.raises(ParseError):
            parse("field F100")

    def test_hyphenated_task(self):
        parsed = parse(document("task bump-level { lambda Σ; sigma Σ; m S; n S; level 0; steps 2; }"))
        assert parsed.tasks[0].kind == 'bump-level'
        assert parsed.tasks[0].integer('steps') == 2
        assert parsed.tasks[0].label == 'bump-level@5'


class TestWorkspace:
    """Tests for building algebras and modules from a document."""

    def test_example7(self):
        ws = Workspace(parse((FIXTURES / 'example7.fdh').read_text(encoding='utf-8')))
        assert ws.algebra('Λ').dim == 4
        assert ws.algebra('Σ').dim == 2
        assert ws.algebra('Λ⊗Σop').dim == 8
        assert ws.algebra('Λ⊗Λop').dim == 16
        assert ws.module('M').dims == [2, 2]
        assert ws.module('N').dims == [2, 0]
        assert ws.module('S3').dims == [1]

    def test_same_expression_same_algebra(self):
        ws = Workspace(parse((FIXTURES / 'example7.fdh').read_text(encoding='utf-8')))
        assert ws.algebra('Λ⊗Σop') is ws.algebra('Λ⊗Σ^op')
        assert ws.module('M').algebra is ws.algebra('Λ⊗Σop')

    def test_bimodule_constructor(self):
        ws = Workspace(parse((FIXTURES / 'gorenstein_pair.fdh').read_text(encoding='utf-8')))
        assert ws.module('Σe').total_dim == 2

    def test_relation_violation(self):
        ws = Workspace(parse(document("module T over Σ { dims 1; map x = [[1]]; }")))
        with pytest.raises(ValueError, match="does not satisfy"):
            ws.module('T')

    def test_wrong_dims(self):
        ws = Workspace(parse(document("module T over Σ { dims 1 1; }")))
        with pytest.raises(ValueError, match="2 dims for 1 vertices"):
            ws.module('T')


class TestRunner:
    """Tests for running task blocks."""

    def test_dim_and_gorenstein(self):
        reports = run(parse(document("task dim { algebra Σ; }\ntask gorenstein { algebra Σ; expect pass; }")))
        assert [r.status for r in reports] == [OK, OK]
        assert reports[0].result.data['dim'] == 2
        assert reports[1].result.data['verdict'] == 'yes(0)'
        assert exit_code(reports) == 0

    def test_expectation_mismatch(self):
        reports = run(parse(document("task gorenstein { algebra Σ; expect fail; }")))
        assert reports[0].status == FAILED
        assert exit_code(reports) == 1

    def test_error_is_embedded(self):
        """A failing task does not stop the ones after it."""
        text = document("module T over Σ { dims 1; map x = [[1]]; }\ntask mcm { module T; }\ntask dim { module S; }")
        reports = run(parse(text))
        assert reports[0].status == ERROR
        assert reports[0].error[0] == 'ValueError'
        assert reports[1].status == OK
        assert reports[1].result.data['dims'] == [1]

    def test_ext_dims(self):
        reports = run(parse(document("task ext { source S; target S; upto 3; }")))
        assert reports[0].result.data['dims'] == [1, 1, 1, 1]

    def test_hh_oracle(self):
        reports = run(parse(document("task hh { algebra Σ; upto 2; oracle; expect pass; }")))
        assert reports[0].status == OK
        assert reports[0].result.data['dims'] == [2, 1, 1]

    def test_cap_degree_default(self):
        reports = run(parse(document("task ext { source S; target S; }")), RunOptions(cap_degree=2))
        assert reports[0].result.data['dims'] == [1, 1, 1]

    def test_hypotheses_reported(self):
        text = document("module Σe over Σ⊗Σop { bimodule Σ; }\n"
                        "task hh-transfer { lambda Σ; sigma Σ; m Σe; n Σe; level 0; upto 3; expect fail; }")
        reports = run(parse(text))
        assert reports[0].status == OK
        assert reports[0].result.data['hypotheses'] is False

    @pytest.mark.asyncio
    async def test_run_async_keeps_order(self):
        parsed = parse(document("task dim { algebra Σ; }\ntask dim { module S; }\ntask gorenstein { algebra Σ; }"))
        reports = await run_async(parsed, RunOptions(parallel=True))
        assert [r.index for r in reports] == [0, 1, 2]
        assert [r.task.kind for r in reports] == ['dim', 'dim', 'gorenstein']
        assert all(r.status == OK for r in reports)


class TestReport:
    """Tests for the table and the JSON report."""

    def test_schema(self):
        reports = run(parse(document("task dim { algebra Σ; }")))
        report = build_report(reports, RunOptions(), 'F101')
        assert report['schema'] == SCHEMA_VERSION
        assert report['field'] == 'F101'
        assert report['seed'] == 0
        assert report['summary'] == {'ok': 1, 'failed': 0, 'error': 0}
        task = report['tasks'][0]
        assert task['task'] == 'dim'
        assert task['params'] == {'algebra': 'Σ'}
        assert 'seconds' not in task

    def test_timings_when_verbose(self):
        reports = run(parse(document("task dim { algebra Σ; }")))
        report = build_report(reports, RunOptions(verbose=True), 'F101')
        assert 'seconds' in report['tasks'][0]

    def test_table(self):
        reports = run(parse(document("task dim { algebra Σ; }")))
        lines = render_table(reports).splitlines()
        assert lines[0].split() == ['#', 'task', 'line', 'status', 'summary']
        assert lines[2].startswith('0')
        assert 'dim Σ = 2' in lines[2]


class TestMain:
    """Tests for exit codes of the command line."""

    def write(self, tmp_path, text):
        path = tmp_path / 'input.fdh'
        path.write_text(text, encoding='utf-8')
        return str(path)

    def test_ok(self, tmp_path):
        out = tmp_path / 'report.json'
        path = self.write(tmp_path, document("task gorenstein { algebra Σ; expect pass; }"))
        assert main(['run', path, '--json', str(out)]) == EXIT_OK
        report = json.loads(out.read_text(encoding='utf-8'))
        assert report['tasks'][0]['result']['verdict'] == 'yes(0)'

    def test_task_failure(self, tmp_path):
        path = self.write(tmp_path, document("task gorenstein { algebra Σ; expect fail; }"))
        assert main(['run', path]) == EXIT_TASK_FAILURE

    def test_parse_error(self, tmp_path, capsys):
        path = self.write(tmp_path, "algebra A { vertices 1; arrows x:1->1; relations y; }")
        assert main(['run', path]) == EXIT_PARSE_ERROR
        assert "unknown arrow 'y'" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(['run', str(tmp_path / 'absent.fdh')]) == EXIT_PARSE_ERROR

    def test_print(self, tmp_path, capsys):
        path = self.write(tmp_path, document("task gorenstein { algebra Σ; }"))
        assert main(['print', path]) == EXIT_OK
        assert parse(capsys.readouterr().out) == parse(document("task gorenstein { algebra Σ; }"))

    def test_seed_is_reproducible(self, tmp_path):
        """Two runs with the same seed write identical reports."""
        path = self.write(tmp_path, (FIXTURES / 'gorenstein_pair.fdh').read_text(encoding='utf-8'))
        first, second = tmp_path / 'a.json', tmp_path / 'b.json'
        codes = [main(['run', path, '--seed', '7', '--json', str(out)]) for out in (first, second)]
        assert codes == [EXIT_OK, EXIT_OK]
        assert first.read_text(encoding='utf-8') == second.read_text(encoding='utf-8')

    @pytest.mark.parametrize('fixture', ['example7.fdh', 'gorenstein_pair.fdh'])
    def test_bundled_fixtures_pass(self, tmp_path, fixture):
        """Every task in the shipped inputs meets its expectation."""
        out = tmp_path / 'report.json'
        assert main(['run', str(FIXTURES / fixture), '--json', str(out)]) == EXIT_OK
        report = json.loads(out.read_text(encoding='utf-8'))
        assert report['tasks']
