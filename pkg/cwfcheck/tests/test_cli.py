"""
Integration Tests for the Command Line

Runs the click group in-process on the fixture files and checks exit
codes and the machine report.
"""

import json

import pytest
from click.testing import CliRunner


@pytest.fixture
def run(fixture_file):
    """Invoke cwfcheck with fixture names resolved to paths"""
    from cwfcheck.cli import cli

    runner = CliRunner()

    def invoke(*args: str):
        resolved = [fixture_file(a) if "." in a and "/" not in a and not a.startswith("-") else a for a in args]
        return runner.invoke(cli, resolved)

    return invoke


def _machine(result) -> dict:
    return json.loads(result.stdout)


def _verdicts(report: dict) -> dict:
    return {c["id"]: c["verdict"] for c in report["checks"]}


class TestKernelCommands:
    """check, norm, eq and eval"""

    @pytest.mark.integration
    def test_convertible_files(self, run):
        result = run("eq", "a.cwf", "b.cwf")
        assert result.exit_code == 0, result.output

    @pytest.mark.integration
    def test_inconvertible_files(self, run):
        result = run("eq", "apply.cwf", "false.cwf", "--format", "machine")
        assert result.exit_code == 1
        report = _machine(result)
        assert report["status"] == "fail"
        assert report["checks"][0]["payload"] == {"verdict": "not equal"}

    @pytest.mark.integration
    def test_oracle_agrees(self, run):
        result = run("eq", "apply.cwf", "true.cwf", "--oracle", "--format", "machine")
        assert result.exit_code == 0
        assert _verdicts(_machine(result)) == {"convertible": "pass", "semantic": "info", "soundness": "pass"}

    @pytest.mark.integration
    def test_parse_error_is_an_input_error(self, run):
        result = run("check", "unclosed.cwf", "--format", "machine")
        assert result.exit_code == 2
        entry = _machine(result)["checks"][0]
        assert entry["verdict"] == "error"
        assert "line" in entry["payload"]["error"]

    @pytest.mark.integration
    def test_ill_typed_file_fails(self, run):
        result = run("check", "illtyped.cwf", "--format", "machine")
        assert result.exit_code == 1
        payload = _machine(result)["checks"][0]["payload"]
        assert payload["sort"] == "tm"
        assert payload["path"]

    @pytest.mark.integration
    def test_check_reports_the_type(self, run):
        result = run("check", "not.cwf", "--format", "machine")
        assert result.exit_code == 0
        assert _machine(result)["checks"][0]["payload"]["type"]

    @pytest.mark.integration
    def test_norm_prints_the_normal_form(self, run):
        result = run("norm", "apply.cwf")
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "true"

    @pytest.mark.integration
    def test_eval_tabulates(self, run):
        result = run("eval", "not.cwf", "--format", "machine")
        assert result.exit_code == 0
        assert _machine(result)["checks"][0]["payload"]["rows"]


class TestVerifierCommands:
    """verify-semicat, verify-sset, verify-map and nerve"""

    @pytest.mark.integration
    def test_z2(self, run):
        result = run("verify-semicat", "z2.semicat", "--format", "machine")
        assert result.exit_code == 0, result.output
        verdicts = _verdicts(_machine(result))
        assert verdicts["good-identities"] == "pass"
        assert verdicts["I(e)"] == "pass" and verdicts["I(g)"] == "pass"
        assert verdicts["univalence"] == "info"

    @pytest.mark.integration
    def test_partial_composition_fails(self, run):
        result = run("verify-semicat", "partial.semicat", "--format", "machine")
        assert result.exit_code == 1
        assert _verdicts(_machine(result)) == {"validate": "fail"}

    @pytest.mark.integration
    def test_segal_failure(self, run):
        result = run("verify-sset", "dup_filler.sset", "--format", "machine")
        assert result.exit_code == 1
        verdicts = _verdicts(_machine(result))
        assert verdicts["validate"] == "pass"
        assert verdicts["segal"] == "fail"

    @pytest.mark.integration
    def test_simplex_passes(self, run):
        result = run("verify-sset", "simplex2.sset")
        assert result.exit_code == 0, result.output

    @pytest.mark.integration
    def test_functor_projection(self, run):
        result = run("verify-map", "swap.functor", "--format", "machine")
        assert result.exit_code == 0
        assert _machine(result)["checks"][0]["payload"] == {"kind": "kan"}

    @pytest.mark.integration
    def test_nerve_to_file(self, run, tmp_path):
        from cwfcheck.formats import load_sset

        out = tmp_path / "z2.sset"
        result = run("nerve", "z2.semicat", "--max-level", "2", "-o", str(out))
        assert result.exit_code == 0
        assert load_sset(out).cell_counts() == [1, 2, 4]


class TestEnumerateCommand:
    """enumerate"""

    @pytest.mark.integration
    def test_one_object_three_morphisms(self, run):
        result = run("enumerate", "--max-objects", "1", "--max-morphisms", "3", "--format", "machine")
        assert result.exit_code == 0
        report = _machine(result)
        assert report["checks"][-1]["payload"] == {"count": 113, "shapes": 1}

    @pytest.mark.integration
    def test_machine_output_is_byte_identical(self, run):
        args = ("enumerate", "--max-objects", "2", "--max-morphisms", "2", "--format", "machine")
        assert run(*args).stdout == run(*args).stdout

    @pytest.mark.integration
    def test_bad_bounds(self, run):
        result = run("enumerate", "--max-objects", "1", "--max-morphisms", "1", "--min-morphisms", "3")
        assert result.exit_code == 2


class TestModelCommands:
    """harness and slice"""

    @pytest.mark.integration
    def test_corrupted_model_fails(self, run):
        result = run("harness", "--model", "corrupted", "--schema", "p-beta", "--budget", "20")
        assert result.exit_code == 1

    @pytest.mark.integration
    def test_standard_model_passes(self, run):
        result = run("harness", "--model", "standard", "--schema", "assoc", "--budget", "5",
                     "--format", "machine")
        assert result.exit_code == 0
        assert _verdicts(_machine(result)) == {"law/assoc": "pass"}

    @pytest.mark.integration
    def test_slice_needs_exactly_one_source(self, run):
        assert run("slice").exit_code == 2

    @pytest.mark.integration
    def test_slice_of_a_file(self, run):
        result = run("slice", "z2.semicat", "--object", "x", "--format", "machine")
        assert result.exit_code == 0
        assert _verdicts(_machine(result))["slice/identities"] == "pass"

    @pytest.mark.integration
    def test_slicing_a_failing_model_is_refused(self, run):
        result = run("slice", "--model", "corrupted", "--budget", "20")
        assert result.exit_code == 2
        assert "laws fail" in result.output

    @pytest.mark.integration
    def test_slicing_over_a_context_file_is_refused_too(self, run):
        result = run("slice", "--model", "corrupted", "--context", "bool_context.cwf", "--budget", "20")
        assert result.exit_code == 2
        assert "laws fail" in result.output
