"""
Tests for the command-line interface
"""
import json

import pytest
from typer.testing import CliRunner

from checks import read_report
from cli.suite import identities_suite
from main import app

UNIT_SQUARE = {"boxes": [{"lo": [0, 0], "hi": [1, 1]}]}
STEP = {
    "domain": [-2, 2],
    "breakpoints": [0],
    "pieces": [{"kind": "poly", "coeffs": [0]}, {"kind": "poly", "coeffs": [1]}],
}
ONE = {"domain": [-2, 2], "breakpoints": [], "pieces": [{"kind": "poly", "coeffs": [1]}]}


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, data, name="suite.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


class TestRun:
    def test_empty_scenario_list(self, runner, tmp_path):
        config = _write(tmp_path, [])
        report = tmp_path / "report.csv"
        result = runner.invoke(app, ["run", str(config), "-o", str(report)])
        assert result.exit_code == 0
        assert report.read_text() == "scenario,check,lhs,rhs,residual,tolerance,verdict,detail\n"

    def test_unknown_field_is_config_error(self, runner, tmp_path):
        config = _write(tmp_path, [{"id": "x", "field": {"name": "nope"}, "checks": ["complement"]}])
        result = runner.invoke(app, ["run", str(config), "-o", str(tmp_path / "r.csv")])
        assert result.exit_code == 2

    def test_missing_config(self, runner, tmp_path):
        result = runner.invoke(app, ["run", str(tmp_path / "absent.json")])
        assert result.exit_code == 2

    def test_passing_suite(self, runner, tmp_path):
        config = _write(
            tmp_path,
            {
                "name": "small",
                "scenarios": [
                    {"id": "b-identity", "checks": ["identity"], "params": {"n": 1}},
                    {
                        "id": "a-radial",
                        "field": {"name": "radial"},
                        "set": UNIT_SQUARE,
                        "lambda": {"overrides": [{"point": [0, 0], "value": 0.25}], "default": 0},
                        "checks": ["radial-atom"],
                    },
                ],
            },
        )
        report = tmp_path / "out" / "small.csv"
        result = runner.invoke(app, ["run", str(config), "-o", str(report), "--jobs", "2"])
        assert result.exit_code == 0, result.output
        rows = read_report(report)
        assert [(r["scenario"], r["verdict"]) for r in rows] == [("a-radial", "pass"), ("b-identity", "pass")]

    def test_failing_check_exits_one(self, runner, tmp_path):
        config = _write(
            tmp_path,
            [{"id": "wrong", "field": {"name": "constant"}, "set": UNIT_SQUARE, "checks": ["radial-atom"]}],
        )
        result = runner.invoke(app, ["run", str(config), "-o", str(tmp_path / "r.csv")])
        assert result.exit_code == 1
        assert "FAIL wrong/radial-atom" in result.output

    def test_report_is_deterministic(self, runner, tmp_path):
        config = _write(tmp_path, [{"id": f"s{n}", "checks": ["identity"], "params": {"n": n}} for n in (2, 1)])
        first, second = tmp_path / "1.csv", tmp_path / "2.csv"
        runner.invoke(app, ["run", str(config), "-o", str(first), "-j", "1"])
        runner.invoke(app, ["run", str(config), "-o", str(second), "-j", "2"])
        assert first.read_bytes() == second.read_bytes()


class TestVerify:
    def test_coarea_batch(self, runner, tmp_path):
        report = tmp_path / "coarea.csv"
        result = runner.invoke(app, ["verify", "coarea", "-o", str(report)])
        assert result.exit_code == 0, result.output
        checks = [r["check"] for r in read_report(report)]
        assert checks == ["coarea-hypothesis", "coarea"]


class TestCompute:
    def test_pair1d_jump(self, runner):
        result = runner.invoke(app, ["pair1d", json.dumps(STEP), json.dumps(ONE), "0.5"])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["total_variation"] == pytest.approx(1.0)
        assert payload["leibniz_defect"] == pytest.approx(0.0, abs=1e-12)
        assert payload["pairing"]["atoms"] == [[0, 1]]

    def test_pair1d_from_files(self, runner, tmp_path):
        u = _write(tmp_path, STEP, "u.json")
        A = _write(tmp_path, ONE, "A.json")
        result = runner.invoke(app, ["pair1d", str(u), str(A), '{"default": 0.25}'])
        assert result.exit_code == 0, result.output

    def test_pair1d_positional_field_argument(self, runner):
        # A has no jump: the pairing is the jump of u alone, whatever λ
        result = runner.invoke(app, ["pair1d", json.dumps(STEP), json.dumps(ONE), '{"default": 1}'])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["total_variation"] == pytest.approx(1.0)
        help_text = runner.invoke(app, ["pair1d", "--help"]).output
        assert "U A LAM" in help_text

    def test_pair1d_bad_lambda(self, runner):
        result = runner.invoke(app, ["pair1d", json.dumps(STEP), json.dumps(ONE), "2"])
        assert result.exit_code == 2

    def test_perimeter_exact(self, runner, tmp_path):
        config = _write(
            tmp_path, [{"id": "square", "field": {"name": "constant"}, "set": UNIT_SQUARE, "checks": ["perimeter"]}]
        )
        result = runner.invoke(app, ["perimeter", str(config)])
        assert result.exit_code == 0, result.output
        assert result.output.startswith("square: P = ")
        assert float(result.output.split("=")[1]) == pytest.approx(2.0, abs=1e-8)
        assert "lower bound" not in result.output

    def test_perimeter_unknown_id(self, runner, tmp_path):
        config = _write(
            tmp_path, [{"id": "square", "field": {"name": "constant"}, "set": UNIT_SQUARE, "checks": ["perimeter"]}]
        )
        result = runner.invoke(app, ["perimeter", str(config), "--id", "other"])
        assert result.exit_code == 2

    def test_denoise_writes_minimizer(self, runner, tmp_path):
        params = _write(tmp_path, {"g": [0.0, 1.0, 0.0, 1.0], "spacing": 0.25, "p": 2}, "params.json")
        output = tmp_path / "u.csv"
        result = runner.invoke(app, ["denoise", str(params), "-o", str(output)])
        assert result.exit_code == 0, result.output
        assert "energy:" in result.output
        assert output.exists()

    def test_denoise_missing_g(self, runner, tmp_path):
        params = _write(tmp_path, {"p": 2}, "params.json")
        result = runner.invoke(app, ["denoise", str(params)])
        assert result.exit_code == 2


class TestCatalogAndDemo:
    def test_list_fields(self, runner):
        result = runner.invoke(app, ["list-fields"])
        assert result.exit_code == 0
        for name in ("radial", "constant", "vortex", "staircase"):
            assert name in result.output

    def test_list_checks_by_tag(self, runner):
        result = runner.invoke(app, ["list-checks", "--tag", "1d"])
        assert result.exit_code == 0
        assert "leibniz" in result.output
        assert "radial-atom" not in result.output

    def test_compactness_demo(self, runner):
        result = runner.invoke(app, ["demo", "compactness", "--profile", "1.0", "-k", "1", "-k", "10"])
        assert result.exit_code == 0, result.output
        assert "limit mass: 2" in result.output
        assert "failure confirmed: True" in result.output


class TestIdentitiesBattery:
    @pytest.fixture
    def suite(self):
        return identities_suite()

    def test_covers_catalog_fields(self, suite):
        names = {s.field.name for s in suite.scenarios}
        assert names == {"constant", "heaviside", "radial", "transversal", "staircase", "measure_components"}

    def test_sets_stay_inside_the_window(self, suite):
        for scenario in suite.scenarios:
            assert scenario.build_set().is_compactly_inside(*scenario.build_field().window), scenario.id

    @pytest.mark.parametrize(
        "name,lambda_difference,ac_bound",
        [
            ("constant", True, True),
            ("radial", True, False),
            ("transversal", True, True),
            ("staircase", True, True),
            ("measure_components", False, False),
        ],
    )
    def test_checks_are_gated(self, suite, name, lambda_difference, ac_bound):
        scenarios = [s for s in suite.scenarios if s.field.name == name]
        assert scenarios
        for scenario in scenarios:
            assert {"complement", "convex-combination", "boundary-divergence"} <= set(scenario.checks)
            assert ("lambda-difference" in scenario.checks) == lambda_difference
            assert ("ac-bound" in scenario.checks) == ac_bound
