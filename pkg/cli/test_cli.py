# test_cli.py
import json

import pandas as pd
import pytest

from algebras.builtins import builtin
from algebras.schema import dump_algebra
from cli import main as cli
from cli.main import RunConfig, main, parse_degrees
from config import config


def run(capsys, *argv):
    code = main(list(argv) + ["--quiet"])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRunConfig:
    def test_degree_parsing(self):
        assert parse_degrees("2..6") == (2, 6)
        assert parse_degrees("41") == (41, 41)

    def test_verify_exact_upgrades_modular(self):
        cfg = RunConfig(algebra="sl2-trivial", arith="modular", verify_exact=True)
        assert cfg.arith == "modular-verified"

    def test_envelope_target(self):
        cfg = RunConfig(algebra="sl2-cartan", target="envelope", mode="graded")
        assert cfg.target_mode == "envelope-graded"
        assert cfg.evaluation_target().label == "G(sl2-cartan)"


class TestCodim:
    def test_metabelian_json(self, capsys):
        code, out, _ = run(capsys, "codim", "--algebra", "metabelian", "--n", "2..6", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert [row["c_n"] for row in report["rows"]] == ["1", "2", "3", "4", "5"]
        assert "seconds" not in report["rows"][0]
        assert report["rows"][1]["cocharacter"] == [{"lambda": [2, 1], "m": 1}]

    def test_abelian_zeros(self, capsys):
        code, out, _ = run(capsys, "codim", "--algebra", "abelian3", "--n", "2..4", "--format", "json")
        assert code == 0
        assert all(row["c_n"] == "0" for row in json.loads(out)["rows"])

    def test_deterministic(self, capsys):
        argv = ["codim", "--algebra", "sl2-trivial", "--n", "2..4", "--format", "json"]
        first = run(capsys, *argv)[1]
        second = run(capsys, *argv)[1]
        assert first == second

    def test_timings(self, capsys):
        _, out, _ = run(capsys, "codim", "--algebra", "metabelian", "--n", "3", "--format", "json", "--timings")
        assert "seconds" in json.loads(out)["rows"][0]

    def test_graded_envelope(self, capsys):
        code, out, _ = run(capsys, "codim", "--algebra", "metabelian", "--mode", "envelope-graded",
                           "--n", "3", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["mode"] == "envelope-graded"
        assert len(report["rows"][0]["graded_parts"]) == 4

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "metabelian.csv"
        code, out, err = run(capsys, "codim", "--algebra", "metabelian", "--n", "2..4", "--format", "csv",
                             "--out", str(path))
        assert code == 0
        assert out == ""
        assert "Wrote" in err
        assert path.read_text().splitlines()[0].startswith("n,c_n,l_n")

    def test_algebra_file(self, capsys, tmp_path):
        path = tmp_path / "metabelian.json"
        path.write_text(dump_algebra(builtin("metabelian")))
        code, out, _ = run(capsys, "codim", "--algebra", str(path), "--n", "4", "--format", "json")
        assert code == 0
        assert json.loads(out)["rows"][0]["c_n"] == "3"


class TestExitCodes:
    def test_unknown_builtin(self, capsys):
        assert run(capsys, "codim", "--algebra", "sl3")[0] == 1

    @pytest.mark.parametrize("degrees", ["5..2", "0..3", "two"])
    def test_bad_degree_range(self, capsys, degrees):
        assert run(capsys, "codim", "--algebra", "metabelian", "--n", degrees)[0] == 1

    def test_missing_algebra(self, capsys):
        code, _, err = run(capsys, "codim", "--n", "3")
        assert code == 1
        assert "--algebra" in err

    def test_unknown_option(self, capsys):
        assert run(capsys, "codim", "--algebra", "metabelian", "--colour")[0] == 1

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "codim", "--algebra", str(tmp_path / "missing.json"))[0] == 1

    def test_budget(self, capsys):
        code, _, err = run(capsys, "codim", "--algebra", "metabelian", "--n", "9")
        assert code == 3
        assert "--force" in err

    def test_envelope_without_grading(self, capsys):
        assert run(capsys, "codim", "--algebra", "heisenberg", "--target", "envelope", "--n", "2")[0] == 1


class TestCheck:
    def test_hooks_json(self, capsys):
        code, out, _ = run(capsys, "check", "--suite", "hooks", "--algebra", "sl2-trivial", "--n", "2..4",
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["suite"] == "hooks"
        assert len(payload["checks"]) == 3
        assert all(c["status"] == "pass" for c in payload["checks"])

    def test_duality(self, capsys):
        assert run(capsys, "check", "--suite", "duality", "--algebra", "metabelian", "--n", "2..3")[0] == 0

    def test_failure_exit_code(self, capsys, monkeypatch):
        def failing(suite, T, degrees, **kwargs):
            df = pd.DataFrame([{"suite": suite, "name": "sandwich", "n": 3, "status": "fail",
                                "detail": "", "witness": "c_3=9"}])
            return {"passed": False, "detailed_results": df, "total_checks": 1, "failures": 1}

        monkeypatch.setattr(cli, "evaluate_suite", failing)
        code, out, err = run(capsys, "check", "--suite", "bounds", "--algebra", "metabelian", "--n", "3",
                             "--format", "json")
        assert code == 2
        assert json.loads(out)["checks"][0]["witness"] == "c_3=9"
        assert "1 of 1" in err

    def test_missing_suite(self, capsys):
        assert run(capsys, "check", "--algebra", "metabelian")[0] == 1

    def test_force_lifts_budget(self, capsys, monkeypatch):
        monkeypatch.setattr(config, "BUDGET_MB", 0)
        argv = ["check", "--suite", "hooks", "--algebra", "metabelian", "--n", "3", "--format", "json"]
        code, _, err = run(capsys, *argv)
        assert code == 3
        assert "MB" in err
        code, out, _ = run(capsys, *argv, "--force")
        assert code == 0
        assert json.loads(out)["checks"][0]["status"] == "pass"

    def test_force_above_degree_budget(self, capsys, monkeypatch):
        monkeypatch.setattr(config, "MAX_N_ENVELOPE", 2)
        argv = ["check", "--suite", "hooks", "--algebra", "sl2-cartan", "--target", "envelope", "--n", "2..3"]
        assert run(capsys, *argv)[0] == 3
        code, _, err = run(capsys, *argv, "--force")
        assert code == 0
        assert "above the budget of 2" in err

    def test_info_records_do_not_fail(self, capsys):
        code, out, _ = run(capsys, "check", "--suite", "oracle", "--algebra", "sl2-cartan", "--target", "envelope",
                           "--n", "3", "--samples", "10", "--format", "json")
        assert code == 0
        statuses = {c["name"]: c["status"] for c in json.loads(out)["checks"]}
        assert statuses["spanning equivalence"] == "info"


class TestExponent:
    def test_metabelian(self, capsys):
        code, out, _ = run(capsys, "exponent", "--algebra", "metabelian", "--n", "2..5", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert [r["c_n"] for r in rows] == ["1", "2", "3", "4"]
        assert rows[0]["ratio"] == ""
        assert all(r["reference"] == 1 for r in rows)

    def test_reference_line(self, capsys):
        _, out, _ = run(capsys, "exponent", "--algebra", "sl2-trivial", "--n", "2..4")
        assert "reference exponent: 3" in out
        assert "not asserted" in out

    def test_hook_trend(self, capsys):
        code, out, _ = run(capsys, "exponent", "--hook", "1,1", "--n", "41", "--format", "json")
        assert code == 0
        [row] = json.loads(out)
        assert row["reference"] == 2
        assert abs(float(row["root"]) - 2) < 0.2

    def test_hook_skips_degrees(self, capsys):
        _, out, _ = run(capsys, "exponent", "--algebra", "metabelian", "--hook", "1,1", "--n", "1..9",
                        "--format", "json")
        assert [r["n"] for r in json.loads(out)] == [1, 3, 5, 7, 9]

    def test_hook_no_degree(self, capsys):
        assert run(capsys, "exponent", "--algebra", "metabelian", "--hook", "2,2", "--n", "5")[0] == 1

    def test_envelope_reference_line(self, capsys):
        code, out, _ = run(capsys, "exponent", "--algebra", "sl2-cartan", "--target", "envelope", "--n", "2..3")
        assert code == 0
        assert out.startswith("G(sl2-cartan) (envelope)")
        assert "reference exponent: 3" in out
