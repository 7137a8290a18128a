"""Tests for the spinor-lab command line."""

import json

import pytest

from spinor_lab.main import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, build_parser, main


def reject_constant(token):
    raise ValueError(f"non-standard JSON token {token}")


def read_records(path):
    return [
        json.loads(line, parse_constant=reject_constant)
        for line in path.read_text().splitlines()
    ]


@pytest.fixture
def small_sweep(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text(
        json.dumps(
            {
                "ranges": {
                    "b": 2.0,
                    "alpha1": {"min": 0.0, "max": 1.5, "step": 1.5},
                    "alpha2": 0.0,
                    "beta1": {"min": 0.0, "max": 1.0, "step": 0.2},
                    "beta2": {"min": 0.0, "max": 0.8, "step": 0.4},
                },
            }
        )
    )
    return path


class TestParser:
    def test_rejects_unknown_command(self):
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args(["explode"])
        assert excinfo.value.code == EXIT_USAGE

    def test_defaults(self):
        args = build_parser().parse_args(["verify"])
        assert args.b is None
        assert args.format is None

    def test_main_returns_usage_code(self, capsys):
        assert main(["explode"]) == EXIT_USAGE
        assert main(["verify", "--b", "two"]) == EXIT_USAGE
        assert "usage" in capsys.readouterr().err


@pytest.mark.integration
class TestVerify:
    def test_defaults_pass(self, tmp_path):
        out = tmp_path / "verify.jsonl"
        assert main(["verify", "--count", "6", "--out", str(out)]) == EXIT_PASS
        records = read_records(out)
        checks = {r["check"] for r in records}
        assert {"clifford", "lambda-equations-S", "lambda-equations-A"} <= checks
        assert {"majorana-decoupling", "sokolik-reduction", "klein-gordon-mass"} <= checks
        assert all(r["verdict"] != "fail" for r in records)
        assert all(r["fingerprint"]["version"] == 1 for r in records)

    def test_off_branch_fails(self, tmp_path):
        out = tmp_path / "verify.jsonl"
        assert main(["verify", "--b", "2.5", "--count", "4", "--out", str(out)]) == EXIT_FAIL
        records = {r["check"]: r for r in read_records(out)}
        assert records["lambda-equations-S"]["verdict"] == "fail"
        assert records["lambda-equations-S"]["residual"] == pytest.approx(0.5, rel=1e-9)
        assert records["klein-gordon-mass"]["verdict"] == "fail"

    def test_uncomputed_residuals_are_strict_json(self, tmp_path):
        out = tmp_path / "verify.jsonl"
        assert main(["verify", "--b", "1", "--count", "2", "--out", str(out)]) in (
            EXIT_PASS,
            EXIT_FAIL,
        )
        assert "Infinity" not in out.read_text()
        records = {r["check"]: r for r in read_records(out)}
        assert records["sokolik-reduction"]["verdict"] == "degenerate"
        assert records["sokolik-reduction"]["residual"] is None
        assert records["klein-gordon-mass"]["residual"] is None

    def test_complex_phase_breaks_majorana_pair(self, tmp_path):
        out = tmp_path / "verify.jsonl"
        main(["verify", "--alpha2", "0.7", "--count", "4", "--out", str(out)])
        record = {r["check"]: r for r in read_records(out)}["generalized-majorana-pair"]
        assert record["params"]["expected"] == "pair broken"
        assert record["params"]["deviation"] > 1e-6
        assert record["residual"] == 0.0
        assert record["verdict"] == "pass"

    def test_zero_a_is_usage_error(self):
        assert main(["verify", "--a", "0", "--count", "2"]) == EXIT_USAGE

    def test_missing_config(self, tmp_path):
        assert main(["verify", "--config", str(tmp_path / "absent.json")]) == EXIT_USAGE

    def test_deterministic(self, tmp_path):
        first, second = tmp_path / "one.jsonl", tmp_path / "two.jsonl"
        main(["verify", "--count", "4", "--seed", "3", "--out", str(first)])
        main(["verify", "--count", "4", "--seed", "3", "--out", str(second)])
        assert first.read_bytes() == second.read_bytes()

    def test_csv_to_stdout(self, capsys):
        assert main(["verify", "--count", "2", "--format", "csv"]) == EXIT_PASS
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "check,params,residual,verdict,fingerprint"
        assert len(lines) > 10

    def test_unwritable_output(self, tmp_path):
        out = tmp_path / "missing-dir" / "out.jsonl"
        assert main(["verify", "--count", "2", "--out", str(out)]) == EXIT_USAGE


@pytest.mark.integration
class TestSweep:
    def test_sweep_rows_and_boundary(self, small_sweep, tmp_path):
        out = tmp_path / "sweep.jsonl"
        assert main(["sweep", "--config", str(small_sweep), "--out", str(out)]) == EXIT_PASS
        records = read_records(out)
        rows = [r for r in records if r["check"] == "compatibility"]
        assert len(rows) == 2 * 6 * 3
        consistent = {
            (round(r["params"]["beta1"], 6), round(r["params"]["beta2"], 6))
            for r in rows
            if r["params"]["consistent"]
        }
        assert consistent == {(0.6, 0.8), (1.0, 0.0)}
        assert all(r["params"]["kernel_dim"] == 2 for r in rows if r["params"]["consistent"])
        boundary = [r for r in records if r["check"] == "compatibility-boundary"]
        assert len(boundary) == 1
        assert boundary[0]["params"]["fitted_radius_squared"] == pytest.approx(1.0)

    def test_row_residual_decides_verdict(self, tmp_path):
        path = tmp_path / "pinned.json"
        path.write_text(json.dumps({"ranges": {"b": 2.0, "beta1": 1.0, "beta2": 1.0}}))
        out = tmp_path / "sweep.jsonl"
        assert main(["sweep", "--config", str(path), "--out", str(out)]) == EXIT_PASS
        (row,) = [r for r in read_records(out) if r["check"] == "compatibility"]
        assert not row["params"]["consistent"]
        assert row["params"]["constraint_gap"] > 0.1
        assert row["residual"] == 0.0
        assert row["verdict"] == "pass"

    def test_worker_count_does_not_change_output(self, small_sweep, tmp_path):
        one, four = tmp_path / "one.jsonl", tmp_path / "four.jsonl"
        main(["sweep", "--config", str(small_sweep), "--out", str(one)])
        main(["sweep", "--config", str(small_sweep), "--workers", "4", "--out", str(four)])
        assert one.read_bytes() == four.read_bytes()

    def test_empty_grid(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"ranges": {"b": {"min": 2.0, "max": 1.0, "step": 0.5}}}))
        assert main(["sweep", "--config", str(path)]) == EXIT_USAGE


@pytest.mark.integration
class TestDispersion:
    def test_dispersion_records(self, tmp_path):
        out = tmp_path / "dispersion.jsonl"
        assert main(["dispersion", "--a", "2", "--b", "5", "--out", str(out)]) == EXIT_PASS
        records = {r["check"]: r for r in read_records(out)}
        assert records["dispersion-equation"]["params"]["roots"] == pytest.approx([4.0])
        assert records["dispersion-barut"]["params"]["roots"] == pytest.approx([4.0, 9.0])

    def test_massless_is_degenerate(self, tmp_path):
        out = tmp_path / "dispersion.jsonl"
        assert main(["dispersion", "--b", "1", "--out", str(out)]) == EXIT_PASS
        records = {r["check"]: r for r in read_records(out)}
        assert records["dispersion-equation"]["verdict"] == "degenerate"
        assert "massless-degenerate" in records["dispersion-equation"]["params"]["flags"]

    def test_zero_a(self):
        assert main(["dispersion", "--a", "0"]) == EXIT_USAGE
