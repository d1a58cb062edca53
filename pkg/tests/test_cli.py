import json
import math

import pytest

from scallop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMinTime:
    def test_theta1_run_writes_everything(self, tmp_path, capsys):
        out = tmp_path / "run"
        code, stdout, _ = run(
            capsys, "min-time", "--theta1", str(math.pi / 3), "--out", str(out)
        )
        assert code == 0
        assert "PASS:" in stdout
        for name in (
            "solution.json",
            "profile.json",
            "trajectory.csv",
            "events.csv",
            "trajectory_theta.svg",
            "trajectory_x.svg",
        ):
            assert (out / name).exists()
        doc = json.loads((out / "solution.json").read_text())
        assert doc["case_label"] == "open_then_close"
        assert doc["cycles"] == 1

    def test_dx_target_plans_cycles(self, tmp_path, capsys):
        out = tmp_path / "run"
        code, stdout, _ = run(capsys, "min-time", "--dx", "10", "--out", str(out))
        assert code == 0
        doc = json.loads((out / "solution.json").read_text())
        assert doc["cycles"] == 2
        assert doc["expected_dx"] == pytest.approx(-10.0)
        assert "PASS:" in stdout

    def test_k_emits_approximation_artifacts(self, tmp_path, capsys):
        out = tmp_path / "run"
        code, _, _ = run(
            capsys,
            "min-time",
            "--theta1", str(math.pi / 3),
            "--k", "10",
            "--out", str(out),
        )
        assert code == 0
        assert (out / "approx_solution.json").exists()
        conv = (out / "convergence.csv").read_text().splitlines()
        assert conv[0] == "k,t_f_k,t_f_gap,l1_gap,sup_theta_gap"
        assert len(conv) == 6  # k, 2k, 4k, 8k, 16k

    def test_outputs_are_byte_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            code, _, _ = run(
                capsys, "min-time", "--dx", "4", "--k", "20", "--out", str(out)
            )
            assert code == 0
        for name in (
            "solution.json",
            "profile.json",
            "approx_solution.json",
            "trajectory.csv",
            "events.csv",
            "convergence.csv",
        ):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_conflicting_angle_flags(self, tmp_path, capsys):
        code, _, _ = run(
            capsys, "min-time", "--theta1", "1.0", "--dx", "5", "--out", str(tmp_path)
        )
        assert code == 1

    def test_missing_angle_flags(self, tmp_path, capsys):
        code, _, _ = run(capsys, "min-time", "--out", str(tmp_path))
        assert code == 1

    def test_degrees(self, tmp_path, capsys):
        out = tmp_path / "run"
        code, _, _ = run(
            capsys,
            "min-time",
            "--theta0", "30",
            "--theta1", "60",
            "--degrees",
            "--format", "json",
            "--out", str(out),
        )
        assert code == 0
        doc = json.loads((out / "solution.json").read_text())
        assert doc["theta1"] == pytest.approx(math.pi / 3)
        assert not (out / "trajectory.csv").exists()

    def test_params_file(self, tmp_path, capsys):
        pfile = tmp_path / "params.txt"
        pfile.write_text("a 10\nb 0.1\nxi 1\neta 2\nm 1\n")
        out = tmp_path / "run"
        code, stdout, _ = run(
            capsys,
            "min-time",
            "--theta1", str(math.pi / 3),
            "--params", str(pfile),
            "--format", "json",
            "--out", str(out),
        )
        assert code == 0 and "PASS:" in stdout

    def test_bad_params_file(self, tmp_path, capsys):
        pfile = tmp_path / "params.txt"
        pfile.write_text("a 10\nwhat 3\n")
        code, _, err = run(
            capsys, "min-time", "--theta1", "1.0", "--params", str(pfile), "--out", str(tmp_path)
        )
        assert code == 1
        assert "error:" in err


class TestLq:
    def test_mixed_case_instance(self, tmp_path, capsys):
        out = tmp_path / "run"
        code, stdout, _ = run(
            capsys,
            "lq",
            "--theta0", "0.05",
            "--theta1", "0.5",
            "--A", "1", "--B", "1",
            "--out", str(out),
        )
        assert code == 0 and "PASS:" in stdout
        doc = json.loads((out / "solution.json").read_text())
        assert doc["case_label"] == "SaturatedThenExponential"
        assert doc["t_f"] == pytest.approx(4.5 + math.log(10.0))

    def test_b_zero_records_equivalence(self, tmp_path, capsys):
        out = tmp_path / "run"
        code, _, _ = run(
            capsys,
            "lq",
            "--theta1", str(math.pi / 3),
            "--A", "2", "--B", "0",
            "--format", "json",
            "--out", str(out),
        )
        assert code == 0
        doc = json.loads((out / "solution.json").read_text())
        assert doc["b_zero_equivalent_to_min_time"] is True

    def test_unhandled_case_exits_one(self, tmp_path, capsys):
        code, _, err = run(
            capsys,
            "lq",
            "--theta0", "0.05",
            "--theta1", "0.08",
            "--A", "1", "--B", "1",
            "--out", str(tmp_path),
        )
        assert code == 1
        assert "error:" in err


class TestSweep:
    def test_default_reproduces_the_cost_tradeoff(self, tmp_path, capsys):
        out = tmp_path / "run"
        code, stdout, _ = run(capsys, "sweep", "--out", str(out))
        assert code == 0
        lines = (out / "sweep.csv").read_text().splitlines()
        assert lines[0] == "n,theta1,per_cycle_time,per_cycle_energy,total_time,J_n"
        assert len(lines) == 31
        assert "min_n J^n" in stdout
        assert "PASS:" in stdout
        assert (out / "sweep_time.svg").exists()
        assert (out / "sweep_cost.svg").exists()
        # n=1 cannot reach the default distance: its row is empty of numbers
        assert "nan" in lines[1]

    def test_small_target_reports_the_bound(self, tmp_path, capsys):
        out = tmp_path / "run"
        code, stdout, _ = run(capsys, "sweep", "--dx", "2", "--n-max", "6", "--out", str(out))
        assert code == 0
        assert "min <= bound: True" in stdout

    def test_unreachable_target_exits_one(self, tmp_path, capsys):
        code, _, err = run(capsys, "sweep", "--dx", "1e9", "--out", str(tmp_path))
        assert code == 1
        assert "error:" in err

    def test_csv_is_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            code, _, _ = run(capsys, "sweep", "--n-max", "8", "--out", str(out))
            assert code == 0
        assert (a / "sweep.csv").read_bytes() == (b / "sweep.csv").read_bytes()


class TestSimulate:
    def make_profile(self, tmp_path, capsys):
        out = tmp_path / "synth"
        code, _, _ = run(
            capsys, "min-time", "--theta1", str(math.pi / 3), "--format", "json", "--out", str(out)
        )
        assert code == 0
        return out / "profile.json"

    def test_roundtrip(self, tmp_path, capsys):
        prof = self.make_profile(tmp_path, capsys)
        out = tmp_path / "sim"
        code, stdout, _ = run(capsys, "simulate", "--profile", str(prof), "--out", str(out))
        assert code == 0
        assert "displacement" in stdout
        assert (out / "trajectory.csv").exists()
        assert (out / "events.csv").exists()

    def test_expected_dx_verification(self, tmp_path, capsys):
        prof = self.make_profile(tmp_path, capsys)
        out = tmp_path / "sim"
        code, stdout, _ = run(
            capsys,
            "simulate",
            "--profile", str(prof),
            "--expected-dx", "-4.53097888705375",
            "--format", "csv",
            "--out", str(out),
        )
        assert code == 0 and "PASS:" in stdout

    def test_wrong_expectation_exits_two(self, tmp_path, capsys):
        prof = self.make_profile(tmp_path, capsys)
        code, stdout, _ = run(
            capsys,
            "simulate",
            "--profile", str(prof),
            "--expected-dx", "3.0",
            "--format", "csv",
            "--out", str(tmp_path / "sim"),
        )
        assert code == 2 and "FAIL:" in stdout

    def test_bound_violating_profile_exits_one(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        doc = {
            "segments": [
                {"t0": 0.0, "t1": 1.0, "kind": "constant", "params": {"c": 0.5}}
            ],
            "eps": 0.1,
            "u0": 0.5,
            "declared_switches": [],
            "continuous": False,
        }
        bad.write_text(json.dumps(doc))
        code, _, err = run(
            capsys, "simulate", "--profile", str(bad), "--out", str(tmp_path / "sim")
        )
        assert code == 1
        assert "error:" in err

    def test_missing_profile_file(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "simulate", "--profile", str(tmp_path / "nope.json"), "--out", str(tmp_path)
        )
        assert code == 1


def test_unknown_format_rejected(tmp_path, capsys):
    code, _, err = run(
        capsys, "min-time", "--theta1", "1.0", "--format", "pdf", "--out", str(tmp_path)
    )
    assert code == 1
    assert "error:" in err


def test_svg_points_mirror_the_csv(tmp_path, capsys):
    out = tmp_path / "run"
    code, _, _ = run(capsys, "sweep", "--n-max", "6", "--out", str(out))
    assert code == 0
    svg = (out / "sweep_cost.svg").read_text()
    rows = (out / "sweep.csv").read_text().splitlines()[1:]
    finite = [r.split(",") for r in rows if "nan" not in r]
    assert finite
    for cols in finite:
        # the plot markers carry the same floats as the table rows
        assert f'data-x="{float(cols[0])!r}"' in svg
        assert f'data-y="{cols[5]}"' in svg
