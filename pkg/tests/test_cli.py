import importlib
import json
import math

import numpy as np
import pandas as pd
import pytest

from subspace.bounds import BoundKind
from subspace.cli import CurveGrid, cmd_constants, cmd_curves, main
from subspace.io import write_matrix
from subspace.lab import Layout, PerturbationKind, VerificationReport, build_perturbation, make_scenario
from subspace.lab.scenarios import assemble
from subspace.lab.verify import trial_seeds
from subspace.linalg import HermitianMatrix
from subspace.utils.errors import ConvergenceError

cli_module = importlib.import_module("subspace.cli.main")


def usage_error(argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    return e.value.code


def load(path):
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture
def matrices(tmp_path):
    def _write(a, v):
        pa, pv = tmp_path / "a.mat", tmp_path / "v.mat"
        write_matrix(HermitianMatrix(a), str(pa))
        write_matrix(HermitianMatrix(v), str(pv))
        return ["--a", str(pa), "--v", str(pv)]

    return _write


class TestCurveGrid:
    def test_valid(self):
        grid = CurveGrid(0.0, 0.69, 4, (BoundKind.KMM,))
        assert np.allclose(grid.abscissae(), [0.0, 0.23, 0.46, 0.69])

    @pytest.mark.parametrize(
        "args", [(0.3, 0.2, 10), (0.0, 0.9, 10), (-0.1, 0.5, 10), (0.0, 0.5, 1)]
    )
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            CurveGrid(*args, (BoundKind.KMM,))


class TestCurves:
    def test_scaled_table(self):
        df = cmd_curves(CurveGrid(0.0, 0.69, 12, (BoundKind.OFF_OPT, BoundKind.MS, BoundKind.KMM)))
        assert list(df.columns) == ["x", "off_opt", "ms", "kmm"]
        assert (df.iloc[0, 1:] == 0).all()
        assert (df["off_opt"] <= df["ms"] + 1e-9).all()
        assert (df["ms"] <= df["kmm"] + 1e-9).all()
        assert df["kmm"].iloc[-1] == 1.0

    def test_empty_cells(self):
        df = cmd_curves(CurveGrid(0.0, 0.6, 5, (BoundKind.GENERIC_SIN2,)), raw=True)
        assert df["generic_sin2"].isna().sum() == 2
        assert df["generic_sin2"].iloc[1] == pytest.approx(0.5 * math.asin(0.15 * math.pi))

    def test_command_is_reproducible(self, tmp_path):
        first, second = tmp_path / "1.csv", tmp_path / "2.csv"
        for path in (first, second):
            code = main(["--quiet", "curves", "--points", "30", "--functions", "ms,kmm", "--out", str(path)])
            assert code == 0
        assert first.read_bytes() == second.read_bytes()
        header = first.read_text(encoding="utf-8").splitlines()[0]
        assert header == "x,ms,kmm"

    def test_bad_grid(self):
        assert usage_error(["curves", "--grid-max", "0.9"]) == 2
        assert usage_error(["curves", "--functions", "nope"]) == 2

    def test_near_singular_edge(self, tmp_path):
        path = tmp_path / "edge.csv"
        argv = [
            "--quiet", "curves", "--grid-min", "0.8", "--grid-max", "0.86", "--points", "4",
            "--functions", "kmm,ms", "--raw-radians", "--out", str(path),
        ]
        assert main(argv) == 0
        df = pd.read_csv(path)
        assert (df["ms"] == math.pi / 2).all() and (df["kmm"] == math.pi / 2).all()

    def test_errors_exit_one(self, monkeypatch):
        def fail(*args, **kwargs):
            raise ConvergenceError("no luck")

        monkeypatch.setattr(cli_module, "cmd_curves", fail)
        assert main(["--quiet", "curves", "--points", "5"]) == 1

    @pytest.mark.slow
    def test_curve_ordering(self, tmp_path):
        path = tmp_path / "curves.csv"
        assert main(["--quiet", "curves", "--points", "200", "--out", str(path)]) == 0
        df = pd.read_csv(path)
        assert len(df) == 200
        for col in ("off_opt", "ms", "kmm"):
            assert df[col].iloc[0] == 0
            assert (df[col].diff().dropna() >= -1e-9).all()
        assert (df["off_opt"] <= df["ms"] + 1e-9).all()
        assert (df["ms"] <= df["kmm"] + 1e-9).all()


class TestConstants:
    def test_errors_are_reported_per_constant(self, monkeypatch):
        def fail(*args, **kwargs):
            raise ConvergenceError("no luck")

        monkeypatch.setattr(cli_module, "solve_threshold", fail)
        doc, complete = cmd_constants()
        constants = doc["constants"]
        assert not complete
        assert constants["c_s"]["value"] == pytest.approx(0.454839, abs=1e-6)
        assert constants["off_threshold"]["value"] is None
        assert constants["off_threshold"]["error"] == "no luck"
        assert constants["ms_threshold"]["value"] == pytest.approx(0.67598, abs=1e-4)
        assert constants["kmm_saturation"]["value"] == pytest.approx(0.5033, abs=1e-4)

    @pytest.mark.slow
    def test_command(self, tmp_path):
        path = tmp_path / "constants.json"
        assert main(["--quiet", "constants", "--out", str(path)]) == 0
        constants = load(path)["constants"]
        assert constants["c_s"]["value"] == pytest.approx(0.454839, abs=1e-6)
        assert constants["ms_threshold"]["value"] == pytest.approx(0.67598, abs=1e-4)
        assert constants["off_threshold"]["value"] >= 0.6920
        assert constants["off_threshold_capped"]["value"] == pytest.approx(0.692834, abs=2e-3)
        assert abs(constants["generic_threshold"]["value"] - constants["c_s"]["value"]) <= 5e-3


class TestVerify:
    def test_ground_state(self, tmp_path):
        out, csv = tmp_path / "report.json", tmp_path / "trials.csv"
        argv = [
            "--quiet", "verify", "--layout", "ground-state", "--kind", "generic",
            "--strength", "0.4", "--trials", "50", "--seed", "7",
            "--out", str(out), "--csv", str(csv),
        ]
        assert main(argv) == 0
        doc = load(out)
        assert doc["trials"] == 50 and doc["aggregates"]["failures"] == 0
        assert len(pd.read_csv(csv)) == 50

    def test_subordinated_gap(self, tmp_path):
        out = tmp_path / "report.json"
        argv = [
            "--quiet", "verify", "--layout", "subordinated", "--kind", "off-diagonal",
            "--strength", "5.0", "--trials", "30", "--seed", "3", "--out", str(out),
        ]
        assert main(argv) == 0
        assert all(r["gap_ok"] for r in load(out)["records"])

    def test_suite(self, tmp_path):
        out = tmp_path / "suite.json"
        argv = [
            "--quiet", "verify", "--suite", "--layout", "interlaced", "--kind", "off-diagonal",
            "--trials", "20", "--dim", "9", "--out", str(out),
        ]
        assert main(argv) == 0
        assert {r["dim"] for r in load(out)["records"]} == {9}

    def test_failed_trials_exit_one(self, tmp_path, monkeypatch):
        monkeypatch.setattr(VerificationReport, "passed", property(lambda self: False))
        argv = ["--quiet", "verify", "--strength", "0.1", "--trials", "2", "--out", str(tmp_path / "r.json")]
        assert main(argv) == 1

    def test_strength_near_edge(self, tmp_path):
        out = tmp_path / "edge.json"
        argv = [
            "--quiet", "verify", "--layout", "interlaced", "--kind", "off-diagonal",
            "--strength", "0.86", "--trials", "3", "--seed", "5", "--out", str(out),
        ]
        assert main(argv) == 0
        bounds = load(out)["records"][0]["bounds"]
        assert [b["value"] for b in bounds if b["kind"] == "ms"] == [math.pi / 2]

    @pytest.mark.parametrize("suite", [False, True])
    def test_trial_errors_exit_one(self, tmp_path, monkeypatch, suite):
        def fail(*args, **kwargs):
            raise ConvergenceError("no luck")

        monkeypatch.setattr(cli_module, "verify_bounds", fail)
        monkeypatch.setattr(cli_module, "verify_regime", fail)
        argv = ["--quiet", "verify", "--trials", "2", "--out", str(tmp_path / "r.json")]
        argv += ["--suite"] if suite else ["--strength", "0.1"]
        assert main(argv) == 1
        assert not (tmp_path / "r.json").exists()

    @pytest.mark.parametrize(
        "argv",
        [
            ["verify", "--strength", "0.6", "--kind", "generic"],
            ["verify", "--kind", "generic"],
            ["verify", "--strength", "0.1", "--trials", "0"],
            ["verify", "--strength", "0.1", "--layout", "interlaced", "--dim", "2"],
            ["verify", "--layout", "sideways", "--strength", "0.1"],
            ["--workers", "0", "verify", "--strength", "0.1"],
        ],
    )
    def test_usage_errors(self, argv):
        assert usage_error(argv) == 2

    @pytest.mark.slow
    def test_thousand_trials(self, tmp_path):
        argv = [
            "--quiet", "--solver", "lapack", "verify", "--layout", "ground-state", "--kind", "generic",
            "--strength", "0.4", "--trials", "1000", "--seed", "7", "--out", str(tmp_path / "r.json"),
        ]
        assert main(argv) == 0


class TestBound:
    def test_zero_perturbation(self, tmp_path, matrices):
        out = tmp_path / "bound.json"
        files = matrices(np.diag([0.0, 1.0, 3.0]), np.zeros((3, 3)))
        assert main(["--quiet", "bound", *files, "--sigma", "0", "--out", str(out)]) == 0
        doc = load(out)
        assert doc["theta"] == 0
        assert doc["regime"]["perturbation"] == "off-diagonal"
        assert all(b["margin"] == b["value"] for b in doc["bounds"])

    def test_sharp_rotation(self, tmp_path, matrices):
        out = tmp_path / "bound.json"
        files = matrices(np.diag([0.0, 1.0]), [[0, 0.2], [0.2, 0]])
        assert main(["--quiet", "bound", *files, "--sigma", "0", "--out", str(out)]) == 0
        doc = load(out)
        assert doc["regime"]["layout"] == "subordinated"
        assert doc["theta"] == pytest.approx(0.5 * math.atan(0.4), abs=1e-12)
        tan2 = [b for b in doc["bounds"] if b["kind"] == "dk_tan2"][0]
        assert abs(tan2["margin"]) <= 1e-10
        assert doc["tightest"] == "dk_tan2"

    def test_interval_sigma(self, tmp_path, matrices):
        out = tmp_path / "bound.json"
        files = matrices(np.diag([0.0, 1.0, 2.0]), np.zeros((3, 3)))
        assert main(["--quiet", "bound", *files, "--sigma", "0.5:1.5", "--out", str(out)]) == 0
        assert load(out)["sigma"] == [1]

    def test_no_applicable_bound(self, tmp_path, matrices):
        files = matrices(np.diag([0.0, 1.0]), [[0.6, 0.1], [0.1, -0.2]])
        assert main(["--quiet", "bound", *files, "--sigma", "0", "--out", str(tmp_path / "b.json")]) == 1

    def test_bad_files(self, tmp_path):
        missing = str(tmp_path / "missing.mat")
        assert main(["--quiet", "bound", "--a", missing, "--v", missing, "--sigma", "0"]) == 1

    def test_bad_sigma(self, matrices):
        files = matrices(np.diag([0.0, 1.0]), np.zeros((2, 2)))
        assert usage_error(["bound", *files, "--sigma", "a:b"]) == 2

    def test_agrees_with_verify(self, tmp_path, matrices):
        report_path, bound_path = tmp_path / "verify.json", tmp_path / "bound.json"
        argv = [
            "--quiet", "verify", "--layout", "ground-state", "--kind", "generic",
            "--strength", "0.3", "--trials", "1", "--seed", "11", "--dim", "5",
            "--out", str(report_path),
        ]
        assert main(argv) == 0
        spec = make_scenario(Layout.GROUND_STATE, PerturbationKind.GENERIC, 0.3, 5, trial_seeds(11, 1)[0])
        a, partition, p = assemble(spec)
        files = matrices(a.entries, build_perturbation(spec, p).entries)
        sigma = ",".join(str(k) for k in partition.sigma)
        assert main(["--quiet", "bound", *files, "--sigma", sigma, "--out", str(bound_path)]) == 0
        record, doc = load(report_path)["records"][0], load(bound_path)
        assert doc["theta"] == pytest.approx(record["theta"], abs=1e-9)
        verified = {b["kind"]: b["value"] for b in record["bounds"]}
        shared = [b for b in doc["bounds"] if b["kind"] in verified]
        assert {b["kind"] for b in shared} >= {"generic_sin2", "gen_opt"}
        for b in shared:
            assert b["value"] == pytest.approx(verified[b["kind"]], abs=1e-9)
