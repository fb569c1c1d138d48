"""CLI surface: records, exit codes, figure CSVs, config files, round trips."""
import json
import math
import os
import stat
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from levylab.cli import main
from levylab.oracle import f_closed_form


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out.strip().splitlines()
    return code, out


class TestEval:
    def test_golden_efficiency_record(self, capsys):
        code, out = run_cli(["eval", "--functional", "J", "--shape",
                             "interval:-1,1", "--s", "0.5", "--T", "1"], capsys)
        assert code == 0
        rec = json.loads(out[-1])
        assert rec["functional"] == "J"
        assert rec["value"] == pytest.approx(0.3238932817194561877, rel=1e-10)
        assert rec["params"]["shape"] == "interval:-1,1"

    def test_jinf_divergence_exit_code(self, capsys):
        code, out = run_cli(["eval", "--functional", "Jinf", "--R", "1",
                             "--r", "1", "--s", "0.6"], capsys)
        assert code == 3
        rec = json.loads(out[-1])
        assert "diverges" in rec["error"]

    def test_overlap(self, capsys):
        code, out = run_cli(["eval", "--functional", "overlap",
                             "--omega1", "interval:-1,1",
                             "--omega2", "interval:-1,1"], capsys)
        assert code == 0
        assert json.loads(out[-1])["value"] == 0.5

    def test_bad_shape_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--functional", "J", "--shape", "triangle:1,2"])
        assert exc.value.code == 2

    def test_round_trip_reproducibility(self, capsys):
        args = ["eval", "--functional", "J", "--band", "0.0,0.3",
                "--s", "0.62", "--T", "2.5"]
        _, out1 = run_cli(args, capsys)
        rec = json.loads(out1[-1])
        # rebuild the command from the emitted params
        args2 = ["eval", "--functional", "J",
                 "--band", f"{rec['params']['band_center']},{rec['params']['band_half_width']}",
                 "--s", str(rec["params"]["s"]), "--T", str(rec["params"]["T"])]
        _, out2 = run_cli(args2, capsys)
        assert json.loads(out2[-1])["value"] == rec["value"]


@pytest.fixture(scope="module")
def outdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("figs")
    code = main(["figure", "all", "--out-dir", str(d)])
    assert code == 0
    return d


class TestFigures:

    def test_all_files_present(self, outdir):
        names = {p.name for p in outdir.iterdir()}
        assert names == {
            "fig2_a0.08.csv", "fig2_a0.3.csv", "fig2_a2.csv",
            "fig3_r0.csv", "fig3_r0.16.csv", "fig3_r3.csv",
            "fig4_a0.035.csv", "fig4_a0.1.csv", "fig4_a0.5.csv",
            "fig5_T1.csv", "fig5_T1e8.csv", "fig6_L.csv",
        }

    def test_headers_stable(self, outdir):
        def header(name):
            for line in (outdir / name).read_text().splitlines():
                if not line.startswith("#"):
                    return line
        assert header("fig2_a0.08.csv") == "s,value"
        assert header("fig3_r3.csv") == "s,value"
        assert header("fig4_a0.5.csv") == "xi,value"
        assert header("fig5_T1.csv") == "s,value"
        assert header("fig6_L.csv") == "s,r,value"

    def test_fig2_monotonicities(self, outdir):
        inc = np.loadtxt(outdir / "fig2_a0.08.csv", delimiter=",", comments=["#", "s"])
        dec = np.loadtxt(outdir / "fig2_a2.csv", delimiter=",", comments=["#", "s"])
        assert np.all(np.diff(inc[:, 1]) > 0)
        assert np.all(np.diff(dec[:, 1]) < 0)
        assert len(inc) >= 64

    def test_fig4_value_four_at_zero(self, outdir):
        for name in ("fig4_a0.035.csv", "fig4_a0.1.csv", "fig4_a0.5.csv"):
            d = np.loadtxt(outdir / name, delimiter=",", comments=["#", "x"])
            assert d[0, 0] == 0.0 and d[0, 1] == 4.0

    def test_fig6_direction_flip(self, outdir):
        d = np.loadtxt(outdir / "fig6_L.csv", delimiter=",", comments=["#", "s"])
        r = np.unique(d[:, 1])
        L = d[:, 2].reshape(len(r), -1)
        inc_rows = [np.all(np.diff(row) > 0) for row in L]
        dec_rows = [np.all(np.diff(row) < 0) for row in L]
        assert inc_rows[0] and any(dec_rows)

    def test_deterministic_output(self, outdir, tmp_path):
        assert main(["figure", "fig4", "--out-dir", str(tmp_path)]) == 0
        a = (tmp_path / "fig4_a0.5.csv").read_bytes()
        b = (outdir / "fig4_a0.5.csv").read_bytes()
        assert a == b

    def test_lf_line_endings_and_digits(self, outdir):
        raw = (outdir / "fig2_a0.08.csv").read_bytes()
        assert b"\r" not in raw
        first_row = raw.decode().splitlines()[4].split(",")
        assert len(first_row[0]) >= 4  # 17 significant digits requested

    def test_write_failure_exit_4(self, tmp_path, capsys):
        blocker = tmp_path / "blocked"
        blocker.write_text("not a directory")
        code = main(["figure", "fig4", "--out-dir", str(blocker / "sub")])
        assert code == 4


class TestSweep:
    def test_sweep_csv_and_rerun_identical(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        args = ["sweep", "--functional", "Junnorm", "--band", "0.0,0.08",
                "--T", "1", "--s-grid", "0.05:0.95:19", "--out", str(out)]
        assert main(args) == 0
        first = out.read_bytes()
        assert main(args) == 0
        assert out.read_bytes() == first
        data = np.loadtxt(out, delimiter=",", comments=["#", "s"])
        assert data.shape == (19, 3)
        assert np.all(np.diff(data[:, 1]) > 0)      # increasing panel
        assert np.all(data[:, 2] > 0)               # analytic derivative sign
        header = [l for l in out.read_text().splitlines()
                  if not l.startswith("#")][0]
        assert header == "s,value,derivative"

    def test_provenance_comments(self, tmp_path):
        out = tmp_path / "s.csv"
        main(["sweep", "--functional", "Jinf", "--R", "1", "--r", "1.5",
              "--s-grid", "0.05:0.45:9", "--out", str(out)])
        text = out.read_text()
        assert "# functional = Jinf" in text
        assert "# r = 1.5" in text


class TestOptimizeThresholdsOracle:
    def test_optimize_reports_interior_min(self, capsys):
        code, out = run_cli(["optimize", "--min", "--shape", "interval:-1,1",
                             "--r", "0.01", "--T", "1e6"], capsys)
        assert code == 0
        rec = json.loads(out[-1])
        assert rec["classification"] == "interior"
        assert rec["bracket"][0] <= rec["location"] <= rec["bracket"][1]

    def test_thresholds_record(self, capsys):
        code, out = run_cli(["thresholds", "--R", "1", "--sigma", "0.25"], capsys)
        assert code == 0
        rec = json.loads(out[-1])
        assert rec["r_Omega"] == pytest.approx(math.exp(f_closed_form(0.0)), rel=1e-8)
        assert rec["r_sigma_Omega"] == pytest.approx(
            math.exp(f_closed_form(0.25)), rel=1e-8)

    def test_oracle_all_passes(self, capsys):
        code, out = run_cli(["oracle", "--all"], capsys)
        assert code == 0
        assert all(line.startswith("PASS") for line in out[:-1])


class TestConfigFile:
    def test_config_seeds_options(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("functional = J\nshape = interval:-1,1\ns = 0.5\nT = 1\n")
        code, out = run_cli(["eval", "--config", str(cfg)], capsys)
        assert code == 0
        assert json.loads(out[-1])["value"] == pytest.approx(
            0.3238932817194562, rel=1e-10)

    def test_cli_overrides_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("functional = J\nshape = interval:-1,1\ns = 0.5\nT = 1\n")
        code, out = run_cli(["eval", "--config", str(cfg), "--T", "1e-9"], capsys)
        rec = json.loads(out[-1])
        assert rec["value"] == pytest.approx(0.5, rel=1e-6)

    def test_unknown_key_rejected_with_line(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("functional = J\nbogus_key = 7\n")
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--config", str(cfg)])
        assert exc.value.code == 2
        err = capsys.readouterr().err
        assert ":2:" in err and "bogus_key" in err

    def test_malformed_line_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("functional J\n")
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--config", str(cfg)])
        assert exc.value.code == 2


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "levylab", "eval", "--functional", "overlap",
             "--omega1", "interval:0,1", "--omega2", "interval:2,3"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout.splitlines()[-1])["value"] == 0.0

    def test_threads_env_respected(self):
        env = dict(os.environ, LEVY_LAB_THREADS="1")
        proc = subprocess.run(
            [sys.executable, "-m", "levylab", "sweep", "--functional", "Jinf",
             "--R", "1", "--r", "1.5", "--s-grid", "0.05:0.45:17",
             "--out", "/tmp/_lvl_sweep_env.csv"],
            capture_output=True, text=True, env=env)
        assert proc.returncode == 0


class TestMoreFunctionals:
    def test_eval_ball_shape(self, capsys):
        code, out = run_cli(["eval", "--functional", "J", "--shape", "ball:3,1",
                             "--s", "0.5", "--T", "1"], capsys)
        assert code == 0
        rec = json.loads(out[-1])
        assert 0.0 < rec["value"] <= 3.0 / (4.0 * math.pi) + 1e-10

    def test_eval_g_matches_long_time_scale(self, capsys):
        # T g(s, r=1, T) approaches J_inf: a cheap CLI-level coherence check
        code, out = run_cli(["eval", "--functional", "g", "--shape",
                             "interval:-1,1", "--s", "0.25", "--T", "1e4"], capsys)
        rec = json.loads(out[-1])
        jinf = 16.0 / (3.0 * math.sqrt(math.pi))
        assert 1e4 * rec["value"] == pytest.approx(jinf, rel=1e-3)

    def test_eval_L(self, capsys):
        code, out = run_cli(["eval", "--functional", "L", "--s", "0.3",
                             "--r", "0.16"], capsys)
        assert code == 0
        assert json.loads(out[-1])["value"] > 0

    def test_fig3_edge_panels_monotone(self, outdir):
        inc = np.loadtxt(outdir / "fig3_r0.csv", delimiter=",", comments=["#", "s"])
        dec = np.loadtxt(outdir / "fig3_r3.csv", delimiter=",", comments=["#", "s"])
        assert np.all(np.diff(inc[:, 1]) > 0)
        assert np.all(np.diff(dec[:, 1]) < 0)

    def test_sweep_out_of_domain_points_recorded(self, tmp_path, capsys):
        out = tmp_path / "jinf.csv"
        code, lines = run_cli(["sweep", "--functional", "Jinf", "--R", "1",
                               "--r", "1", "--s-grid", "0.1:0.9:9",
                               "--out", str(out)], capsys)
        assert code == 0
        rec = json.loads(lines[-1])
        assert len(rec["failures"]) == 5  # s >= 1/2 grid points
        data = np.loadtxt(out, delimiter=",", comments=["#", "s"])
        assert data.shape[0] == 9
        assert np.isnan(data[:, 1]).sum() == 5


class TestGoldenFileStability:
    def test_fig_csv_bytes_match_committed_golden(self, outdir):
        golden = (Path(__file__).resolve().parent.parent
                  / "frontend" / "golden_csv")
        for name in ("fig4_a0.5.csv", "fig2_a0.08.csv", "fig6_L.csv"):
            assert (outdir / name).read_bytes() == (golden / name).read_bytes()
