import csv
import io
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from icvar.cli import main
from icvar.config import RunConfig, apply_settings, load_config, read_config_text
from icvar.crisp import build_model1, build_model2
from icvar.errors import ConfigError
from icvar.interval import Interval
from icvar.portfolio import estimate_panel, model_one_spec, model_two_spec
from icvar.report import caps_from_report, round_weights
from icvar.returns import load_panel

from conftest import DATA, GOLDEN

CFG1 = os.path.join(DATA, "model1.cfg")
CFG2 = os.path.join(DATA, "model2.cfg")


def write_synthetic(tmp_path, n_assets=2, days=60, seed=0):
    rng = np.random.default_rng(seed)
    paths = {}
    for a in range(n_assets):
        path = tmp_path / f"A{a}.csv"
        close = 20.0
        lines = ["date,close,high,low"]
        for d in range(days):
            close *= float(np.exp(rng.normal(0.0005, 0.02)))
            c = round(close, 2)
            hi = round(c * float(np.exp(abs(rng.normal(0, 0.01)))), 2)
            lo = round(c * float(np.exp(-abs(rng.normal(0, 0.01)))), 2)
            day = np.datetime64("2016-01-04") + d
            lines.append(f"{day},{c:.2f},{max(hi, c):.2f},{min(lo, c):.2f}")
        path.write_text("\n".join(lines) + "\n")
        paths[f"A{a}"] = str(path)
    return paths


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def asset_flags(paths):
    flags = []
    for t, p in paths.items():
        flags += ["--asset", f"{t}:{p}"]
    return flags


def test_estimate_row_count(tmp_path, capsys):
    paths = write_synthetic(tmp_path)
    code, out, _ = run(["estimate", *asset_flags(paths), "--k", "2", "--alpha", "0.05", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert [r["period"] for r in rows[:3]] == ["1", "2", "pooled"]
    assert set(rows[0]) == {"asset", "period", "alpha", "ivar_lo", "ivar_hi", "icvar_lo", "icvar_hi",
                            "tail_size", "jb_statistic"}


def test_alpha_validated_before_io(capsys):
    code, _, err = run(["estimate", "--asset", "X:/does/not/exist.csv", "--alpha", "1.5"], capsys)
    assert code == 2 and "alpha" in err


def test_empty_asset_map(capsys):
    code, _, err = run(["estimate"], capsys)
    assert code == 2 and "no assets" in err


def test_missing_file_is_data_error(capsys):
    code, _, err = run(["estimate", "--asset", "X:/does/not/exist.csv"], capsys)
    assert code == 3 and "X" in err


def test_bad_row_is_data_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("date,close,high,low\n2016-01-04,5,4,4.5\n2016-01-05,5,5.2,4.9\n")
    code, _, err = run(["estimate", "--asset", f"B:{bad}"], capsys)
    assert code == 3 and "line 2" in err


def test_bad_flag_is_config_error(capsys):
    assert run(["optimize", "--model", "3"], capsys)[0] == 2
    assert run(["optimize", "--asset", "A:x", "--gamma", "0.1,1.2", "--cap", "0,1"], capsys)[0] == 2
    assert run(["optimize", "--asset", "A:x", "--k", "3", "--cap", "0,1", "--cap", "0,1"], capsys)[0] == 2
    assert run(["optimize", "--asset", "A:x", "--model", "2"], capsys)[0] == 2


def test_optimize_gamma_sweep(tmp_path, capsys):
    paths = write_synthetic(tmp_path, n_assets=3, days=120)
    code, out, _ = run(["optimize", *asset_flags(paths), "--k", "2", "--model", "1", "--gamma", "0.15,0.05,0.01",
                        "--cap", "0.0,0.2", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    for r in rows:
        assert r["status"] == "OPTIMAL"
        assert abs(sum(float(r[t]) for t in ("A0", "A1", "A2")) - 1.0) <= 1e-4
    assert [r["gamma"] for r in rows] == ["0.15", "0.05", "0.01"]


def test_optimize_zero_cap_is_all_infeasible(tmp_path, capsys):
    paths = write_synthetic(tmp_path)
    code, out, _ = run(["optimize", *asset_flags(paths), "--k", "2", "--cap", "0,0", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 7 and all(r["status"] == "INFEASIBLE" and r["A0"] == "" for r in rows)


def test_two_asset_objective_monotone_in_gamma():
    from icvar.crisp import ModelOneSpec
    from icvar.simplex import grid_oracle, solve
    safe_e, risky_e = Interval(0.0001, 0.0003), Interval(0.0005, 0.0013)
    safe_r, risky_r = Interval(0.002, 0.02), Interval(0.01, 0.09)
    gammas = [0.01, 0.02, 0.025, 0.03, 0.04, 0.05, 0.15]
    objs = []
    for g in gammas:
        p = build_model1(ModelOneSpec(g, (Interval(0.008, 0.08),), ((safe_r,), (risky_r,)), (safe_e, risky_e)))
        s, o = solve(p), grid_oracle(p, 0.0005)
        assert s.objective >= o.objective - 1e-12
        assert s.objective - o.objective <= 0.0005 * 0.0009 * 2 + 1e-12
        objs.append(round(s.objective, 4))
    assert objs == sorted(objs)
    assert all(b >= a for a, b in zip(objs, objs[1:]))


def test_caps_round_trip(tmp_path, capsys):
    paths = write_synthetic(tmp_path, n_assets=3, days=150, seed=3)
    report = tmp_path / "report.csv"
    assert run(["estimate", *asset_flags(paths), "--k", "3", "--format", "csv", "--out", str(report)], capsys)[0] == 0
    caps = caps_from_report(report.read_text(), "A1")
    assert len(caps) == 3
    code, out, _ = run(["optimize", *asset_flags(paths), "--k", "3", "--gamma", "1", "--caps-from", str(report),
                        "--caps-asset", "A1", "--format", "csv"], capsys)
    assert code == 0
    (row,) = csv.DictReader(io.StringIO(out))
    assert row["status"] == "OPTIMAL"


def test_caps_from_unknown_asset(tmp_path, capsys):
    report = tmp_path / "r.csv"
    report.write_text("asset,period,icvar_lo,icvar_hi\nA,1,0.1,0.2\n")
    code, _, err = run(["optimize", "--asset", "A:x", "--caps-from", str(report), "--caps-asset", "Z"], capsys)
    assert code == 2


def test_config_file_and_overrides(tmp_path):
    text = "# c\nassets = A:a.csv, B:/abs/b.csv\nk_periods = 3\nalpha = 0.1\nmodel = 2\ngamma = 0.5, 0.2\n" \
           "floors = [-0.02,0.02]; -0.01,0.01; [0,0.01]\ncolumn.date = Date\nformat = csv\n"
    path = tmp_path / "run.cfg"
    path.write_text(text)
    cfg = load_config(str(path))
    assert cfg.assets == {"A": os.path.join(str(tmp_path), "a.csv"), "B": "/abs/b.csv"}
    assert (cfg.k_periods, cfg.alpha, cfg.model, cfg.gammas, cfg.fmt) == (3, 0.1, 2, (0.5, 0.2), "csv")
    assert cfg.floors[1] == Interval(-0.01, 0.01) and cfg.schema.date == "Date"
    cfg.validate(need_bounds=True)
    with pytest.raises(ConfigError):
        apply_settings(RunConfig(), {"nonsense": "1"})
    with pytest.raises(ConfigError):
        read_config_text("just words\n")
    with pytest.raises(ConfigError):
        apply_settings(RunConfig(), {"k_periods": "five"})


def test_by_date_boundaries_from_cli(tmp_path, capsys):
    paths = write_synthetic(tmp_path, days=40)
    code, out, _ = run(["estimate", *asset_flags(paths), "--k", "2", "--strategy", "by_date_boundaries",
                        "--boundaries", "2016-01-20", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    code, _, _ = run(["estimate", *asset_flags(paths), "--k", "2", "--strategy", "by_date_boundaries",
                      "--boundaries", "2017-01-20"], capsys)
    assert code == 2


def test_jb_command(capsys):
    code, out, _ = run(["jb-test", "--config", CFG1, "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10 and all(float(r["jb_statistic"]) > 13.816 for r in rows)
    code, out, _ = run(["jb-test", "--config", CFG1], capsys)
    assert code == 0 and out.rstrip().endswith("df = 2")


@given(st.lists(st.floats(0, 1), min_size=1, max_size=12).filter(lambda w: sum(w) > 1e-9))
def test_round_weights_sum_to_one(w):
    units = round_weights(w)
    assert sum(units) == 10_000 and all(u >= 0 for u in units)
    total = sum(w)
    assert all(abs(u / 10_000 - v / total) <= 1e-4 + 1e-12 for u, v in zip(units, w))


def highs_objective(problem):
    from icvar.crisp import Sense
    sign = -1 if problem.sense is Sense.MAXIMIZE else 1
    ref = linprog(sign * problem.objective, A_ub=problem.ineq_lhs, b_ub=problem.ineq_rhs, A_eq=problem.eq_lhs,
                  b_eq=problem.eq_rhs, bounds=[(0, None)] * problem.n, method="highs")
    return sign * ref.fun if ref.status == 0 else None


@pytest.mark.parametrize("cfg_path, golden, fmt", [
    (CFG1, "model1_same_cap.txt", "pretty"),
    (CFG1, "model1_same_cap.csv", "csv"),
    (CFG2, "model2_same_floor.txt", "pretty"),
])
def test_golden_tables(tmp_path, cfg_path, golden, fmt):
    out = tmp_path / "table"
    assert main(["optimize", "--config", cfg_path, "--format", fmt, "--out", str(out)]) == 0
    with open(os.path.join(GOLDEN, golden), "rb") as fh:
        assert out.read_bytes() == fh.read()


def test_golden_estimate_report(tmp_path):
    out = tmp_path / "est.csv"
    assert main(["estimate", "--config", CFG1, "--out", str(out)]) == 0
    with open(os.path.join(GOLDEN, "estimate.csv"), "rb") as fh:
        assert out.read_bytes() == fh.read()


@pytest.mark.parametrize("cfg_path", [CFG1, CFG2])
def test_golden_objectives_agree_with_highs(cfg_path):
    cfg = load_config(cfg_path)
    panel = load_panel(cfg.assets, cfg.k_periods)
    est = estimate_panel(panel, cfg.alpha)
    golden = "model1_same_cap.txt" if cfg.model == 1 else "model2_same_floor.txt"
    with open(os.path.join(GOLDEN, golden)) as fh:
        lines = [ln.split() for ln in fh if ln.startswith("[")]
    for g, cols in zip(cfg.gammas, lines):
        spec = model_one_spec(est, cfg.caps, g) if cfg.model == 1 else model_two_spec(est, cfg.floors, g)
        problem = build_model1(spec) if cfg.model == 1 else build_model2(spec)
        assert float(cols[-4]) == pytest.approx(highs_objective(problem), abs=5e-5 + 1e-9)
        assert float(cols[-2]) == g


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "icvar", "optimize", "--config", CFG1, "--format", "csv"],
                          capture_output=True, check=True)
    with open(os.path.join(GOLDEN, "model1_same_cap.csv"), "rb") as fh:
        assert proc.stdout == fh.read()
