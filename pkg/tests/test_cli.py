import csv
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from pbgtrap.band_edge import DEGENERATE_D
from pbgtrap.cli import SweepSpec, detuning_grid, figure_table, main, run_series, stark_plan

GOLDEN = Path(__file__).parent / "golden"


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_figure1_deep_gap_curve(tmp_path):
    assert main(["figure", "1", "--out", str(tmp_path)]) == 0
    header, data = read_csv(tmp_path / "figure1.csv")
    assert header[0] == "tau" and len(header) == 7
    assert data.shape[0] == 1001 and data[-1, 0] == 10.0
    col = header.index("c_phi(d=-10)")
    assert data[-1, col] > 0.9
    assert np.all((data[:, 1:] >= 0) & (data[:, 1:] <= 1 + 1e-9))


def test_figure2_is_square_of_figure1():
    h1, rows1 = figure_table(1)
    h2, rows2 = figure_table(2)
    a, b = np.array(rows1), np.array(rows2)
    assert np.allclose(b[:, 1:], a[:, 1:] ** 2, atol=1e-14)


def test_figure3_rows(tmp_path):
    assert main(["figure", "3", "--out", str(tmp_path), "--svg"]) == 0
    header, data = read_csv(tmp_path / "figure3.csv")
    assert header == ["d", "c_phi_inf", "c_psi_inf"]
    assert np.all(np.abs(data[:, 2] - data[:, 1] ** 2) < 1e-11)  # 12 printed digits
    assert 0.85 <= data[data[:, 0] == -5.0, 1][0] <= 0.95
    inside = data[data[:, 0] <= 0]
    assert np.all(np.diff(inside[:, 1]) <= 0)
    assert np.all(np.abs(data[:, 0] - DEGENERATE_D) >= 1e-3)
    svg = (tmp_path / "figure3.svg").read_text()
    assert svg.startswith("<svg") and svg.count("<polyline") == 2 and 'viewBox="0 0 800 500"' in svg


def test_detuning_grid_skips_degenerate_point():
    grid = detuning_grid(-1.9, -1.88, 0.0001)
    assert all(abs(d - DEGENERATE_D) >= 1e-3 for d in grid)
    assert len(grid) < 201


def test_series_q2_starts_at_one(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["series", "--quantity", "q2", "--d", "0", "--tau-max", "5", "--output", str(out)]) == 0
    header, data = read_csv(out)
    assert header == ["tau", "q2(d=0)"]
    assert data[0, 1] == 1.0


def test_series_psi_sudden_death():
    spec = SweepSpec("c_psi", (10.0,), tau_max=10.0, tau_step=0.01, alpha=math.sqrt(0.2))
    _, rows = run_series(spec)
    c = np.array(rows)[:, 1]
    q2 = np.array(run_series(SweepSpec("q2", (10.0,), tau_max=10.0, tau_step=0.01))[1])[:, 1]
    dead = np.flatnonzero(c == 0.0)
    assert dead.size and dead[0] > 0
    assert np.all((c == 0.0) == (q2 <= 0.5))


def test_series_general_matches_closed_form():
    kw = dict(d_values=(-4.0, 0.0, 2.0), tau_max=6.0, tau_step=0.05, alpha=0.6, gamma=0.7)
    _, general = run_series(SweepSpec("c_general", family="phi", **kw))
    _, closed = run_series(SweepSpec("c_phi", **kw))
    assert np.max(np.abs(np.array(general) - np.array(closed))) < 1e-9
    _, general = run_series(SweepSpec("c_general", family="psi", **kw))
    _, closed = run_series(SweepSpec("c_psi", **kw))
    assert np.max(np.abs(np.array(general) - np.array(closed))) < 1e-9


def test_series_complex_columns_golden(tmp_path):
    out = tmp_path / "q.csv"
    args = ["series", "--quantity", "q", "--d", "-1", "0.5", "--tau-max", "1", "--tau-step", "0.25"]
    assert main(args + ["--output", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / "series_q_small.csv").read_bytes()


def test_series_worker_count_does_not_change_output(tmp_path):
    args = ["series", "--quantity", "c_general", "--d", "-3", "1", "--tau-max", "2", "--tau-step", "0.1"]
    main(args + ["--output", str(tmp_path / "a.csv"), "--workers", "1"])
    main(args + ["--output", str(tmp_path / "b.csv"), "--workers", "3"])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_series_asymptotic(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["series", "--quantity", "asymptotic", "--d-range=-2:0:1", "--output", str(out)]) == 0
    header, data = read_csv(out)
    assert header == ["d", "q2_inf", "c_phi_inf"]
    assert data[0, 1] == pytest.approx(0.8, abs=1e-12)  # y = golden ratio at d = -2
    assert data[-1, 1] == pytest.approx(4 / 9, abs=1e-12)


def test_series_rejects_degenerate_detuning(tmp_path, capsys):
    code = main(["series", "--d", str(DEGENERATE_D), "--output", str(tmp_path / "x.csv")])
    assert code == 1
    assert "degenerate" in capsys.readouterr().err


def test_series_rejects_bad_spec():
    with pytest.raises(ValueError):
        SweepSpec("nope", (0.0,))
    with pytest.raises(ValueError):
        SweepSpec("q2", (0.0,), tau_step=0.0)


def test_oracle_under_resolved_exit_code(tmp_path, capsys):
    out = tmp_path / "oracle.csv"
    code = main(["oracle", "--d", "-1", "--n-modes", "400", "--e-max", "2", "--output", str(out)])
    assert code == 2
    text = capsys.readouterr().out
    assert "FAIL" in text and "cutoff" in text
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# d=-1")
    assert "tau,q2_analytic,q2_oracle,abs_deviation" in lines


@pytest.mark.slow
@pytest.mark.parametrize("d", ["-1", "0"])
def test_oracle_defaults_pass(d, capsys):
    assert main(["oracle", "--d", d]) == 0
    assert "PASS" in capsys.readouterr().out


def test_stark_plan_example(capsys):
    plan = stark_plan(-5.0, 5.0)
    assert plan["shift"] == 10.0
    assert 0.85 <= plan["c_phi_in"] <= 0.95
    assert main(["stark-plan", "--d-in", "-5", "--d-out", "5"]) == 0
    assert "Delta/beta = 10" in capsys.readouterr().out


def test_stark_plan_no_shift():
    plan = stark_plan(-3.0, -3.0)
    assert plan["shift"] == 0
    assert plan["c_phi_in"] == plan["c_phi_out"] and plan["c_psi_in"] == plan["c_psi_out"]


def test_stark_plan_esd_risk(capsys):
    plan = stark_plan(-10.0, 10.0, math.sqrt(0.2))
    assert plan["psi_threshold"] == pytest.approx(0.5)
    assert plan["esd_risk_out"] and plan["q2_out"] < 0.5
    main(["stark-plan", "--d-in", "-10", "--d-out", "10", "--alpha", str(math.sqrt(0.2))])
    assert "ESD RISK" in capsys.readouterr().out


def test_beta_command(capsys):
    assert main(["beta", "--omega0", str(2 * math.pi * 50e9), "--dipole", "2e-26"]) == 0
    out = capsys.readouterr().out
    assert "angular" in out and "beta =" in out
    assert main(["beta", "--omega0", "-1", "--dipole", "2e-26"]) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "pbgtrap", "figure", "3", "--out", str(tmp_path)],
        capture_output=True, text=True, check=True,
    )
    assert "figure3.csv" in proc.stdout
