import json

import numpy as np
import pytest

from aweno import output
from aweno.cli import EXIT_CONFIG, EXIT_OK, main, read_config_file


def test_unknown_problem_is_config_error(tmp_path, capsys):
    code = main(["run", "--problem", "sodx", "--out", str(tmp_path)])
    assert code == EXIT_CONFIG
    assert "configuration error" in capsys.readouterr().err


def test_missing_problem_is_config_error(tmp_path, capsys):
    assert main(["run", "--out", str(tmp_path)]) == EXIT_CONFIG


def test_run_writes_outputs_and_figures(tmp_path):
    out = tmp_path / "run1"
    code = main(
        [
            "run",
            "--problem", "sod",
            "--mode", "adaptive",
            "--nx", "64",
            "--tfinal", "0.05",
            "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    assert (out / "snapshot_t0.050000.csv").exists()
    assert (out / "mask_final.csv").exists()
    assert (out / "steps.csv").exists()
    assert (out / "fig_density.png").exists()
    assert (out / "fig_lsi.png").exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["mode"] == "adaptive"
    assert summary["steps"] > 0
    assert 0.0 <= summary["rough_fraction_final"] <= 1.0


def test_run_outputs_deterministic(tmp_path):
    outs = []
    for sub in ("a", "b"):
        out = tmp_path / sub
        assert main(
            ["run", "--problem", "sod", "--mode", "adaptive", "--nx", "64",
             "--tfinal", "0.03", "--out", str(out)]
        ) == EXIT_OK
        outs.append(out)
    for name in ("snapshot_t0.030000.csv", "mask_final.csv", "steps.csv"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_run_2d_writes_mask_figure(tmp_path):
    out = tmp_path / "run2d"
    code = main(
        ["run", "--problem", "explosion", "--mode", "adaptive", "--nx", "24",
         "--ny", "24", "--tfinal", "0.05", "--out", str(out)]
    )
    assert code == EXIT_OK
    assert (out / "fig_density.png").exists()
    assert (out / "fig_mask.png").exists()


def test_config_file_and_cli_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# sample configuration\n"
        "problem = sod\n"
        "mode = limited\n"
        "nx = 32\n"
        "tfinal = 0.02\n"
    )
    parsed = read_config_file(cfg)
    assert parsed == {"problem": "sod", "mode": "limited", "nx": "32", "tfinal": "0.02"}
    out = tmp_path / "cfg_run"
    code = main(
        ["run", "--config", str(cfg), "--mode", "adaptive", "--out", str(out)]
    )
    assert code == EXIT_OK
    summary = json.loads((out / "summary.json").read_text())
    assert summary["mode"] == "adaptive"  # CLI beats file


def test_dx_option_sets_cell_count(tmp_path):
    out = tmp_path / "dx_run"
    code = main(
        ["run", "--problem", "sod", "--mode", "limited", "--dx", "0.02",
         "--tfinal", "0.02", "--out", str(out)]
    )
    assert code == EXIT_OK
    names, data = output.read_snapshot(out / "snapshot_t0.020000.csv")
    assert data.shape[0] == 50


def test_dx_and_nx_conflict(tmp_path, capsys):
    code = main(
        ["run", "--problem", "sod", "--nx", "50", "--dx", "0.02",
         "--out", str(tmp_path)]
    )
    assert code == EXIT_CONFIG


def test_rate_table_command(tmp_path, capsys):
    out = tmp_path / "rates"
    code = main(
        ["rate-table", "--problem", "sod", "--meshes", "32,64",
         "--windows", "0.35:0.45,0:1", "--tfinal", "0.05", "--out", str(out)]
    )
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "window [0.35, 0.45]" in text
    assert (out / "rate_table.csv").exists()
    assert (out / "fig_rate_table.png").exists()


def test_compare_command(tmp_path, capsys):
    out = tmp_path / "cmp"
    code = main(
        ["compare", "--problem", "sod", "--nx", "48", "--tfinal", "0.04",
         "--modes", "limited,adaptive", "--reference-nx", "96", "--out", str(out)]
    )
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "ratio" in text
    rep = json.loads((out / "compare.json").read_text())
    assert "ratio_adaptive_limited" in rep
    assert rep["l1_density"]["limited"] >= 0.0


def test_cesaro_command(tmp_path):
    out = tmp_path / "ces"
    code = main(
        ["cesaro", "--problem", "kh", "--mode", "limited", "--level-min", "4",
         "--level-max", "5", "--tfinal", "0.02", "--out", str(out)]
    )
    assert code == EXIT_OK
    avg = np.loadtxt(out / "cesaro_density.csv", delimiter=",")
    assert avg.shape == (32, 32)
    assert (out / "fig_cesaro.png").exists()


def test_solver_failure_writes_diagnostic(tmp_path, capsys):
    # a wildly unstable fixed step makes a stage state inadmissible
    out = tmp_path / "fail"
    code = main(
        ["run", "--problem", "sod", "--mode", "limited", "--nx", "64",
         "--fixed-dt", "0.5", "--out", str(out)]
    )
    assert code == 1
    assert "solver failure" in capsys.readouterr().err
    assert (out / "error.txt").exists()
