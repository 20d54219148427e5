"""CLI surface: output formats, exit codes, determinism."""
import json
import math
import subprocess
import sys

import pytest

from modzeta.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    return code


def test_eval_psi_bar_json(capsys):
    code = main(["eval", "psi_bar", "--t", "2", "--b", "1", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    expect = 7 * math.pi ** 4 / 90 - 2 * math.pi * 1.2020569031595943
    assert abs(float(doc["value"]["re"]) - expect) < 1e-11
    assert float(doc["est_error"]) <= 1e-11
    assert doc["truncation"]["terms"] > 0


def test_eval_eps_inversion_fixed_point(capsys):
    code = main(["eval", "eps", "--t", "3", "--b", "1"])
    out = capsys.readouterr().out
    assert code == 0
    value_line = [ln for ln in out.splitlines() if "value" in ln][0]
    val = float(value_line.split("=")[1].split("+")[0])
    err_line = [ln for ln in out.splitlines() if "est_error" in ln][0]
    err = float(err_line.split("=")[1])
    assert abs(val) <= max(err, 1e-15)


def test_eval_massive_value(capsys):
    code = main(["eval", "zp_massive", "--p", "1", "--s", "1", "--w", "1", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert abs(float(doc["value"]["re"]) - (math.pi / math.tanh(math.pi) - 1)) < 1e-11


def test_eval_exact_polynomial(capsys):
    code = main(["eval", "pbar", "--t", "2", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["exact"]["0"] == "(-2)*pi*zeta(3)"
    assert doc["exact"]["1"] == "(1/9)*pi^4"


def test_eval_complex_b(capsys):
    code = main(["eval", "eps_sub", "--t", "2", "--b", "1.1,-0.3", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["params"]["b"] == [1.1, -0.3]


def test_unknown_quantity_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["eval", "not-a-thing"])
    assert exc.value.code == 2


def test_missing_parameter_exits_2(capsys):
    assert main(["eval", "eps"]) == 2


def test_convergence_failure_exits_3(capsys):
    # certified direct mode cannot reach 1e-12 at s = 1.5
    assert main(["eval", "z2", "--form", "1,0,1", "--s", "1.2", "--tol", "1e-14"]) in (2, 3)


def test_verify_exit_zero_and_report(capsys):
    code = main(["verify", "bol"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[PASS]" in out and "0 failed" in out


def test_verify_json_format(capsys):
    code = main(["verify", "eichler-shimura", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert all(item["passed"] for item in doc)


def test_table_lerch(capsys):
    code = main(["table", "lerch-values"])
    out = capsys.readouterr().out
    assert code == 0
    assert "(-2)*pi*zeta(3) + (7/90)*pi^4" in out


def test_table_moments_exact_column(capsys):
    code = main(["table", "moments"])
    out = capsys.readouterr().out
    assert code == 0
    # row (t=5, k=3) carries the exact rational -1/60480
    assert any(ln.startswith("5,3,") and "-1/60480" in ln for ln in out.splitlines())


def test_table_period_polynomials(capsys):
    code = main(["table", "period-polynomials"])
    out = capsys.readouterr().out
    assert code == 0
    assert any(ln.startswith("2,0,") and "(-2)*pi*zeta(3)" in ln for ln in out.splitlines())


def test_table_f3_grid_columns_agree(capsys):
    code = main(["table", "f3-grid"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    for ln in out[1:]:
        parts = ln.split(",")
        assert abs(float(parts[3])) < 1e-10


def test_eval_determinism(capsys):
    main(["eval", "phi_bar", "--t", "2", "--b", "0.8", "--format", "json"])
    first = capsys.readouterr().out
    main(["eval", "phi_bar", "--t", "2", "--b", "0.8", "--format", "json"])
    second = capsys.readouterr().out
    assert first == second


def test_bench_csv_shape(capsys):
    code = main(["bench", "qseries-vs-mellin"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0] == "tolerance,method,terms_or_radius,points,wall_time_s,value"
    assert len(out) == 11  # header + 5 tolerances x 2 methods


def test_installed_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "modzeta.cli", "eval", "f3", "--xi", "1.0", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert abs(float(doc["value"]["re"])) < 1.0
