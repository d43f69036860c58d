import json
import math

import pytest

from gauss_sphere.cli import main
from gauss_sphere.errors import CrossCheckError
from gauss_sphere.reporting import figure
from gauss_sphere.reporting.asymptotics import asymptotics_report, dyadic_windows
from gauss_sphere.reporting.emit import to_csv, to_json
from gauss_sphere.reporting.suite import criterion, run_suite


def test_figure_rows():
    rows = figure.figure_pipeline(40, 10**4)
    assert rows[0].lam == 1
    assert rows[7].lam == 8 and rows[7].N34 == pytest.approx(1 / 24, abs=1e-16)
    assert figure.check_finite(rows)


def test_figure_last_row_and_growth():
    checks = []
    rows = figure.figure_pipeline(1600, 10**4, checks=checks)
    assert checks[-1].lam == 1600 and checks[-1].discrepancy <= checks[-1].bound
    assert 1.2 <= figure.amplitude_ratio(rows) <= 4.0


def test_figure_cross_check_aborts(monkeypatch):
    from gauss_sphere.oscillatory.series import BoundedValue

    monkeypatch.setattr(figure, "eval_ok", lambda k, s, n: BoundedValue(1.0, 1e-12, n))
    with pytest.raises(CrossCheckError) as info:
        figure.figure_pipeline(60, 100)
    assert info.value.row.lam == 50


def test_csv_format():
    text = to_csv(["a", "b"], [[1, 0.1], [2, 1 / 3]])
    assert text == "a,b\r\n1,0.10000000000000001\r\n2,0.33333333333333331\r\n"


def test_json_handles_complex_and_nan():
    data = json.loads(to_json({"z": 1 + 2j, "x": math.nan}))
    assert data == {"z": [1.0, 2.0], "x": None}


def test_csv_byte_stable_across_threads(tmp_path, capsys):
    outs = []
    for threads in (1, 3):
        path = tmp_path / f"fig{threads}.csv"
        assert main(["figure", "--lambda-max", "200", "--threads", str(threads), "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].startswith(b"lambda,sigma2,N34,residual1,residual2,residual3\r\n")


def test_dyadic_windows():
    assert dyadic_windows(100.0) == [
        (1.5625, 3.125), (3.125, 6.25), (6.25, 12.5), (12.5, 25.0), (25.0, 50.0), (50.0, 100.0)
    ]


def test_asymptotics_small():
    r = asymptotics_report(2, 32.0, points_per_window=300)
    assert r.windows[-1].hi == 32.0 and math.isfinite(r.global_max)
    r1 = asymptotics_report(1, 32.0, points_per_window=300)
    assert r1.weight == "sigma*log(2+sigma)"


def test_flip_beta_flag_fails_series_criterion():
    assert not criterion("4", flip_beta=True).passed


def test_cli_commands(capsys):
    assert main(["counts", "--max-n", "3"]) == 0
    assert capsys.readouterr().out == "n,r,cumulative\r\n0,1,1\r\n1,6,7\r\n2,12,19\r\n3,8,27\r\n"
    assert main(["iterated", "--k", "1", "--sigma2", "1", "--oracle", "on"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["value"] == 1.0 and abs(rec["oracle_value"] - 1.0) < 1e-10
    assert main(["constants", "--j", "1"]) == 2
    assert "odd index" in capsys.readouterr().err
    assert main(["coeffs", "--k-max", "1", "--emit", "csv"]) == 0
    assert capsys.readouterr().out.splitlines()[2] == "1,0,1,2,0,-2"
    assert main(["verify-nd", "--dim", "1", "--a", "0.2", "--b", "0.8"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "pass"
    assert main(["fourier", "--tau", "1", "--eps", "0.2", "--terms", "1000", "--rmax", "20"]) == 0
    capsys.readouterr()
    assert main(["series", "--k", "3", "--sigma2", "50", "--emit", "csv"]) == 0
    assert capsys.readouterr().out.startswith("k,sigma2,sigma,o_k,main_formula,exact")


def test_run_suite_quick():
    code, summary = run_suite("quick", invariants=True)
    failed = [r["ident"] for r in summary["results"] if not r["passed"]]
    assert code == 0, failed
