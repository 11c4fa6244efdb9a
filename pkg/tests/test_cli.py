import json
from pathlib import Path

import numpy as np
import pytest

from geoar import cli
from geoar.ingest import load_csv

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_table1_row(capsys):
    code, out, _ = run(capsys, "analyze", "--beta", "0.0001", "--delta", "0.5", "--k", "5")
    assert code == cli.EXIT_OK
    assert "roots.stationary: true" in out and "schur.all_positive: true" in out
    assert "bound.inside: true" in out


def test_analyze_k2_max_modulus(capsys):
    code, out, _ = run(capsys, "analyze", "--beta", "0.5", "--delta", "0.5", "--k", "2", "--json")
    rep = json.loads(out)
    assert rep["roots"]["stationary"]
    assert rep["roots"]["max_modulus"] == pytest.approx(np.sqrt(0.5), abs=1e-12)
    assert code == cli.EXIT_OK


def test_analyze_disagreement_exit(capsys):
    code, out, _ = run(capsys, "analyze", "--beta", "0.3", "--delta", "0.5", "--k", "5", "--json")
    assert code == cli.EXIT_DISAGREE
    assert json.loads(out)["agreement"]["unanimous"] is False


def test_analyze_nonstationary_exit(capsys):
    code, *_ = run(capsys, "analyze", "--beta", "1.5", "--delta", "0.5", "--k", "2")
    assert code == cli.EXIT_NONSTATIONARY


def test_human_and_json_carry_same_numbers(capsys):
    _, human, _ = run(capsys, "analyze", "--beta", "0.02", "--delta", "0.6", "--k", "4")
    _, machine, _ = run(capsys, "analyze", "--beta", "0.02", "--delta", "0.6", "--k", "4", "--json")
    rep = json.loads(machine)
    assert f"bound.beta_upper: {rep['bound']['beta_upper']:.6g}" in human
    assert f"roots.max_modulus: {rep['roots']['max_modulus']:.6g}" in human


@pytest.mark.parametrize("argv", [
    ["analyze", "--beta", "-0.1", "--delta", "0.5"],
    ["analyze", "--beta", "0.1", "--delta", "1.5"],
    ["analyze", "--delta", "0.5"],
    ["grid", "--replications", "0"],
    ["appendix", "--input", "x.csv", "--horizon", "0"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv)
        raise SystemExit(code)
    assert exc.value.code == cli.EXIT_USAGE
    assert capsys.readouterr().err.strip()


def test_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "adf", "--input", str(tmp_path / "nope.csv"))
    assert code == cli.EXIT_IO and "I/O" in err


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--delta", "0.5", "--k", "5", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["beta_upper"] == pytest.approx(1 / (rep["kappa_k"] + 1))
    assert rep["beta_lower"] == pytest.approx(-1 / (5 + rep["kappa_k"]))
    assert "convention" in rep


def test_simulate_byte_identical(capsys, tmp_path):
    argv = ["simulate", "--beta", "0.3", "--delta", "0.5", "--k", "5", "--n", "500", "--seed", "42"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and a.count("\n") == 501
    p = tmp_path / "s.csv"
    run(capsys, *argv, "--out", str(p))
    assert p.read_text() == a


def test_simulate_explosive_note(capsys):
    code, _, err = run(capsys, "simulate", "--beta", "0.4", "--delta", "0.7", "--k", "5",
                       "--seed", "0", "--sign", "positive")
    assert code == 0 and "explosive" in err


def test_adf_white_noise(capsys):
    code, out, _ = run(capsys, "adf", "--input", str(DATA / "white_noise.csv"))
    assert code == 0 and "category: highly-strong" in out


def test_fit(capsys, tmp_path):
    p = tmp_path / "s.csv"
    run(capsys, "simulate", "--beta", "0.3", "--delta", "0.5", "--k", "5", "--n", "3000", "--seed", "1",
        "--out", str(p))
    _, out, _ = run(capsys, "fit", "--input", str(p), "--k", "5", "--json")
    b = json.loads(out)["coefficients"]
    np.testing.assert_allclose(b, [-0.3, -0.3, -0.15, -0.075, -0.0375], atol=0.08)


def test_grid_single_cell(capsys, tmp_path):
    p = tmp_path / "g.csv"
    code, _, _ = run(capsys, "grid", "--betas", "0.4", "--deltas", "0.7", "--out", str(p), "--quiet")
    assert code == 0
    lines = p.read_text().splitlines()
    assert lines[0].split(",") == cli.GRID_FIELDS
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert row["adf_category"] == "non-stationary"
    assert row["theorem_inside"] == "False"


def test_grid_tiny_beta_all_highly_strong():
    rows = cli.grid_rows(betas=[1e-7], deltas=[0.5, 0.6, 0.7], replications=5)
    assert [r["adf_category"] for r in rows] == ["highly-strong"] * 3


def test_grid_order_independent_of_workers():
    a = cli.grid_rows(betas=[0.0001, 0.35], deltas=[0.5, 0.6], replications=3, workers=1)
    b = cli.grid_rows(betas=[0.0001, 0.35], deltas=[0.5, 0.6], replications=3, workers=4)
    assert a == b
    assert [(r["beta"], r["delta"]) for r in a] == [(0.0001, 0.5), (0.35, 0.5), (0.0001, 0.6), (0.35, 0.6)]


def test_appendix_on_fixture(capsys):
    code, out, _ = run(capsys, "appendix", "--input", str(DATA / "synthetic_sensex.csv"), "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["window"] == 100 and rep["horizon"] == 40
    assert rep["ar1_below_one"]
    assert rep["rmse_ols"] > 0 and rep["rmse_geometric"] > 0


def test_appendix_insufficient_data(capsys, tmp_path):
    p = tmp_path / "short.csv"
    p.write_text("t,v\n" + "\n".join(f"{i},{i}" for i in range(50)) + "\n")
    code, _, err = run(capsys, "appendix", "--input", str(p))
    assert code == cli.EXIT_USAGE and "need" in err


def test_fixture_golden_file(capsys):
    _, out, _ = run(capsys, "fixture", "--kind", "sensex")
    assert out == (DATA / "synthetic_sensex.csv").read_text()
    ts = load_csv(DATA / "synthetic_sensex.csv")
    assert len(ts) == 1044 and ts.labels[0] == "2017-01-02"
