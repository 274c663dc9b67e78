import csv
import io
import json
import math
import os

import pytest

from vbsent.cli import ResultRow, main, parse_alpha, parse_span


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    return [dict(zip(header, row)) for row in body]


def test_parse_helpers():
    assert parse_span("4") == [4]
    assert parse_span("1..3") == [1, 2, 3]
    with pytest.raises(ValueError):
        parse_span("5..2")
    assert parse_alpha("2") == 2.0
    assert parse_alpha("1.5+0.5i") == complex(1.5, 0.5)
    assert parse_alpha("1.5-2i") == complex(1.5, -2.0)
    assert parse_alpha("1.5e+1-2e-03i") == complex(15.0, -0.002)
    with pytest.raises(ValueError):
        parse_alpha("i")


def test_spectrum_open(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--n", "2", "--boundary", "open", "--block", "2")
    assert code == 0
    (row,) = read_csv(out)
    assert float(row["lambda_singlet"]) == pytest.approx(1 / 3, abs=1e-15)
    assert float(row["lambda_adjoint"]) == pytest.approx(2 / 9, abs=1e-15)
    assert row["N"] == "-1" and row["S"] == "" and row["alpha"] == ""


def test_spectrum_block_one(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--n", "2", "--boundary", "open", "--block", "1")
    (row,) = read_csv(out)
    assert code == 0
    assert float(row["lambda_singlet"]) == 0.0
    assert float(row["lambda_adjoint"]) == pytest.approx(1 / 3, abs=1e-15)


def test_spectrum_periodic_verified(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--n", "2", "--boundary", "periodic",
                           "--chain", "4", "--block", "2", "--verify")
    assert code == 0
    (row,) = read_csv(out)
    assert float(row["lambda_singlet"]) == pytest.approx(3 / 7, abs=1e-15)
    assert float(row["lambda_adjoint"]) == pytest.approx(4 / 21, abs=1e-15)
    assert row["verified"] == "true"
    assert float(row["max_dev"]) < 1e-10


def test_spectrum_periodic_requires_chain(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--n", "2", "--boundary", "periodic", "--block", "2")
    assert code == 2
    assert "chain" in err


def test_spectrum_open_rejects_chain(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--n", "2", "--boundary", "open",
                           "--block", "2", "--chain", "4")
    assert code == 2
    assert "chain" in err


def test_entropy_sweep_with_alpha(capsys):
    code, out, _ = run_cli(capsys, "entropy", "--n", "2", "--boundary", "open",
                           "--block", "1..8", "--alpha", "2")
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 8
    assert float(rows[0]["S"]) == pytest.approx(math.log(3), abs=1e-14)
    assert float(rows[0]["S_alpha_re"]) == pytest.approx(math.log(3), abs=1e-14)
    assert float(rows[0]["S_alpha_im"]) == 0.0
    assert [row["L"] for row in rows] == [str(L) for L in range(1, 9)]


def test_entropy_saturation_row(capsys):
    code, out, _ = run_cli(capsys, "entropy", "--n", "3", "--boundary", "open", "--block", "20")
    (row,) = read_csv(out)
    assert code == 0
    assert abs(float(row["S"]) - 2 * math.log(3)) < 1e-10


def test_entropy_periodic_verify(capsys):
    code, out, _ = run_cli(capsys, "entropy", "--n", "2", "--boundary", "periodic",
                           "--chain", "8", "--block", "4", "--verify")
    (row,) = read_csv(out)
    assert code == 0
    assert row["verified"] == "true"
    assert float(row["max_dev"]) < 1e-10


def test_entropy_log_base_display(capsys):
    _, out_e, _ = run_cli(capsys, "entropy", "--n", "2", "--boundary", "open", "--block", "1")
    _, out_2, _ = run_cli(capsys, "entropy", "--n", "2", "--boundary", "open", "--block", "1",
                          "--log-base", "2")
    s_nats = float(read_csv(out_e)[0]["S"])
    s_bits = float(read_csv(out_2)[0]["S"])
    assert s_bits == pytest.approx(s_nats / math.log(2), abs=1e-14)


def test_entropy_branch_point_row_flagged(capsys):
    alpha = complex(math.log(3), math.pi) / math.log(1.5)
    literal = f"{alpha.real:.17g}{alpha.imag:+.17g}i"
    code, out, err = run_cli(capsys, "entropy", "--n", "2", "--boundary", "open",
                             "--block", "2", "--alpha", literal)
    assert code == 0
    (row,) = read_csv(out)
    assert row["alpha"] != "" and row["S_alpha_re"] == "" and row["S_alpha_im"] == ""
    assert "branch point" in err


def test_entropy_rejects_order_one(capsys):
    code, _, err = run_cli(capsys, "entropy", "--n", "2", "--boundary", "open",
                           "--block", "2", "--alpha", "1")
    assert code == 2
    assert "order" in err


def test_branch_points_even_block(capsys):
    code, out, _ = run_cli(capsys, "branch-points", "--n", "2", "--block", "2", "--m", "0..2")
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 6
    for row in rows:
        assert float(row["alpha_re"]) > 0
        assert float(row["residual"]) < 1e-8
        assert row["parity"] == "even"


def test_branch_points_odd_block(capsys):
    code, out, _ = run_cli(capsys, "branch-points", "--n", "2", "--block", "3", "--m", "0")
    rows = read_csv(out)
    assert code == 0
    assert all(float(row["alpha_re"]) < 0 for row in rows)
    assert all(row["parity"] == "odd" for row in rows)


def test_branch_points_block_one_rejected(capsys):
    code, _, err = run_cli(capsys, "branch-points", "--n", "2", "--block", "1")
    assert code == 2
    assert "weight" in err or "undefined" in err


def test_csv_and_json_rows_agree(capsys):
    args = ("entropy", "--n", "2", "--boundary", "open", "--block", "1..3", "--alpha", "2,3")
    _, out_csv, _ = run_cli(capsys, *args)
    _, out_json, _ = run_cli(capsys, *args, "--format", "json")
    csv_rows = read_csv(out_csv)
    json_rows = json.loads(out_json)
    assert len(csv_rows) == len(json_rows)
    for c, j in zip(csv_rows, json_rows):
        assert int(c["n"]) == j["n"] and int(c["L"]) == j["L"]
        assert float(c["S"]) == j["S"]
        assert c["alpha"] == (j["alpha"] or "")
        assert float(c["S_alpha_re"]) == j["S_alpha_re"]


def test_json_round_trip_lossless(capsys):
    args = ("entropy", "--n", "2", "--boundary", "periodic", "--chain", "5",
            "--block", "1..4", "--alpha", "2", "--verify", "--format", "json")
    _, out, _ = run_cli(capsys, *args)
    objs = json.loads(out)
    rows = [ResultRow.from_json(obj) for obj in objs]
    assert [row.json_obj() for row in rows] == objs


def test_byte_identical_reruns(capsys):
    args = ("spectrum", "--n", "3", "--boundary", "open", "--block", "1..6")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_output_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run_cli(capsys, "spectrum", "--n", "2", "--boundary", "open",
                           "--block", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert "lambda_singlet" in target.read_text()


def test_verify_single_check(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "2", "--only", "swap-identity")
    assert code == 0
    assert "swap-identity: PASS" in out


def test_verify_json_summary(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "2", "--only", "transfer-matrix",
                           "--format", "json")
    assert code == 0
    summary = json.loads(out)
    assert summary["all_passed"] is True
    assert summary["checks"][0]["name"] == "transfer-matrix"
    assert summary["checks"][0]["max_dev"] < 1e-12


def test_verify_budget_preflight(capsys):
    code, out, err = run_cli(capsys, "verify", "--budget-amps", "1000")
    assert code == 3
    assert out == ""  # no partial output
    assert "budget" in err


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("VBSENT_AMP_BUDGET", "1000")
    code, out, _ = run_cli(capsys, "verify")
    assert code == 3 and out == ""


def test_usage_error_exit_code(capsys):
    code, _, _ = run_cli(capsys, "spectrum", "--n", "2", "--boundary", "moebius", "--block", "2")
    assert code == 2


def test_module_entry_point():
    import pathlib
    import subprocess
    import sys

    src = pathlib.Path(__file__).resolve().parents[1] / "src"
    env = dict(os.environ, PYTHONPATH=str(src))
    proc = subprocess.run(
        [sys.executable, "-m", "vbsent", "spectrum", "--n", "2", "--boundary", "open", "--block", "2"],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 0
    assert "0.33333333333333331" in proc.stdout
