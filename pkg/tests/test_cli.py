"""CLI subcommands, exit codes, output files, and error reporting."""

import io
import json
import os

import pytest

from conftest import FERMAT_TEXT, KUMMER_TEXT
from milnor.cli import main


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch, tmp_path):
    monkeypatch.setenv("MILNOR_CACHE_DIR", str(tmp_path / "cache"))


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_json_stdout(capsys):
    code, out, err = run(["analyze", KUMMER_TEXT], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["thresholds"]["tau"] == 16
    assert doc["alexander"]["text"] == "(t + 1)^6"
    assert doc["schema"] == 1


def test_analyze_file_and_out_dir(tmp_path, capsys):
    poly_file = tmp_path / "kummer.txt"
    poly_file.write_text(KUMMER_TEXT + "\n")
    out_dir = tmp_path / "reports"
    code, out, _ = run(["analyze", str(poly_file), "--out", str(out_dir),
                        "--format", "csv"], capsys)
    assert code == 0
    target = out_dir / "kummer.csv"
    assert str(target) in out
    lines = target.read_text().strip().split("\n")
    assert lines[0] == "k,dim_singular,dim_smooth,difference"
    assert lines[-1] == "9,16,0,16"


def test_analyze_parse_error_gives_line_column(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("x0^4 + x1^4 +\n+ x2^4\n")
    out_dir = tmp_path / "reports"
    code, out, err = run(["analyze", str(bad), "--out", str(out_dir)], capsys)
    assert code == 1
    assert "line 2, column" in err
    assert not out_dir.exists()  # no partial output


def test_analyze_rejects_inhomogeneous(capsys):
    code, _, err = run(["analyze", "x0^3 + x1^2"], capsys)
    assert code == 1 and "homogeneous" in err


def test_analyze_dimension_degree_validation(capsys):
    code, _, err = run(["analyze", FERMAT_TEXT, "--n", "2"], capsys)
    assert code == 1 and "n=3" in err
    code, _, err = run(["analyze", FERMAT_TEXT, "--d", "5"], capsys)
    assert code == 1 and "degree 4" in err


def test_analyze_smooth_exit_zero(capsys):
    code, out, _ = run(["analyze", FERMAT_TEXT, "--format", "text"], capsys)
    assert code == 0
    assert "smooth hypersurface" in out


def test_analyze_not_nodal_message(capsys):
    # singular along a line; stabilization fails and says so
    code, _, err = run(["analyze", "x0^2*x1", "--num-vars", "3"], capsys)
    assert code == 1
    assert "not nodal or has non-isolated" in err


def test_analyze_no_nodal_flag(capsys):
    code, out, _ = run(["analyze", KUMMER_TEXT, "--no-nodal"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["defects"] is None and doc["betti"] is None


def test_analyze_deterministic_bytes(capsys):
    _, first, _ = run(["analyze", KUMMER_TEXT, "--no-cache"], capsys)
    _, second, _ = run(["analyze", KUMMER_TEXT, "--no-cache"], capsys)
    assert first == second
    _, timed, _ = run(["analyze", KUMMER_TEXT, "--timing"], capsys)
    assert json.loads(timed)["timing"] is not None


def test_chebyshev_grid_with_verdicts(tmp_path, capsys):
    out_dir = tmp_path / "grid"
    code, out, _ = run(["chebyshev", "--n", "3", "--d", "4..6",
                        "--even-only", "--out", str(out_dir),
                        "--format", "text"], capsys)
    assert code == 0
    assert (out_dir / "CC_3_4.txt").exists()
    assert (out_dir / "CC_3_6.txt").exists()
    assert not (out_dir / "CC_3_5.txt").exists()
    verdicts = (out_dir / "verdicts.csv").read_text().strip().split("\n")
    assert verdicts[0] == "name,n,d,predicted,computed,agree,label"
    rows = [v.split(",") for v in verdicts[1:]]
    assert [r[:5] for r in rows] == [
        ["defect-closed-form-n3", "3", "4", "3", "3"],
        ["defect-closed-form-n3", "3", "6", "6", "6"],
    ]
    assert all(r[5] == "True" for r in rows)


def test_chebyshev_json_aggregate(capsys):
    code, out, _ = run(["chebyshev", "--n", "2", "--d", "5"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["reports"][0]["thresholds"] == {
        "T": 9, "tau": 8, "ct": 6, "st": 7, "mdr": 3, "smooth": False}
    assert doc["verdicts"][0]["label"] == "new data point"


def test_chebyshev_k_override(capsys):
    code, out, _ = run(["chebyshev", "--n", "3", "--d", "4", "--k", "-1",
                        "--format", "text"], capsys)
    assert code == 0
    assert "alexander polynomial: 1" in out
    assert "tau = 6" in out


def test_chebyshev_bad_degree_spec(capsys):
    code, _, err = run(["chebyshev", "--n", "3", "--d", "x..y"], capsys)
    assert code == 1 and "degree spec" in err
    code, _, err = run(["chebyshev", "--n", "3", "--d", "5..4"], capsys)
    assert code == 1


def test_chebyshev_degree_cap_refusal(capsys):
    code, _, err = run(["chebyshev", "--n", "3", "--d", "24"], capsys)
    assert code == 1
    assert "exceeds --max-degree" in err and "cells" in err


def test_hilbert_csv(capsys):
    code, out, _ = run(["hilbert", KUMMER_TEXT, "--format", "csv"], capsys)
    assert code == 0
    assert out.startswith("k,dim_singular,dim_smooth,difference\n0,1,1,0\n")


def test_defects_cc_with_oracle(capsys):
    code, out, _ = run(["defects", "--cc", "3,4", "--oracle",
                        "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "k,defect,oracle_defect"
    assert lines[1] == "0,11,11"
    assert lines[3] == "2,3,3"
    for line in lines[1:]:
        _, a, b = line.split(",")
        assert a == b


def test_defects_polynomial_json(capsys):
    code, out, _ = run(["defects", KUMMER_TEXT, "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["node_count"] == 16
    assert doc["defects"][:3] == [[0, 15], [1, 12], [2, 6]]
    assert doc["oracle_defects"] is None


def test_defects_input_validation(capsys):
    code, _, err = run(["defects"], capsys)
    assert code == 1
    code, _, err = run(["defects", "x0^2+x1^2", "--cc", "2,3"], capsys)
    assert code == 1
    code, _, err = run(["defects", "--cc", "2,3", "--oracle", "--cc", "2,3,1"],
                       capsys)
    assert code == 1  # C(2,3,1) is smooth: parity fails


def test_cache_inspect_and_clear_cli(tmp_path, capsys):
    code, out, _ = run(["analyze", "x0^3 + x1^3 + x2^3"], capsys)
    assert code == 0
    code, out, _ = run(["cache", "inspect"], capsys)
    assert code == 0
    assert "n=2 d=3" in out and "1 entries" in out
    code, out, _ = run(["cache", "clear"], capsys)
    assert code == 0 and "removed 1" in out
    code, out, _ = run(["cache", "inspect"], capsys)
    assert "no entries" in out


def test_cache_reuse_between_runs(tmp_path, capsys):
    import time
    code, first, _ = run(["analyze", KUMMER_TEXT], capsys)
    t0 = time.time()
    code, second, _ = run(["analyze", KUMMER_TEXT], capsys)
    cached_run = time.time() - t0
    assert first == second
    assert cached_run < 0.5


def test_verify_fast_path(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == 0
    assert "FAIL" not in out
    assert "kummer-quartic" in out and "all checks passed" in out


def test_stdin_input(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("x0^3 + x1^3 + x2^3"))
    code, out, _ = run(["analyze", "-", "--format", "text"], capsys)
    assert code == 0
    assert "source: stdin" in out
