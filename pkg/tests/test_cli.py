import csv
import io
import json
import subprocess
import sys

import pytest

from ospcohom.cli import FIELDS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_dims_rows(capsys):
    code, out, _ = run(capsys, "dims", "--lambda", "0", "--mu", "1/2", "--format", "csv")
    assert code == 0
    (row,) = csv_rows(out)
    assert (row["lambda"], row["mu"], row["dim_even"], row["dim_odd"], row["label"], row["stabilized"]) == (
        "0", "1/2", "0", "2", "odd-resonant k=1", "true"
    )
    code, out, _ = run(capsys, "dims", "--lambda", "1/3", "--mu", "1/3", "--format", "csv")
    (row,) = csv_rows(out)
    assert (row["dim_even"], row["dim_odd"], row["label"]) == ("1", "0", "diagonal")
    code, out, _ = run(capsys, "dims", "--lambda", "1", "--mu", "0", "--format", "csv", "--check")
    assert code == 0
    (row,) = csv_rows(out)
    assert (row["dim_even"], row["dim_odd"], row["label"]) == ("0", "0", "generic")


def test_table_header_names_cap_and_window(capsys):
    code, out, _ = run(capsys, "dims", "--lambda", "-1/2", "--mu", "1")
    assert code == 0
    header = out.splitlines()[0]
    assert "W=3" in header and "N" in header
    assert out.splitlines()[1].split() == FIELDS


def test_sweep_formats_agree(capsys, tmp_path):
    args = ["sweep", "--lambda", "-1:1:1/2", "--delta", "0,1/2,1,3/2", "--check"]
    code, text_csv, _ = run(capsys, *args, "--format", "csv")
    assert code == 0
    rows = csv_rows(text_csv)
    assert len(rows) == 20
    assert sum(r["dim_even"] == "1" for r in rows) == 5
    assert all(r["dim_even"] == "1" for r in rows if r["lambda"] == r["mu"])
    odd = {(r["lambda"], r["mu"]) for r in rows if r["dim_odd"] == "2"}
    assert odd == {("0", "1/2"), ("-1/2", "1")}
    out = tmp_path / "grid.json"
    code, _, _ = run(capsys, *args, "--format", "json", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert [{k: str(v).lower() if isinstance(v, bool) else str(v) for k, v in d.items()} for d in data] == rows
    code, text_table, _ = run(capsys, *args)
    body = [line.split() for line in text_table.splitlines()[2:]]
    assert len(body) == 20 and body[0][0] == "-1"


def test_sweep_order_is_deterministic(capsys):
    code, a, _ = run(capsys, "sweep", "--lambda", "1,0", "--delta", "1/2,0", "--format", "csv")
    code2, b, _ = run(capsys, "sweep", "--lambda", "0,1", "--delta", "0,1/2", "--format", "csv", "--jobs", "2")
    assert code == code2 == 0
    assert a == b
    assert [(r["lambda"], r["mu"]) for r in csv_rows(a)] == [("0", "0"), ("0", "1/2"), ("1", "1"), ("1", "3/2")]


def test_empty_and_generic_grids(capsys):
    code, out, _ = run(capsys, "sweep", "--lambda", "", "--delta", "0", "--format", "csv")
    assert code == 0
    assert out.strip() == ",".join(FIELDS)
    code, out, _ = run(capsys, "sweep", "--lambda", "1,2", "--delta", "1,-1", "--format", "csv")
    assert code == 0
    assert all(r["dim_even"] == r["dim_odd"] == "0" for r in csv_rows(out))


def test_verify_and_table_check(capsys):
    code, out, _ = run(capsys, "verify", "--k", "3")
    assert code == 0 and out.startswith("PASS lambda=-1 mu=3/2")
    code, out, _ = run(capsys, "verify", "--lambda", "2/5", "--mu", "2/5", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = run(capsys, "table-check")
    assert code == 0 and "PASS" in out


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--lambda", "-1/2", "--mu", "1", "--order", "0")
    assert code == 1
    assert out.startswith("FAIL")


def test_unstabilized_exit_code(capsys):
    # the order 3 generator at k=2 is out of reach at N=2 but visible at N=4
    code, out, _ = run(capsys, "dims", "--lambda", "-1/2", "--mu", "1", "--order", "2", "--format", "csv")
    assert code == 3
    assert csv_rows(out)[0]["stabilized"] == "false"


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--lambda", "0", "--mu", "1/2")
    assert code == 0
    assert "dim=1" in out and "h f'" in out


def test_catalogue(capsys):
    code, out, _ = run(capsys, "catalogue", "--k", "1", "--format", "csv")
    assert code == 0
    names = [r["name"] for r in csv_rows(out)]
    assert names == ["Upsilon_1", "Upsilon~_1", "C_1", "C~_1"]


@pytest.mark.parametrize(
    "argv,token",
    [
        (["dims", "--lambda", "0.5", "--mu", "1"], "0.5"),
        (["dims", "--lambda", "1/x", "--mu", "1"], "1/x"),
        (["sweep", "--lambda", "0,1.5", "--delta", "0"], "1.5"),
        (["sweep", "--lambda", "0:1", "--delta", "0"], "0:1"),
    ],
)
def test_parse_errors(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert token in err and "position" in err


def test_usage_errors(capsys):
    assert run(capsys, "dims", "--lambda", "0")[0] == 2
    assert run(capsys, "verify", "--k", "0")[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ospcohom", "dims", "--lambda", "1/3", "--mu", "1/3", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["label"] == "diagonal"
