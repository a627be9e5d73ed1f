import csv
import io
import json
import subprocess
import sys

import pytest

from hookcal.cli import RunConfig, exit_status, main, run_verify
from hookcal.report import Identity, VerificationReport


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_all_small():
    code, text = run("verify", "--nmax", "3", "--mode", "all")
    assert code == 0
    assert "FAIL" not in text
    for ident in Identity:
        assert ident.value in text


def test_verify_enumerate_n1_json():
    code, text = run("verify", "--nmax", "1", "--mode", "enumerate", "--output", "json", "--identity", "eq1")
    assert code == 0
    (report,) = json.loads(text)
    assert report["identity"] == "Eq1"
    assert report["lhs"] == "1" and report["rhs"] == "1"
    assert report["verified"] is True
    assert report["object_count"] == 1


def test_capacity_refusal(capsys):
    code, text = run("verify", "--nmax", "40", "--mode", "enumerate")
    assert code == 2
    err = capsys.readouterr().err
    assert "Catalan(40)" in err and "2622127042276492108820" in err


def test_env_cap_overrides_flag(monkeypatch, capsys):
    monkeypatch.setenv("HOOKCAL_CAP", "10")
    code, _ = run("verify", "--nmax", "6", "--mode", "enumerate", "--cap", "1000000")
    assert code == 2
    assert "Catalan(6)" in capsys.readouterr().err
    monkeypatch.setenv("HOOKCAL_CAP", "42")
    code, _ = run("verify", "--nmax", "5", "--mode", "enumerate", "--cap", "1")
    assert code == 0


def test_bad_env_cap(monkeypatch):
    monkeypatch.setenv("HOOKCAL_CAP", "lots")
    assert run("table", "--nmax", "2")[0] == 2


def test_usage_errors():
    assert run("verify", "--nmax", "0")[0] == 2
    assert run("frobnicate", "--nmax", "2")[0] == 2
    assert run("verify", "--nmax", "2", "--mode", "recurrence", "--identity", "eq1")[0] == 2


def test_json_is_sorted_and_stable():
    argv = ("verify", "--nmax", "4", "--mode", "all", "--output", "json")
    first = json.loads(run(*argv)[1])
    second = json.loads(run(*argv)[1])
    strip = lambda rows: [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in rows]
    assert strip(first) == strip(second)
    order = [i.value for i in Identity]
    keys = [(order.index(r["identity"]), r["n"]) for r in first]
    assert keys == sorted(keys)


def test_parallel_output_matches_serial():
    base = ("verify", "--nmax", "5", "--mode", "all", "--output", "json")
    serial = json.loads(run(*base)[1])
    parallel = json.loads(run(*base, "--parallelism", "3")[1])
    drop = lambda rows: [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in rows]
    assert drop(serial) == drop(parallel)


def test_csv_output():
    code, text = run("verify", "--nmax", "2", "--mode", "recurrence", "--output", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert {r["identity"] for r in rows} == {"Eq3-vs-closed-form", "Eq5", "F-equals-nplus1-Tnplus1"}
    assert all(r["lhs"] == r["rhs"] for r in rows)


def test_text_shows_both_sides():
    _, text = run("verify", "--nmax", "2", "--mode", "closed-form", "--identity", "split")
    assert "lhs=9/4  rhs=9/4" in text


def test_exhaustive_eq4_by_name():
    code, text = run("verify", "--nmax", "6", "--mode", "enumerate", "--identity", "eq4", "--output", "json")
    assert code == 0
    reports = json.loads(text)
    assert [r["n"] for r in reports] == list(range(1, 7))
    assert reports[-1]["lhs"] == str(2 * 6 * 7**5)
    assert run("verify", "--nmax", "7", "--mode", "enumerate", "--identity", "eq4")[0] == 2


def test_table_rows():
    code, text = run("table", "--nmax", "3", "--output", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0] == {"n": "0", "catalan": "1", "T_n": "-", "R_n": "-", "F_n": "1", "(n+1)^n": "1", "(n+1)^(n-1)": "-"}
    assert [rows[1][k] for k in ("catalan", "T_n", "R_n", "F_n", "(n+1)^(n-1)")] == ["1", "1", "1", "2", "1"]
    assert [rows[3][k] for k in ("catalan", "T_n", "R_n", "F_n", "(n+1)^(n-1)")] == ["5", "3", "9", "64", "16"]


def test_table_text_and_json():
    code, text = run("table", "--nmax", "4")
    assert code == 0 and "625" in text
    code, text = run("table", "--nmax", "4", "--output", "json")
    assert json.loads(text)[4]["F_n"] == "625"


@pytest.mark.parametrize("nmax, objects", [(1, 2), (2, 12)])
def test_bijection(nmax, objects):
    code, text = run("bijection", "--nmax", str(nmax), "--output", "json")
    assert code == 0
    report = json.loads(text)
    assert report["marked_count"] == report["pair_count"] == objects
    assert report["decompose_failures"] == report["compose_failures"] == 0


def test_bijection_text_and_capacity():
    code, text = run("bijection", "--nmax", "3")
    assert code == 0 and "edge-marked trees:      96" in text
    assert run("bijection", "--nmax", "7")[0] == 2


def test_split_check():
    code, text = run("split-check", "--nmax", "25", "--output", "json")
    assert code == 0
    assert len(json.loads(text)) == 25


def test_exit_status_on_mismatch():
    bad = VerificationReport(Identity.EQ1, 1, 1, 2, "a", "b")
    good = VerificationReport(Identity.EQ1, 2, 3, 3, "a", "b")
    assert exit_status([good]) == 0
    assert exit_status([good, bad]) == 1


def test_run_verify_config_object():
    reports = run_verify(RunConfig("verify", nmax=3, mode="recurrence", identities=("link",)))
    assert [r.n for r in reports] == [1, 2, 3]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hookcal", "verify", "--nmax", "2", "--mode", "recurrence"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "identities verified" in proc.stdout
