import json
import subprocess
import sys

import pytest

from qforms import verify
from qforms import table1 as golden
from qforms.cli import dispatch
from qforms.factor import Factorization


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data
    return code, data


def test_construct_e1(capsys):
    code, out, _ = run(capsys, "construct", "--y", "1", "--p", "7", "--n", "3", "--m", "3", "--c", "2")
    assert code == 0
    assert "z = 324" in out and "105301" in out and "343" in out
    code, data = run_json(capsys, "construct", "--y", "1", "--p", "7", "--n", "3", "--m", "3", "--c", "2")
    assert (data["z"], data["Q"], data["divisor"], data["Q_over_divisor"]) == ("324", "105301", "343", "307")
    assert Factorization.from_json(data["factorization"]).as_dict() == {7: 3, 307: 1}


def test_q(capsys):
    code, out, _ = run(capsys, "q", "2", "1", "5")
    assert code == 0 and out.splitlines()[0] == "31"


def test_table1_exit_zero(capsys):
    code, out, _ = run(capsys, "table1", "--format", "tsv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].split("\t") == ["y", "z", "n", "Q", "factorization", "largest_prime", "p_gt_z"]
    assert len(lines) == 43
    assert lines[1].split("\t")[:4] == ["5", "6", "3", "91"]


def test_table1_mismatch_exit_one(capsys, monkeypatch):
    bad = list(golden.TABLE1)
    bad[8] = (5, 16, 3, 361, "19*19", "23")
    monkeypatch.setattr(golden, "TABLE1", tuple(bad))
    code, out, _ = run(capsys, "table1")
    assert code == 1 and "y=5, z=16" in out


def test_unknown_subcommand_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        dispatch(["frobnicate"])
    assert exc.value.code == 2


def test_bad_input_exit_two(capsys):
    code, _, err = run(capsys, "construct", "--y", "1", "--p", "5", "--n", "3", "--m", "1")
    assert code == 2 and "does not divide" in err
    code, _, _ = run(capsys, "q", "3", "3", "3")
    assert code == 2


def test_scan_exit_codes(capsys):
    code, data = run_json(capsys, "scan", "--n", "5", "--ymax", "10", "--zmax", "30")
    assert code == 0 and data["counterexamples"] == []
    code, data = run_json(capsys, "scan", "--n", "3", "--ymax", "1", "--zmax", "20")
    assert code == 1
    assert data["counterexamples"] == [{"y": "1", "z": "16"}, {"y": "1", "z": "18"}]


def test_scan_tsv_flag(capsys):
    code, out, _ = run(capsys, "scan", "--n", "5", "--ymax", "2", "--zmax", "5", "--tsv")
    assert out.splitlines()[0].startswith("y\tz\tn\tQ")


def test_scan_threads_do_not_change_output(capsys):
    args = ("scan", "--n", "5", "--ymax", "6", "--zmax", "20", "--format", "tsv")
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--threads", "2")
    assert serial == parallel


def test_env_fallbacks(capsys, monkeypatch):
    monkeypatch.setenv("QF_RHO_BUDGET", "1")
    code, data = run_json(capsys, "factor", str((2**61 - 1) * (2**89 - 1)))
    assert code == 1 and data["complete"] is False
    monkeypatch.setenv("QF_RHO_BUDGET", "lots")
    code, _, err = run(capsys, "factor", "91")
    assert code == 2 and "QF_RHO_BUDGET" in err
    monkeypatch.delenv("QF_RHO_BUDGET")
    monkeypatch.setenv("QF_THREADS", "2")
    code, _, _ = run(capsys, "table1")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "--z", "324", "--y", "1", "--n", "3", "--p", "7", "--m", "3"),
        ("xi", "--y", "1", "--p", "7", "--n", "3", "--m", "3"),
        ("crt", "--y", "1", "--n", "3", "--part", "7,1,2", "--part", "13,1,4"),
        ("sum", "--p", "7", "--n", "3", "--m", "3", "--c", "2"),
        ("primroot", "487"),
        ("q", "16", "5", "3"),
        ("factor", "105301"),
        ("table1",),
        ("goormaghtigh",),
        ("mersenne", "--n", "11"),
        ("probe", "--n", "3", "--ymax", "20", "--zmax", "50"),
        ("verify", "--only", "construction"),
    ],
)
def test_json_round_trip(capsys, argv):
    code, data = run_json(capsys, *argv)
    assert code == 0
    assert isinstance(data, dict)


def test_json_values(capsys):
    _, data = run_json(capsys, "xi", "--y", "1", "--p", "7", "--n", "3", "--m", "3")
    assert data["residues"] == ["18", "324"] and data["modulus"] == "343"
    _, data = run_json(capsys, "crt", "--y", "1", "--n", "3", "--part", "7,1,2", "--part", "13,1,4")
    assert (data["z"], data["modulus"], data["Q"]) == ("16", "91", "273")
    assert [(p["M"], p["q"]) for p in data["parts"]] == [("13", "6"), ("7", "2")]
    _, data = run_json(capsys, "primroot", "487")
    assert data["r"] == "3" and data["orders"]["2"] == "236682"
    _, data = run_json(capsys, "sum", "--p", "7", "--n", "3", "--m", "3", "--c", "2")
    assert data["terms"] == ["1", "324", "18"] and data["residue"] == "0"


def test_large_integers_stay_exact(capsys):
    n = 2**127 - 1
    _, data = run_json(capsys, "factor", str(n))
    assert data["factors"] == [{"prime": str(n), "exponent": 1}]


def test_verify_all_and_only(capsys):
    code, data = run_json(capsys, "verify")
    assert code == 0 and data["ok"]
    assert {r["name"] for r in data["reports"]} == set(verify.FIXTURES)
    code, data = run_json(capsys, "verify", "--only", "construction")
    assert [r["name"] for r in data["reports"]] == ["construction"]


def test_verify_names_corrupted_fixture(capsys, monkeypatch):
    bad = dict(verify.PUBLISHED_VALUES)
    bad["construction"] = dict(bad["construction"], Q=105302)
    monkeypatch.setattr(verify, "PUBLISHED_VALUES", bad)
    code, out, _ = run(capsys, "verify")
    assert code == 1
    failing = [line for line in out.splitlines() if line.startswith("[FAIL]")]
    assert failing and all("construction" in line for line in failing)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qforms", "q", "90", "1", "3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("8191")
