import json
import subprocess
import sys

import pytest

from seshadri.cli import dumps, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_epsilon1_example(capsys):
    code, out, _ = call(capsys, "epsilon1", "--type", "6", "-L", "5,11", "--digits", "2")
    assert code == 0
    assert "lower = 93/100·√110 ≈ 9.75, upper = 15, branch: type6(2)" in out


def test_epsilon_odd_example(capsys):
    code, out, _ = call(capsys, "epsilon", "--type", "7", "-L", "4,9")
    assert code == 0
    assert "ε(L) = 4 (Theorem: odd types)" in out


def test_verify_example(capsys):
    code, out, _ = call(capsys, "verify", "--type", "1", "--amax", "20", "--bmax", "20")
    assert code == 0 and out.strip().endswith("400/400 PASS")


def test_classify(capsys):
    code, out, _ = call(capsys, "classify", "--type", "6", "-L", "5,11", "--json")
    info = json.loads(out)
    assert code == 0 and info["L2"] == 110 and info["L.A"] == 33 and info["L.B"] == 15
    assert info["A"] == [3, 0] and info["B"] == [0, 3]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["classify", "--type", "1", "-L", "0,3"], 3),
        (["epsilon", "--type", "2", "-L=-1,4"], 3),
        (["epsilon", "--type", "9", "-L", "1,1"], 2),
        (["epsilon", "--type", "1", "-L", "1/2,1"], 2),
        (["pell", "--d", "4"], 2),
        (["pell"], 2),
        (["epsilon1", "--type", "6", "-L", "5,11", "--delta", "94/100"], 2),
        (["point", "--type", "1", "-L", "1,1", "--fibre-mult", "3"], 2),
        (["delta", "--value", "3/2"], 2),
        (["nosuch"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert call(capsys, *argv)[0] == code
    assert call(capsys, *argv)[0] == code


def test_point_fibre(capsys):
    code, out, _ = call(capsys, "point", "--type", "7", "-L", "4,9", "--fibre-mult", "6", "--json")
    est = json.loads(out)["estimate"]
    assert code == 0 and est["kind"] == "exact" and est["value"] == "4"


def test_pell(capsys):
    code, out, _ = call(capsys, "pell", "--d", "110", "--json")
    rec = json.loads(out)
    assert (rec["p"], rec["q"]) == (2, 21) and rec["bound"] == {"q": "220/21", "r": "0", "d": 0}
    code, out, _ = call(capsys, "pell", "--type", "6", "-L", "5,11", "--compare")
    assert code == 0 and "larger bound: pell" in out


def test_delta(capsys):
    code, out, _ = call(capsys, "delta", "--value", "94/100", "--json")
    rec = json.loads(out)
    assert rec["feasible"] is False and rec["violating_m"] == [4, 5]
    assert rec["sup_delta_squared"] == "7/8" and rec["critical_m"] == 4


def test_table(capsys):
    code, out, _ = call(capsys, "table", "--type", "6", "--amax", "2", "--bmax", "20")
    lines = out.strip().splitlines()
    assert lines[0] == "type,a,b,eps_kind,eps_branch,eps1_kind,eps1_branch"
    assert len(lines) == 41
    assert "6,2,5,unknown_with_bound,type6-gap,bounded_below,type6(2)" in lines


@pytest.mark.parametrize(
    "argv",
    [
        ["epsilon1", "--type", "6", "-L", "5,11", "--json"],
        ["epsilon", "--type", "6", "-L", "2,5", "--json"],
        ["point", "--type", "6", "-L", "5,11", "--arbitrary", "--json"],
        ["pell", "--type", "6", "-L", "5,11", "--compare", "--json"],
        ["delta", "--value", "99/100", "--json"],
        ["classify", "--type", "3", "-L", "2,7", "--json"],
        ["verify", "--type", "5", "--amax", "2", "--bmax", "2", "-M", "40", "--json"],
        ["table", "--type", "4", "--amax", "2", "--bmax", "3", "--format", "json"],
    ],
)
def test_json_roundtrip_bytes(capsys, argv):
    code, out, _ = call(capsys, *argv)
    assert code == 0
    for line in out.strip().splitlines():
        assert dumps(json.loads(line)) == line


def test_exact_values_in_json(capsys):
    _, out, _ = call(capsys, "point", "--type", "6", "-L", "5,11", "--arbitrary", "--json")
    est = json.loads(out)["estimate"]
    assert est["lower"] == {"q": "0", "r": "7/10", "d": 110}
    assert est["upper"] == {"q": "11", "r": "0", "d": 0}


def test_deterministic_output(capsys):
    argv = ["verify", "--type", "7", "--amax", "3", "--bmax", "3", "-M", "50", "--json"]
    first = call(capsys, *argv)
    assert call(capsys, *argv) == first


def test_scan_limit_env(monkeypatch, capsys):
    monkeypatch.setenv("SESHADRI_SCAN_LIMIT", "30")
    _, out, _ = call(capsys, "verify", "--type", "3", "--amax", "1", "--bmax", "1", "--json")
    assert json.loads(out)["checks"][0]["oracle"]["scan_limit"] == 30


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "seshadri", "epsilon", "--type", "7", "-L", "4,9"],
        capture_output=True, text=True, encoding="utf-8",
    )
    assert res.returncode == 0 and "ε(L) = 4" in res.stdout
