import json
import subprocess
import sys

import pytest

from frobhh.cli import main, parse_constructor, run
from frobhh.errors import ParseError


def _run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize(
    "args,code",
    [
        (["analyze", "--constructor", "taft:2"], 0),
        (["analyze", "--constructor", "matrix:2"], 0),
        (["hh", "--constructor", "truncated:2"], 0),
        (["theorem-a", "--constructor", "taft:2"], 0),
        (["theorem-b", "--constructor", "taft:3", "--max-degree", "2"], 0),
        (["props", "--constructor", "truncated:2"], 0),
        (["hopf-check", "--constructor", "taft:2"], 0),
        (["hopf-check", "--constructor", "cyclic:3"], 0),
        (["hh", "--constructor", "matrix:2", "--p", "12"], 2),
        (["analyze", "--constructor", "taft:5"], 2),
        (["hopf-check", "--constructor", "matrix:2"], 2),
        (["hh", "--constructor", "taft:2", "--max-degree", "-1"], 2),
    ],
)
def test_exit_codes(args, code, capsys):
    got, out = _run(args, capsys)
    assert got == code
    rep = json.loads(out)
    assert rep["config"]["subcommand"] == args[0]
    assert rep["pass"] is (code == 0)


def test_analyze_taft2(capsys):
    _, out = _run(["analyze", "--constructor", "taft:2"], capsys)
    rep = json.loads(out)
    assert rep["m"] == 2
    assert rep["grading"]["dims"] == [2, 2]
    assert rep["grading"]["strongly_graded"] is True


def test_hh_truncated(capsys):
    _, out = _run(["hh", "--constructor", "truncated:2"], capsys)
    assert json.loads(out)["dims"] == [2, 1, 1, 1]


def test_malformed_json(tmp_path, capsys):
    f = tmp_path / "a.json"
    f.write_text('{"field": 13,\n "dim": }')
    code, out = _run(["hh", "--input", str(f)], capsys)
    err = json.loads(out)["error"]
    assert code == 2
    assert err["type"] == "ParseError" and "line 2" in err["message"]
    assert err["module"] == "algebra"


def test_input_file(tmp_path, capsys):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"constructor": "taft", "N": 2, "field": 13}))
    code, out = _run(["theorem-a", "--input", str(f), "--max-degree", "2"], capsys)
    assert code == 0


def test_out_and_table(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert main(["theorem-a", "--constructor", "taft:2", "--table", "--out", str(out)]) == 0
    text = out.read_text()
    assert "HH_1^n" in text and "overall: PASS" in text
    assert capsys.readouterr().out == ""


def test_failed_check_exits_one(capsys):
    code, out = _run(["hopf-check", "--constructor", "taft:3"], capsys)
    rep = json.loads(out)
    assert code == 1
    assert rep["hopf"]["pass"] is True
    assert rep["checks"]["example_rho_g"] is False


def test_timings_only_on_request():
    rep, _, _ = run(["hh", "--constructor", "truncated:2"])
    assert "timings_ms" not in rep
    rep, _, _ = run(["hh", "--constructor", "truncated:2", "--timings"])
    assert rep["timings_ms"]["total"] >= 0


def test_budget_env_is_echoed(monkeypatch):
    monkeypatch.setenv("FROBHH_MEM_BUDGET_MB", "0")
    rep, code, _ = run(["theorem-a", "--constructor", "taft:3"])
    assert rep["config"]["mem_budget_mb"] == 0
    assert code == 2 and rep["error"]["type"] == "DegreeTooLarge"


@pytest.mark.parametrize("spec", ["nope:2", "taft", "matrix:x", "matrix:2:3"])
def test_bad_constructor(spec):
    with pytest.raises(ParseError):
        parse_constructor(spec, 13)


def test_console_script_is_byte_identical():
    cmd = [sys.executable, "-m", "frobhh.cli", "props", "--constructor", "taft:2"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0
    assert a.stdout == b.stdout
