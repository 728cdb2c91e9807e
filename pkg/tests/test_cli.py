import json
import subprocess
import sys

import pytest

from triality import cli

FAST = [
    ["classify", "--u", "1", "--t", "-1"],
    ["levis"],
    ["branching"],
    ["compalg-check", "--samples", "5", "--seed", "2"],
    ["satake-fibers", "--random", "40", "--seed", "1"],
    ["eta", "--u", "2", "--t1", "z3", "--t2", "1/2", "--t3", "-1"],
    ["ramanujan", "--n", "3"],
    ["heisweil", "--level", "mu2"],
]


def _text(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("argv", FAST, ids=lambda a: a[0])
def test_subcommands_pass_and_are_deterministic(argv, capsys):
    code, first = _text(argv, capsys)
    _, second = _text(argv, capsys)
    assert code == 0
    assert first == second


@pytest.mark.parametrize("argv", FAST, ids=lambda a: a[0])
def test_json_schema(argv, capsys):
    code, out = _text(["--json", *argv], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == 1
    assert data["command"] == argv[0]
    assert data["ok"] is True
    assert all(set(c) == {"name", "ok", "witness"} for c in data["checks"])
    assert json.loads(json.dumps(data)) == data


def test_required_strings(capsys):
    assert "single: 21/65, sum: 42/65" in _text(["ramanujan", "--n", "3"], capsys)[1]
    assert "single: 5/21, sum: 10/21" in _text(["ramanujan", "--n", "3", "--delta", "5/14"], capsys)[1]
    assert "dim 6, type A1xA1 (so4)" in _text(["classify", "--u", "1", "--t", "-1"], capsys)[1]
    assert "dim 8, type A2 (sl3)" in _text(["classify", "--u", "z3", "--t", "1"], capsys)[1]
    assert "shape: 4+4" in _text(["heisweil", "--level", "c4"], capsys)[1]


def test_no_decimals_in_ramanujan(capsys):
    out = _text(["ramanujan", "--n", "5", "--delta", "1/7"], capsys)[1]
    assert "." not in out.splitlines()[0]


def test_run_returns_report():
    report = cli.run(["eta", "--u", "3"])
    assert report.command == "eta"
    assert report.payload["diag"] == ["3", "3", "1/9"]
    assert report.ok


def test_failed_check_gives_nonzero_exit_and_witness(monkeypatch, capsys):
    import triality.heisweil as hw

    monkeypatch.setitem(hw.EXPECTED_SHAPES, "c4", (8,))
    code, out = _text(["heisweil", "--level", "c4"], capsys)
    assert code == 1
    assert "[FAIL] shape 8: 4+4" in out


def test_bad_input_exit_code(capsys):
    assert cli.main(["classify", "--u", "0", "--t", "1"]) == 2
    assert "error" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "triality", "ramanujan"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "single: 21/65, sum: 42/65"
