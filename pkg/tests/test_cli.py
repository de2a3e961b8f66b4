import json
import subprocess
import sys

import pytest

from algchar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_document(capsys):
    code, out, _ = run(capsys, "algebra", "--n", "3", "--q", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["dim"] == 3 and doc["associative"]


def test_output_is_deterministic(capsys):
    argv = ("analyze", "--n", "4", "--q", "3", "--lambda", "e*(1,4)+e*(2,3)")
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a[0] == b[0] == 0 and a[1] == b[1]


def test_cache_is_byte_identical(capsys, tmp_path):
    argv = ("count", "by-degree", "--n", "4", "--q", "2", "--lambda", "e*(1,4)", "--cache-dir", str(tmp_path))
    cold = run(capsys, *argv)
    assert any(tmp_path.rglob("*.json"))
    warm = run(capsys, *argv)
    assert cold[0] == warm[0] == 0 and cold[1] == warm[1]


def test_table_format(capsys):
    code, out, _ = run(capsys, "chain", "--n", "4", "--q", "2", "--lambda", "e*(1,4)", "--format", "table")
    assert code == 0 and "s_chain" in out and not out.lstrip().startswith("{")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "chain", "--n", "3", "--q", "2", "--lambda", "e*(3,1)")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "algebra", "--algebra", "file")
    assert code == 2


def test_capacity_exit(capsys):
    code, out, err = run(capsys, "orbit", "--n", "13", "--q", "2", "--lambda", "e*(1,13)",
                         "--enumerate", "--guard-bytes", "1000")
    assert code == 3 and out == "" and "resource limit" in err


@pytest.mark.parametrize("example", ["q8", "ut5-odd"])
def test_reproduce(capsys, example):
    code, out, _ = run(capsys, "reproduce", example)
    assert code == 0
    assert json.loads(out)["example"] == example


def test_oracle_verbs(capsys):
    code, out, _ = run(capsys, "oracle", "irr", "--n", "3", "--q", "3")
    assert code == 0 and json.loads(out)["count"] == 11
    code, out, _ = run(capsys, "oracle", "is-character", "--n", "3", "--q", "3", "--char", "xi",
                       "--lambda", "e*(1,3)")
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "algchar", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()
