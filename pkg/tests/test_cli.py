import json
import subprocess
import sys

import pytest

from artinian_forms.cli import main

SCRIPT = "field Q\nA = trunc(s, 4)\nB = present(x, y; 2)\no: omega B\n"


@pytest.fixture
def script(tmp_path):
    p = tmp_path / "a.alg"
    p.write_text(SCRIPT)
    return p


def test_run_text(script, capsys):
    assert main(["run", str(script)]) == 0
    assert capsys.readouterr().out == "o: dim 3: dx, y*dx, dy\n"


def test_run_json(script, capsys):
    assert main(["run", "--json", str(script)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["results"][0]["payload"]["dim"] == 3


def test_run_with_diagnostic(tmp_path, capsys):
    p = tmp_path / "bad.alg"
    p.write_text("field Q\nomega A\n")
    assert main(["run", str(p)]) == 1
    assert "line 2, column 7" in capsys.readouterr().out


def test_missing_file_is_usage_error(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.alg")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_bad_max_dim(script):
    assert main(["run", "--max-dim", "0", str(script)]) == 2


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as ei:
        main(["hh", "--degree", "3", "--algebra", "x"])
    assert ei.value.code == 2


def test_hh_defaults_to_last_algebra(script, capsys):
    assert main(["hh", "--algebra", str(script), "--degree", "1"]) == 0
    assert capsys.readouterr().out.strip() == "HH_1(B) has dimension 3"
    assert main(["hh", "--algebra", str(script), "--degree", "0", "--name", "A", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 4
    assert main(["hh", "--algebra", str(script), "--degree", "0", "--name", "Z"]) == 1


def test_hh_respects_cap(script, capsys):
    assert main(["hh", "--algebra", str(script), "--degree", "2", "--max-dim", "10"]) == 1
    assert "cap" in capsys.readouterr().err


def test_verify_single_case(capsys):
    assert main(["verify-paper", "--case", "wild-a-*"]) == 0
    out = capsys.readouterr().out
    assert "PASS wild-a-F5" in out and "PASS wild-a-Q" in out


def test_verify_unknown_case_warns(capsys):
    assert main(["verify-paper", "--case", "no-such-case", "--json"]) == 0
    cap = capsys.readouterr()
    assert "no corpus case" in cap.err
    assert json.loads(cap.out)["cases"] == []


def test_properties_small(capsys):
    assert main(["properties", "--count", "5", "--check", "grassmann", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["results"]["grassmann"] == {"runs": 5, "failures": []}


def test_module_entry_point(script):
    out = subprocess.run([sys.executable, "-m", "artinian_forms", "run", str(script)],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("o: ")
