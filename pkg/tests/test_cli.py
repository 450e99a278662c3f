import json
import subprocess
import sys

import pytest

from pisoliton.cli import main
from pisoliton.fixtures import example_spec_path
from pisoliton.scalar import ParamSet, parse

BAD_JACOBI = """\
name = broken
dim = 3
[brackets]
[e0, e1] = e1
[e1, e2] = e0
[xi]
e0
[eta]
1 0 0
[phi]
e1 = e2
e2 = e1
"""


def _run(capsysbinary, *argv):
    code = main(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out, out.err


def test_run_is_byte_identical(capsysbinary):
    code1, out1, _ = _run(capsysbinary, "run", str(example_spec_path()), "--format", "json")
    code2, out2, _ = _run(capsysbinary, "run", str(example_spec_path()), "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["ricci.nonzero"] == [["0", "0", "-4"]]


def _walk_strings(value):
    if isinstance(value, str):
        yield value
    elif isinstance(value, list):
        for v in value:
            yield from _walk_strings(v)


SCALAR_KEYS = (".a", ".b", ".c", ".lambda", ".mu", ".nu", ".k", ".tau", ".tau_tilde", ".constant",
               ".nonzero", ".alpha", ".beta")


def test_emitted_scalars_reparse(capsysbinary):
    _, out, _ = _run(capsysbinary, "run", "builtin", "--format", "json")
    doc = json.loads(out)
    params = ParamSet(tuple(doc["symbols"]))
    checked = 0
    for key, value in doc.items():
        if not key.endswith(SCALAR_KEYS) or value is None:
            continue
        for text in _walk_strings(value):
            x = parse(text, params)
            assert str(x) == text
            checked += 1
    assert checked > 50


def test_substitution_flag(capsysbinary):
    code, out, _ = _run(capsysbinary, "run", "builtin", "--set", "p=2", "--set", "q=-1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["input.substitutions"] == {"p": "2", "q": "-1"}
    assert doc["connection.nonzero"][0] == ["0", "1", "2", "2"]


def test_check_subcommand(capsysbinary):
    code, out, _ = _run(capsysbinary, "check", "builtin", "einstein_like", "soliton_reeb", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["checks.order"] == ["einstein_like", "soliton_reeb"]


def test_exit_code_failure(tmp_path, capsysbinary):
    path = tmp_path / "broken.pis"
    path.write_text(BAD_JACOBI)
    code, out, _ = _run(capsysbinary, "run", str(path))
    assert code == 1
    assert b"jacobi.holds: false" in out


@pytest.mark.parametrize("argv", [
    ["run", "missing.pis"],
    ["run", "builtin", "--set", "p=abc"],
    ["run", "builtin", "--set", "zz=1"],
    ["check", "builtin", "nonsense"],
    ["frobnicate"],
])
def test_exit_code_input_error(argv, capsysbinary):
    code, _, _ = _run(capsysbinary, *argv)
    assert code == 2


def test_validate_and_bad_syntax(tmp_path, capsysbinary):
    assert _run(capsysbinary, "validate", "builtin")[0] == 0
    path = tmp_path / "bad.pis"
    path.write_text(BAD_JACOBI.replace("[e0, e1] = e1", "[e0, e1] = 2e1"))
    code, _, err = _run(capsysbinary, "validate", str(path))
    assert code == 2 and b":4:13:" in err


def test_console_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "pisoliton.cli", "run", "builtin", "--format", "json", "-o",
                           str(out)], capture_output=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())["exit_code"] == 0
