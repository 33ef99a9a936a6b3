import io
import json
import subprocess
import sys

import pytest

from lerchmock.cli import evaluate, export_coeffs, main, parse_params, parse_value
from lerchmock.errors import ConfigInvalid, UnknownFamily
from lerchmock.series import FormalSeries


def run(*argv):
    buf = io.StringIO()
    rc = main(list(argv), out=buf)
    return rc, buf.getvalue()


def test_parse_value():
    from fractions import Fraction
    assert parse_value("3") == 3
    assert parse_value("1/2") == Fraction(1, 2)
    assert parse_value("0.25") == 0.25
    assert parse_value("0.1+0.9i") == complex(0.1, 0.9)
    assert parse_value("2j") == 2j
    assert parse_value("inf") == float("inf")
    assert parse_params(["a=3,b=1/2", "z=0.9i"]) == {"a": 3, "b": Fraction(1, 2), "z": 0.9j}
    with pytest.raises(ConfigInvalid):
        parse_params(["a"])


def test_coeffs_csv_rows():
    rc, text = run("coeffs", "f", "--order", "6")
    assert rc == 0
    rows = [tuple(map(int, line.split(","))) for line in text.splitlines()[1:]]
    assert rows == [(0, 1, 1), (1, 1, 1), (2, -2, 1), (3, 3, 1), (4, -3, 1), (5, 3, 1), (6, -5, 1)]


def test_coeffs_order_zero():
    text = export_coeffs("fc", {"a": 3, "b": 1, "c": 2}, 0)
    assert text.splitlines()[1:] == ["0,1,1"]


def test_coeffs_json_round_trip(tmp_path):
    path = tmp_path / "psi.json"
    rc, _ = run("coeffs", "psi", "--order", "30", "--format", "json", "--json", str(path))
    assert rc == 0
    data = path.read_bytes()
    s = FormalSeries.from_json(data.decode())
    assert s.to_json() + "\n" == data.decode()
    assert set(json.loads(data)) == {"offset_num", "offset_den", "order", "coeffs"}
    # deterministic bytes
    assert export_coeffs("psi", None, 30, "json") == data.decode()


def test_coeffs_with_params_and_offsets():
    rc, text = run("coeffs", "W4", "--params", "a=1,p=3", "--order", "4")
    assert rc == 0 and text.splitlines()[1].startswith("-1/12,")


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        export_coeffs("nope", None, 5)
    rc, _ = run("coeffs", "nope")
    assert rc == 2


def test_eval_text_and_json(tmp_path):
    rc, text = run("eval", "eta", "0.1")
    value, err = text.split(" ± ")
    assert rc == 0 and abs(complex(value.replace("i", "j")) - 0.890010099998999057) < 1e-15
    path = tmp_path / "f.json"
    rc, _ = run("eval", "f", "0.3+0.2i", "--json", str(path))
    rec = json.loads(path.read_text())
    assert abs(complex(*rec["value"]) - (1.19798807101741757 + 0.0665615616721306j)) < 1e-13


def test_eval_argument_count():
    with pytest.raises(ConfigInvalid):
        evaluate("theta3", ["0.1"])
    assert abs(evaluate("fs", ["3", "1", "0.8i", "2"]).value) > 0


def test_verify_exit_codes(tmp_path):
    path = tmp_path / "r.json"
    rc, text = run("verify", "thm1-*", "--json", str(path))
    assert rc == 0 and "1/1 passed" in text
    reps = json.loads(path.read_text())
    assert isinstance(reps, list) and reps[0]["status"] == "pass"
    assert run("verify", "thm4-*")[0] == 1
    assert run("verify", "nonexistent")[0] == 2


def test_verify_flags(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("order = 50\njobs = 2\n")
    rc, text = run("verify", "thm1-*", "--config", str(cfg), "--order", "20", "--format", "json")
    rep = json.loads(text)[0]
    assert rc == 0 and rep["params"] == {"order": 20}
    rc, text = run("verify", "thm11-*", "--seed", "9", "--format", "json")
    assert json.loads(text)[0]["seed"] == 9
    bad = tmp_path / "bad.cfg"
    bad.write_text("jobs = 0\n")
    assert run("verify", "thm1-*", "--config", str(bad))[0] == 2


def test_integral_subcommand(tmp_path):
    path = tmp_path / "i.json"
    rc, _ = run("integral", "--theorem", "10", "--params", "kind=4,a=3,b=1,z=0.9i,w=1.8i",
                "--json", str(path))
    rep = json.loads(path.read_text())
    assert rc == 0 and rep["status"] == "pass" and rep["max_abs_error"] < 1e-9
    assert run("integral", "--theorem", "3", "--params", "q=0.3")[0] == 0
    assert run("integral", "--theorem", "11")[0] == 0
    assert run("integral", "--theorem", "12", "--params", "a=3,b=1,z=0.9i,w=1.8i")[0] == 1


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "lerchmock.cli", "verify", "thm1-*"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "pass" in out.stdout
