import json
import subprocess
import sys

import pytest

from a2flats.bpoints import standard_point
from a2flats.cli import main
from a2flats.projplane import remark_triple
from a2flats.serialize import (
    InputError,
    dumps,
    point_from_json,
    point_json,
    triple_from_json,
    triple_json,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_qt(capsys):
    code, out, _ = run(capsys, "invariants", "--field", "qt", "--remark-z", "t")
    assert code == 0
    data = json.loads(out)
    assert data["Z"] == ["-1", "0", "1"] and data["triple_ratio"] == "t"
    assert data["ray_class"] == "(-,0,+)"


def test_invariants_padic(capsys):
    code, out, _ = run(capsys, "invariants", "--field", "qp:5", "--remark-z", "5")
    assert code == 0 and json.loads(out)["Z"] == ["-1", "0", "1"]


def test_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "classify", "--field", "qt", "--remark-z", "t")
    _, b, _ = run(capsys, "classify", "--field", "qt", "--remark-z", "t")
    assert a == b
    assert a == dumps(json.loads(a)) + "\n"


def test_degenerate_input_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "invariants", "--field", "qt", "--remark-z", "0")
    assert code == 2 and "degenerate" in err
    f = tmp_path / "same.json"
    flag = {"point": [1, 0, 0], "line": [0, 1, 0]}
    f.write_text(json.dumps([flag, flag, flag]))
    code, _, err = run(capsys, "invariants", "--field", "qp:3", "--input", str(f))
    assert code == 2 and "degenerate" in err


def test_positional_diagnostics(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps([
        {"point": [0, 1, 1], "line": [1, 0, 0]},
        {"point": [1, 0, 1], "line": [0, 1, 0]},
        {"point": [1, 1, "x+"], "line": [0, 0, 1]},
    ]))
    code, _, err = run(capsys, "classify", "--field", "qt", "--input", str(f))
    assert code == 2 and "flags[2].point[2]" in err
    f.write_text("[1, 2")
    code, _, err = run(capsys, "classify", "--field", "qt", "--input", str(f))
    assert code == 2 and "line 1" in err


def test_classify_non_generic_exit_2(capsys):
    code, _, err = run(capsys, "classify", "--field", "qt", "--remark-z=-1")
    assert code == 2 and "generic" in err


def test_classify_tripod(capsys):
    code, out, _ = run(capsys, "classify", "--field", "qt", "--remark-z", "-1+t")
    data = json.loads(out)
    assert code == 0 and data["type"] == "tripod"
    assert set(data["points"]) >= {"x", "x*"}
    assert data["flat_coords_src"]["A12"]["x*"] != data["flat_coords_src"]["A12"]["x"]


def test_verify_writes_file(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, stdout, _ = run(capsys, "verify", "--field", "qt", "--remark-z", "t", "--margin", "1", "--out", str(out))
    assert code == 0 and stdout == ""
    data = json.loads(out.read_text())
    assert data["ok"] and data["type"] == "flat_triangle"
    assert all(v == "pass" for v in data["verification"].values())


def test_figures(capsys, tmp_path):
    code, out, _ = run(capsys, "figure", "--field", "qt", "--remark-z", "t", "--out", str(tmp_path))
    assert code == 0
    svgs = sorted(p.name for p in tmp_path.glob("*.svg"))
    assert svgs == ["A12.svg", "A23.svg", "A31.svg", "AD.svg", "Ap.svg"]
    text = (tmp_path / "Ap.svg").read_text()
    assert text.startswith("<svg") and "<polygon" in text and "y1" in text
    one = tmp_path / "one"
    run(capsys, "figure", "--field", "qt", "--remark-z", "t", "--out", str(one), "--flat", "A12")
    assert [p.name for p in one.glob("*.svg")] == ["A12.svg"]


def test_argument_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["invariants", "--field", "qt"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "invariants", "--field", "rr", "--remark-z", "1")
    assert code == 2 and "field selector" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "a2flats", "invariants", "--field", "qt", "--remark-z", "1/t"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["Z"] == ["1", "-1", "0"]


def test_serialize_round_trips(qt):
    T = remark_triple(qt, (1 + qt.t) / qt.t)
    back = triple_from_json(qt, json.loads(dumps(triple_json(T))))
    assert back == T
    x = standard_point(qt, (1, 0, -1))
    assert point_from_json(qt, json.loads(dumps(point_json(x)))) == x
    with pytest.raises(InputError):
        triple_from_json(qt, {"flag": []})
