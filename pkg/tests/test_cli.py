import json
import shutil
import subprocess
import sys

import pytest

from lct_kit.cli import main


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


@pytest.fixture
def x2y3(tmp_path):
    return write(tmp_path, "ideal.json", {"format": "lct-kit/1", "n": 2, "generators": [[2, 0], [0, 3]]})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lct(capsys, x2y3):
    assert run(capsys, "lct", x2y3) == (0, "5/6\n", "")
    code, out, _ = run(capsys, "lct", x2y3, "--json")
    assert code == 0 and json.loads(out)["lct"] == "5/6"


def test_scalar_verbs(capsys, x2y3):
    assert run(capsys, "colength", x2y3)[1] == "6\n"
    assert run(capsys, "samuel", x2y3)[1] == "6\n"
    code, out, _ = run(capsys, "newton", x2y3, "--json")
    data = json.loads(out)
    assert data["facets"] == [["1/2", "1/3"]] and data["covolume"] == "3"
    code, out, _ = run(capsys, "jets", x2y3, "--json")
    assert json.loads(out)["lct"] == "5/6"


def test_pair_lt(capsys, tmp_path):
    path = write(tmp_path, "pair.json", {"n": 2, "generators": [[2, 0], [0, 3]], "b": ["0", "-1/2"], "mu": "9/10"})
    code, out, _ = run(capsys, "pair-lt", path)
    assert code == 0 and out.startswith("not log terminal") and "11/12" in out
    path = write(tmp_path, "bad.json", {"n": 2, "generators": [[2, 0], [0, 3]]})
    assert run(capsys, "pair-lt", path)[0] == 2


def test_mult_ideal_output_feeds_other_verbs(capsys, x2y3, tmp_path):
    code, out, _ = run(capsys, "mult-ideal", x2y3, "--c", "5/6", "--json")
    data = json.loads(out)
    assert code == 0 and data["generators"] == [[1, 0], [0, 1]] and data["trivial"] is False
    path = write(tmp_path, "j.json", data)
    assert run(capsys, "lct", path)[1] == "2\n"
    assert run(capsys, "mult-ideal", x2y3, "--c", "0.5")[0] == 2


def test_cone_bound_and_example(capsys, tmp_path):
    path = write(tmp_path, "cube.json", {"n": 3, "generators": [[3, 0, 0], [2, 1, 0], [1, 2, 0], [0, 3, 0]]})
    code, out, _ = run(capsys, "cone-bound", path, "--degree", "3")
    assert code == 0 and "equality" in out and "audit ok" in out
    assert run(capsys, "cone-bound", path, "--degree", "2")[0] == 2
    code, out, _ = run(capsys, "example", "--family", "power", "--k", "3", "--t-max", "20", "--json")
    data = json.loads(out)
    assert len(data["rows"]) == 20 and all(r["strict"] for r in data["rows"])


def test_verify_and_rigidity(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle-lct", "--trials", "100", "--seed", "1")
    assert code == 0 and out.rstrip().endswith("PASS")
    assert run(capsys, "verify", "--suite", "theorem2", "--trials", "0")[0] == 2
    code, out, _ = run(capsys, "rigidity", "--n-min", "4", "--n-max", "13", "--json")
    rows = json.loads(out)["rows"]
    assert [r["contradiction"] for r in rows] == [True] * 9 + [False]


def test_output_is_deterministic(capsys, x2y3):
    first = run(capsys, "verify", "--suite", "multiplier", "--trials", "30", "--seed", "9", "--json")
    again = run(capsys, "verify", "--suite", "multiplier", "--trials", "30", "--seed", "9", "--json")
    assert first == again
    assert run(capsys, "jets", x2y3) == run(capsys, "jets", x2y3)


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "lct", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run(capsys, "lct", str(bad))[0] == 2
    assert run(capsys, "lct", write(tmp_path, "neg.json", {"n": 1, "generators": [[-1]]}))[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys)[0] == 2
    unit = write(tmp_path, "unit.json", {"n": 2, "generators": [[0, 0]]})
    assert run(capsys, "lct", unit)[0] == 2
    line = write(tmp_path, "line.json", {"n": 2, "generators": [[1, 0]]})
    assert run(capsys, "colength", line)[0] == 2


def test_strict_flag(capsys, tmp_path):
    path = write(tmp_path, "nm.json", {"n": 2, "generators": [[1, 0], [2, 0], [0, 1]]})
    code, out, err = run(capsys, "lct", path)
    assert code == 0 and out == "2\n" and "warning" in err
    code, _, err = run(capsys, "lct", path, "--strict")
    assert code == 2 and "minimal" in err


@pytest.mark.skipif(shutil.which("lct-kit") is None, reason="console script not installed")
def test_console_script(x2y3):
    proc = subprocess.run(["lct-kit", "lct", x2y3], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "5/6\n"
    proc = subprocess.run([sys.executable, "-m", "lct_kit", "lct", "missing.json"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_failed_check_exits_one_with_instance_on_stderr(capsys, tmp_path, monkeypatch):
    from fractions import Fraction

    from lct_kit import cones

    fake = cones.ConeReport(d=2, c=Fraction(1, 4), e=1, bound_holds=False, equality=False)
    monkeypatch.setattr(cones, "cone_bound_report", lambda ideal, d=None: fake)
    path = write(tmp_path, "sq.json", {"n": 2, "generators": [[2, 0], [1, 1], [0, 2]]})
    code, out, err = run(capsys, "cone-bound", path)
    assert code == 1
    assert json.loads(err.strip().splitlines()[-1])["bound_holds"] is False
