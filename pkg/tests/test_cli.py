from __future__ import annotations

import json
import subprocess
import sys
import xml.etree.ElementTree as ET

from cvectors.cli import main, read_log, replay
from cvectors.serialize import parse_int


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mutate_json(capsys):
    code, out, _ = run(capsys, "mutate", "--quiver", "q233", "--seq", "1,2,3,2,1,3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["c"] == [[433, 378, 144], [-16, -8, -3], [-24, -21, -8]]


def test_mutate_table_and_csv(capsys):
    code, out, _ = run(capsys, "mutate", "--quiver", "markov", "--seq", "1")
    assert code == 0 and "sign vector (-1, 1, 1)" in out
    code, out, _ = run(capsys, "mutate", "--quiver", "markov", "--seq", "1", "--format", "csv")
    assert out.splitlines()[0] == "0,-2,2,-1,0,0"


def test_big_entries_are_strings(capsys):
    # twelve steps on q233 already give 124-bit entries
    code, out, _ = run(capsys, "mutate", "--quiver", "q233", "--seq", ",".join(["1,2,3"] * 4), "--format", "json")
    data = json.loads(out)
    flat = [x for row in data["c"] for x in row]
    assert any(isinstance(x, str) for x in flat)
    assert all(abs(parse_int(x)) < 2**53 or isinstance(x, str) for x in flat)


def test_reflections_with_coxeter(capsys):
    code, out, _ = run(capsys, "reflections", "--quiver", "markov", "--seq", "1,2,3,2,1,3",
                       "--lambda", "2,3,1", "--rho", "3,1,2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["coxeter"]["equal"]
    assert data["coxeter"]["within_hypotheses"] is False


def test_reflections_half_flags(capsys):
    code, _, err = run(capsys, "reflections", "--quiver", "markov", "--seq", "1", "--lambda", "1,2,3")
    assert code == 2 and "together" in err


def test_lmatrix_and_gim(capsys):
    code, out, _ = run(capsys, "lmatrix", "--quiver", "fork345", "--seq", "1,3", "--format", "json")
    assert code == 0 and json.loads(out)["agree_up_to_row_sign"]
    code, out, _ = run(capsys, "gim", "--quiver", "markov", "--ordering", "1,3,2", "--format", "json")
    assert code == 0 and json.loads(out)["a"] == [[2, 2, -2], [2, 2, -2], [-2, -2, 2]]
    code, _, _ = run(capsys, "gim", "--quiver", "markov", "--ordering", "1,2,3")
    assert code == 1


def test_walk_requires_seed(capsys):
    code, _, err = run(capsys, "walk", "--n", "4")
    assert code == 2 and "rng-seed" in err
    a = run(capsys, "walk", "--n", "4", "--rng-seed", "5", "--format", "json")
    b = run(capsys, "walk", "--n", "4", "--rng-seed", "5", "--format", "json")
    assert a == b and a[0] == 0


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "mutate", "--quiver", "markov", "--seq", "4")[0] == 2
    bad = tmp_path / "q.json"
    bad.write_text(json.dumps({"b": [[0, 1, 0], [1, 0, 0], [0, 0, 0]]}))
    code, _, err = run(capsys, "mutate", "--quiver", str(bad), "--seq", "1")
    assert code == 2 and ("b[1][2]" in err or "b[0][1]" in err)
    assert run(capsys, "frobnicate")[0] == 2
    acyclic = tmp_path / "acyclic.json"
    acyclic.write_text(json.dumps({"b": [[0, 2, 2], [-2, 0, 2], [-2, -2, 0]]}))
    assert run(capsys, "curves", "--quiver", str(acyclic))[0] == 2
    assert run(capsys, "curves", "--quiver", "q233", "--ordering", "1,1,2")[0] == 2


def test_verify_paths(capsys):
    assert run(capsys, "verify", "--trials", "0")[0] == 0
    assert run(capsys, "verify", "--trials", "5")[0] == 2
    code, out, _ = run(capsys, "verify", "--trials", "6", "--rng-seed", "1", "--n", "3,4", "--format", "json")
    assert code == 0 and json.loads(out)["passed"] is True
    assert run(capsys, "verify", "--theorem", "quadratic", "--quiver", "q233", "--depth", "4")[0] == 0
    assert run(capsys, "verify", "--theorem", "rank3", "--quiver", "markov", "--depth", "4")[0] == 0
    assert run(capsys, "verify", "--theorem", "sign-invariance", "--pair", "q233,markov", "--seq", "1,2,3")[0] == 0
    assert run(capsys, "verify", "--theorem", "sign-invariance")[0] == 2


def test_curves_svg_byte_identical(capsys, tmp_path):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for p in paths:
        code, _, _ = run(capsys, "curves", "--quiver", "q233", "--seq", "1", "--ordering", "2,1,3", "--out", str(p))
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    ET.fromstring(paths[0].read_text())


def test_log_replay(capsys, tmp_path):
    log = tmp_path / "runs.jsonl"
    run(capsys, "mutate", "--quiver", "markov", "--seq", "1,2", "--log", str(log))
    run(capsys, "verify", "--trials", "3", "--rng-seed", "9", "--log", str(log))
    records = read_log(str(log))
    assert [r["command"] for r in records] == ["mutate", "verify"]
    assert all("--log" not in r["config"]["argv"] for r in records)
    assert all(replay(r) for r in records)
    tampered = dict(records[0], digest="0" * 64)
    assert not replay(tampered)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cvectors", "mutate", "--quiver", "markov", "--seq", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "(-1, 1, 1)" in proc.stdout
