import json
import subprocess
import sys

import pytest

from keyvariety.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, cfg):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    return str(p)


def test_hilbert_text(capsys):
    code, out, _ = run(["hilbert"], capsys)
    assert code == 0
    assert out.startswith("P_Y(t,e) = 1 + e t + (2+2e) t^2 + (4+4e) t^3")
    assert "(8+7e) t^8" in out


def test_hilbert_json(capsys):
    code, out, _ = run(["hilbert", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["series_coefficients"][:4] == [[1, 0], [0, 1], [2, 2], [4, 4]]


@pytest.mark.parametrize("obj,count", [("curve", 21), ("E", 2), ("K3", 20), ("Tprime", 2),
                                       ("Wprime", 2)])
def test_construct(tmp_path, capsys, obj, count):
    cfg = {"object": obj, "alpha": 2, "beta": 3, "l": [1, 2, 3, 4], "m": [5, 6, 7, 8]}
    code, out, _ = run(["construct", "--config", write(tmp_path, cfg), "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["verified"] and len(doc["equations"]) == count


def test_construct_explicit_branch(tmp_path, capsys):
    cfg = {"object": "K3", "branch": {"f": "s1^3*t1 + s2^3*t2", "g": "s1*t1^3 - s2*t2^3"}}
    code, out, _ = run(["construct", "--config", write(tmp_path, cfg)], capsys)
    assert code == 0 and out.startswith("# T in y1:2")


@pytest.mark.parametrize("cfg,needle", [
    ({"object": "Wprime", "alpha": 2, "beta": "1/2", "l": [0, 1, 0, 0]}, "alpha*beta = 1"),
    ({"object": "curve", "branch": {"f": "s1^3", "g": "s2^4"}}, "degree 4"),
    ({"object": "K3", "colour": 1}, "unknown config keys: colour"),
    ({"object": "sphere"}, "object must be one of"),
    ({"object": "Tprime", "alpha": "x"}, "alpha"),
    ({"object": "Tprime", "l": [1, 2]}, "l must be a list of 4"),
])
def test_usage_errors(tmp_path, capsys, cfg, needle):
    code, _, err = run(["construct", "--config", write(tmp_path, cfg)], capsys)
    assert code == 2 and needle in err


def test_verify_pass(tmp_path, capsys):
    cfg = {"suites": ["hilbert", "nodes"]}
    code, out, _ = run(["verify", "--config", write(tmp_path, cfg)], capsys)
    assert code == 0 and out.rstrip().endswith("11/11 checks passed")
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_verify_failure_names_first_check(tmp_path, capsys):
    cfg = {"suites": ["kernel"], "overrides": {"s2": "a + b"}}
    code, out, err = run(["verify", "--config", write(tmp_path, cfg), "--format", "json"], capsys)
    assert code == 1 and not json.loads(out)["ok"]
    assert err.startswith("first failure: kernel/extended.pair_00")


def test_verify_unknown_suite(tmp_path, capsys):
    code, _, err = run(["verify", "--config", write(tmp_path, {"suites": ["bogus"]})], capsys)
    assert code == 2 and "unknown suites" in err


def test_json_is_reproducible(tmp_path, capsys):
    path = write(tmp_path, {"suites": ["hilbert", "godeaux"], "seed": 3})
    first = run(["verify", "--config", path, "--format", "json"], capsys)[1]
    second = run(["verify", "--config", path, "--format", "json"], capsys)[1]
    assert first == second
    timed = json.loads(run(["verify", "--config", path, "--format", "json", "--timings"], capsys)[1])
    assert all("seconds" in c for c in timed["checks"])


def test_out_file(tmp_path, capsys):
    target = tmp_path / "h.txt"
    code, out, _ = run(["hilbert", "--out", str(target)], capsys)
    assert code == 0 and not out and target.read_text().startswith("P_Y(t,e)")


def test_report(tmp_path, capsys):
    cfg = {"suites": ["hilbert"]}
    code, out, _ = run(["report", "--config", write(tmp_path, cfg)], capsys)
    assert code == 0
    assert "node counts: 10, 10, 10, 10, 10" in out
    assert out.rstrip().endswith("overall: pass")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "keyvariety", "hilbert", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["schema"] == 1
