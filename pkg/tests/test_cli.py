import io
import json
import subprocess
import sys

import pytest

from berge.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def h2(tmp_path):
    path = tmp_path / "h2.txt"
    code, out, _ = call("generate", "h2", "--r", "3", "--k", "4", "--n", "8", "-o", str(path))
    assert code == 0 and "n=8" in out
    return path


def test_generate_then_circumference(h2):
    assert h2.read_text().startswith("# {")
    code, out, _ = call("circumference", str(h2))
    assert code == 0 and out.startswith("circumference: 6\n")
    code, out, _ = call("circumference", str(h2), "--json")
    obj = json.loads(out)
    assert obj["circumference"] == 6 and obj["exact"] and obj["budget"] == 10**7


def test_circumference_budget_exhausted(h2):
    code, out, _ = call("circumference", str(h2), "--budget", "2")
    assert code == 2 and "lower bound" in out


def test_connectivity(h2):
    code, out, _ = call("connectivity", str(h2), "--k", "3")
    assert code == 0 and out.strip() == "3-connected: true"
    code, out, _ = call("connectivity", str(h2), "--k", "4")
    assert code == 1 and "false" in out
    code, out, _ = call("connectivity", str(h2), "--json")
    assert json.loads(out) == {"connectivity": 3}


def test_generate_params_json():
    code, out, _ = call("generate", "kbip", "--params", '{"k": 3, "n": 6}')
    assert code == 0 and out.splitlines()[1] == "6 8 2"


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "kbip", "--params", "{bad"],
        ["generate", "kbip", "--params", "[1]"],
        ["generate", "kbip", "--k", "3"],
        ["generate", "kbip", "--k", "5", "--n", "8"],
        ["bogus"],
        ["circumference"],
        ["circumference", "/nonexistent/file.txt"],
        ["verify", "dirac", "--config", "{not json"],
        ["verify", "dirac", "--config", '{"bogus": 1}'],
        ["verify", "dirac", "--config", '{"theorem": "theorem19"}'],
    ],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 64 and err.startswith("usage error")


def test_malformed_file(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1 2\n0 5\n")
    code, _, err = call("circumference", str(bad))
    assert code == 65
    assert "bad.txt: line 2: vertex 5 outside 0..2" in err


def test_find_cycle(h2):
    code, out, _ = call("find-cycle", str(h2), "--seed", "1")
    assert code == 0 and out.startswith("length: 6")
    code, out, _ = call("find-cycle", str(h2), "--json")
    obj = json.loads(out)
    assert obj["length"] == 6 and obj["seed"] == 0 and obj["theorem_bound"] == 6


def test_find_cycle_without_cycles(tmp_path):
    path = tmp_path / "star.txt"
    path.write_text("4 3 2\n0 1\n0 2\n0 3\n")
    code, out, _ = call("find-cycle", str(path))
    assert code == 0 and "no Berge cycle" in out


def test_best_structure(h2, tmp_path):
    code, out, _ = call("best-structure", str(h2), "--family", "lollipop", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["rank"]["r1"] == 6 and obj["exact"]
    tri = tmp_path / "tri.txt"
    tri.write_text("3 3 2\n0 1\n1 2\n0 2\n")
    code, out, _ = call("best-structure", str(tri), "--family", "dcp")
    assert code == 0 and out.strip() == "no dcp structure"


def test_verify_cycle_lemmas(tmp_path):
    code, out, _ = call("verify", "cycle-lemmas", "--config", '{"max_s": 10}')
    assert code == 1 and "violations" in out
    report = tmp_path / "rep.json"
    code, out, _ = call("verify", "cycle-lemmas", "--config", '{"max_s": 10, "repaired": true}', "-o", str(report))
    assert code == 0
    assert json.loads(report.read_text())["exhaustive"]["total_violations"] == 0


def test_verify_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"theorem": "dirac", "n": [6], "k": [3], "samples": 5}))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call("--threads", "1", "verify", "dirac", "--config", str(cfg), "-o", str(a))[0] == 0
    assert call("--threads", "4", "verify", "dirac", "--config", str(cfg), "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_config_file_not_json(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{\n oops\n}")
    code, _, err = call("verify", "dirac", "--config", str(cfg))
    assert code == 65 and "line 2" in err


def test_module_entry_point(h2):
    proc = subprocess.run([sys.executable, "-m", "berge", "circumference", str(h2)], capture_output=True, text=True)
    assert proc.returncode == 0 and "circumference: 6" in proc.stdout
