import json
import subprocess
import sys
from pathlib import Path

import pytest

from consheaf.cli import main, run

EXAMPLES = Path(__file__).resolve().parents[1] / "docs" / "examples"


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_energy_report(tmp_path):
    f = _write(tmp_path, "b.json", {"bars": [{"interval": "[0,3)"}]})
    code, rep = run(["energy", f])
    assert code == 0
    assert rep["schema_version"] == "1.0"
    assert rep["result"]["energy"] == "3"


def test_decompose_example():
    code, rep = run(["decompose", str(EXAMPLES / "zigzag.json")])
    assert code == 0
    assert len(rep["result"]["bars"]) == 3


def test_hom_and_orbit(tmp_path):
    a = _write(tmp_path, "a.json", {"bars": [{"interval": "[1,2)"}]})
    b = _write(tmp_path, "b.json", {"bars": [{"interval": "[0,1)"}]})
    assert run(["hom", a, b])[1]["result"] == {"hom": {"1": 1}}
    assert run(["orbit-hom", a, b])[1]["result"] == {"orbit_hom_dim": 1}


def test_germ_compose_and_square():
    k = str(EXAMPLES / "ball1.json")
    assert run(["germ-compose", k, k, "--x", "0", "--z", "3/2"])[1]["result"] == {"stalk": {"-1": 1}}
    rep = run(["square-kernel", "--m", "2", "--point", "0,0,0,3"])[1]["result"]
    assert rep["stratum"] == "W_2" and rep["stalk"] == {"1": 1}


def test_circle_and_fourier():
    rep = run(["circle-decompose", str(EXAMPLES / "cyclic.json")])[1]["result"]
    assert rep["circumference"] == "2" and len(rep["bars"]) == 1
    code, rep = run(["fourier-sato", str(EXAMPLES / "conic.json")])
    assert code == 0 and rep["result"]["germs"]["1"] == {"0": 1, "1": 1}


@pytest.mark.parametrize(
    "argv",
    [
        ["energy", "/nonexistent.json"],
        ["nosuch"],
        ["square-kernel", "--point", "0,0,0"],
        ["square-kernel", "--m", "2", "--point", "0,0,0,2"],
        ["verify", "--samples", "0"],
    ],
)
def test_malformed_input_exits_2(argv):
    code, rep = run(argv)
    assert code == 2 and "error" in rep


def test_verify_failure_exits_1(monkeypatch):
    from consheaf import verify

    monkeypatch.setitem(verify.SUITES, "energy", [("broken", "anchor", lambda samples, seed: (False, "no"), 1)])
    code, rep = run(["verify", "--suite", "energy"])
    assert code == 1
    assert rep["result"]["checks"][0]["anchor"] == "anchor"


def test_verify_geodesic_table(capsys):
    assert main(["verify", "--suite", "geodesic", "--samples", "10"]) == 0
    out = capsys.readouterr()
    assert "PASS  A5 geodesic germs" in out.err
    assert json.loads(out.out)["result"]["passed"]


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "consheaf", "decompose", str(EXAMPLES / "zigzag.json")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
