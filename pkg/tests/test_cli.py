import json
import os
import re

import pytest

from tropabel import catalog
from tropabel.cli import main
from tropabel.curve import MarkedCurve
from tropabel.serialize import (curve_from_json, curve_to_json, laurent_from_json,
                                laurent_to_json, marked_curve_text, read_json, torus_to_json,
                                write_json)
from tropabel.exactmath import quantum_integer
from tropabel.torus import TropicalTorus


def run(argv):
    chunks = []
    code = main(argv, chunks.append)
    return code, "".join(chunks)


@pytest.fixture
def doubled(tmp_path):
    p = tmp_path / "doubled.json"
    write_json(str(p), curve_to_json(catalog.doubled_theta()))
    return str(p)


@pytest.fixture
def torus_file(tmp_path):
    p = tmp_path / "torus.json"
    write_json(str(p), torus_to_json(TropicalTorus(((9, 1), (1, 7)))))
    return str(p)


def test_curve_round_trip():
    for name, c in catalog.all_curves().items():
        back = curve_from_json(json.loads(json.dumps(curve_to_json(c))))
        assert back == c, name
        assert marked_curve_text(back) == marked_curve_text(c)


def test_laurent_round_trip():
    p = quantum_integer(4) ** 2
    assert laurent_from_json(laurent_to_json(p)) == p


def test_check_doubled_theta(doubled):
    code, out = run(["--format", "json", "check", doubled])
    rep = json.loads(out)
    assert code == 0
    assert rep["genus"] == 2 and rep["gcd"] == 2 and rep["simple"]
    assert rep["class"] == [[2, 0], [0, 2]]


def test_check_unbalanced(tmp_path, doubled):
    d = read_json(doubled)
    d["edges"][0]["weight"] = 1
    d["edges"][0]["length"] = "4"
    p = tmp_path / "bad.json"
    write_json(str(p), d)
    code, out = run(["check", str(p), "--format", "json"])
    assert code == 1
    assert json.loads(out)["unbalanced_vertices"] == [0, 1]


def test_check_malformed(tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert run(["check", str(p)])[0] == 2
    p.write_text('{"torus": {"period": [[1, 0], [0, 1]]}}')
    assert run(["check", str(p)])[0] == 2
    assert run(["check", str(tmp_path / "missing.json")])[0] == 2


def test_mult(doubled, tmp_path):
    code, out = run(["mult", doubled, "--format", "json"])
    rep = json.loads(out)
    assert code == 0 and rep["complex_theta"] == rep["complex_minors"] == 32 and rep["agree"]
    for mc in (catalog.skew_theta_marked_weighted(), catalog.skew_theta_marked_light()):
        p = tmp_path / "m.json"
        write_json(str(p), curve_to_json(mc))
        rep = json.loads(run(["mult", str(p), "--format", "json"])[1])
        assert rep["complex_theta"] == 4
    # same curve, one mark only: not a valid marking
    assert run(["mult", doubled, "--marks", "0:1"])[0] == 1
    assert run(["mult", doubled, "--marks", "zero"])[0] == 2


def test_enumerate_round_trip(torus_file, tmp_path):
    out_dir = tmp_path / "sol"
    code, out = run(["enumerate", "--torus", torus_file, "--class", "2,0,0,2", "--seed", "1",
                     "--out", str(out_dir), "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["solutions"] == 22 and rep["N"] == 120
    files = sorted(f for f in os.listdir(out_dir) if f.startswith("solution_"))
    assert len(files) == 22
    for f, item in zip(files, rep["detail"]["solutions"]):
        path = str(out_dir / f)
        assert run(["check", path])[0] == 0
        m = json.loads(run(["mult", path, "--format", "json"])[1])
        assert m["agree"] and m["classical"] == item["multiplicity"]


def test_invariants(torus_file):
    code, out = run(["invariants", "--torus", torus_file, "--class", "2,0,0,2", "--seed", "2",
                     "--format", "json"])
    rep = json.loads(out)
    assert code == 0 and rep["N"] == 120 and rep["M"] == 88 and rep["consistency"] == []
    assert rep["per_gcd"]["2"]["N"] == 32


def test_enumerate_errors(torus_file, tmp_path):
    assert run(["enumerate", "--torus", torus_file, "--class", "1,0,0,2", "--seed", "1"])[0] == 1
    assert run(["enumerate", "--torus", torus_file, "--class", "1,0", "--seed", "1"])[0] == 2
    wall = tmp_path / "wall.json"
    write_json(str(wall), torus_to_json(TropicalTorus(((8, 2), (2, 8)))))
    code, out = run(["enumerate", "--torus", str(wall), "--class", "2,0,0,2", "--seed", "1"])
    assert code == 1 and "NonGenericConfiguration" in out


def test_series():
    code, out = run(["series", "--genus", "3", "--nmax", "8"])
    assert code == 0 and "status: OK" in out
    assert "n=2, closed_form=3, series=3" in out
    assert run(["series", "--genus", "1", "--nmax", "3"])[0] == 2


def test_deterministic(torus_file):
    argv = ["invariants", "--torus", torus_file, "--class", "2,0,0,2", "--seed", "3"]
    assert run(argv) == run(argv)


def test_svg(doubled, tmp_path):
    out = tmp_path / "out.svg"
    assert run(["svg", doubled, "--out", str(out)])[0] == 0
    text = out.read_text()
    assert text.count('class="vertex"') == 2
    assert text.count('<g class="edge"') == 3
    assert re.findall(r'class="weight"[^>]*>(\d+)<', text) == ["2", "2", "2"]
    assert text.count('class="mark"') == 2
    again = tmp_path / "again.svg"
    run(["svg", doubled, "--out", str(again)])
    assert again.read_text() == text


def test_catalog_command(tmp_path):
    code, out = run(["catalog", "--out", str(tmp_path / "cat"), "--format", "json"])
    assert code == 0
    for path in json.loads(out)["written"]:
        c = curve_from_json(read_json(path))
        args = ["check", path]
        assert run(args)[0] == 0, path
        if isinstance(c, MarkedCurve):
            assert json.loads(run(["mult", path, "--format", "json"])[1])["agree"]


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["frobnicate"])[0] == 2
