from __future__ import annotations

import json

import pytest

from cli_cases import GOOD_COEFF, MALFORMED, TIMES_TWO
from conehom import cli, documents
from conehom.lattice import FgAbGroup, FgMorphism, Matrix
from conehom.limits import TowerOfGroups
from conehom.qz import QZGroup, QZMorphism
from conehom.simplicial import SimplicialMap, circle, cochain_map_of, cochain_of, projective_plane
from strategies import circle_system


@pytest.fixture
def files(tmp_path):
    def write(name, value):
        path = tmp_path / name
        path.write_text(value if isinstance(value, str) else documents.dumps(value), encoding="utf-8")
        return str(path)

    return write


def test_ucf_verify_times_two(files, tmp_path, capsys):
    report = tmp_path / "report.json"
    code = cli.main(["ucf-verify", files("c.json", TIMES_TWO), "--coeff", files("z.json", GOOD_COEFF), "--report", str(report)])
    assert code == 0
    data = json.loads(report.read_text())
    assert all(r["ok"] for r in data["reports"])
    degree0 = next(r for r in data["reports"] if r["degree"] == 0)
    assert degree0["homology_group"] == "Z/2" and degree0["chi_bar"] == [[1]]
    assert "PASS" in capsys.readouterr().out


def test_tower_lim1_times_two(files, tmp_path, capsys):
    Z = FgAbGroup.free(1)
    path = files("t.json", TowerOfGroups.constant(Z, FgMorphism(Z, Z, Matrix([[2]]))))
    report = tmp_path / "r.json"
    assert cli.main(["tower", "lim1", path, "--report", str(report)]) == 0
    assert "Nonzero" in capsys.readouterr().out
    data = json.loads(report.read_text())
    assert data["verdict"] == "Nonzero" and data["indices"] == [2, 2, 2]
    assert cli.main(["tower", "lim", path]) == 0
    assert "lim = 0" in capsys.readouterr().out


def test_tower_lim_falls_back_to_pullback(files, tmp_path, capsys, monkeypatch):
    QZ = QZGroup.QmodZ()
    path = files("t.json", TowerOfGroups.constant(QZ, QZMorphism(QZ, QZ, Matrix([[2]]))))
    report = tmp_path / "r.json"
    monkeypatch.setenv("WORKBENCH_TRUNCATE", "4")
    assert cli.main(["tower", "lim", path, "--report", str(report)]) == 0
    assert "truncated pullback over 4 levels = Q/Z" in capsys.readouterr().out
    data = json.loads(report.read_text())
    assert data["exact"] is False and data["truncation"] == 4


def test_cohomology_and_cone_homology(files, capsys):
    path = files("c.json", TIMES_TWO)
    assert cli.main(["cohomology", path, "--degree", "1"]) == 0
    assert "H^1 = Z/2" in capsys.readouterr().out
    assert cli.main(["cone-homology", path, "--coeff", files("z.json", GOOD_COEFF), "--degree", "0"]) == 0
    assert "Hbar_0 = Z/2" in capsys.readouterr().out


def test_simplicial_import(files, tmp_path, capsys):
    facets = files("rp2.json", projective_plane())
    out = tmp_path / "rp2c.json"
    assert cli.main(["simplicial", "import", facets, "-o", str(out)]) == 0
    assert cli.main(["cone-homology", str(out), "--coeff", files("z.json", GOOD_COEFF)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "Hbar_1 = Z/2" in lines and "Hbar_2 = 0" in lines
    pair = files("pts.json", json.dumps({"kind": "facets", "vertices": 3, "facets": [[0], [1]]}))
    assert cli.main(["simplicial", "import", files("s1.json", circle()), "--pair", pair]) == 0
    C = documents.loads(capsys.readouterr().out)
    assert [C.group(n).ngens for n in C.degrees] == [1, 3]


def test_other_verifiers(files):
    z, qz = files("z.json", GOOD_COEFF), files("qz.json", QZGroup.QmodZ())
    rp2 = files("rp2c.json", cochain_of(projective_plane()))
    assert cli.main(["classical-compare", rp2, "--coeff", z]) == 0
    assert cli.main(["ker-xi-verify", rp2, "--coeff", qz]) == 0
    f = cochain_map_of(SimplicialMap(circle(6), circle(3), [0, 1, 2, 0, 1, 2]))
    assert cli.main(["naturality-verify", files("f.json", f), "--coeff", z]) == 0


def test_system_verify(files, tmp_path, monkeypatch):
    S = files("s.json", circle_system(2))
    z = files("z.json", GOOD_COEFF)
    report = tmp_path / "r.json"
    monkeypatch.setenv("WORKBENCH_TRUNCATE", "3")
    argv = ["system", "verify", "--milnor", "--lemma2", "--cor3", "--lemma2", S, "--coeff", z, "--degree", "0"]
    assert cli.main(argv + ["--report", str(report)]) == 0
    data = json.loads(report.read_text())["results"]
    assert [r["verifier"] for r in data] == ["milnor", "lemma2", "cor3"]  # argument order
    assert data[1]["reports"][0]["mode"] == "truncated"
    # cor5 needs divisible coefficients
    assert cli.main(["system", "verify", "--cor5", S, "--coeff", z, "--degree", "0"]) == 2
    assert cli.main(["system", "verify", S, "--coeff", z, "--degree", "0"]) == 2


def test_failing_verdict_exits_one(files, monkeypatch, capsys):
    from conehom.cone_ucf import verify_ucf_all

    def broken(C, G):
        reports = verify_ucf_all(C, G)
        reports[0].exact_middle = False
        return reports

    monkeypatch.setattr(cli, "verify_ucf_all", broken)
    assert cli.main(["ucf-verify", files("c.json", TIMES_TWO), "--coeff", files("z.json", GOOD_COEFF)]) == 1
    assert "FAIL" in capsys.readouterr().out


@pytest.mark.parametrize("name, contents, argv, diagnostic", MALFORMED, ids=[case[0] for case in MALFORMED])
def test_malformed_input_exits_two(tmp_path, capsys, name, contents, argv, diagnostic):
    doc = tmp_path / "doc.json"
    if contents is not None:
        doc.write_text(contents, encoding="utf-8")
    coeff = tmp_path / "coeff.json"
    coeff.write_text(GOOD_COEFF, encoding="utf-8")
    args = [a.format(doc=doc, coeff=coeff) for a in argv]
    assert cli.main(args) == 2
    assert diagnostic in capsys.readouterr().err
