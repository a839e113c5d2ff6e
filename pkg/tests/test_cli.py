import json

import pytest

from dblcomplex.bicomplex import read_bicomplex
from dblcomplex.cli import main
from conftest import fixture_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    doc = json.loads(out)
    assert doc["schema"] == "dblcomplex/1"
    return code, doc


@pytest.fixture(scope="module")
def iwasawa_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "iwasawa.bcx"
    assert main(["ingest", str(fixture_path("iwasawa.cdga")), str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def heisenberg_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "heis.bcx"
    assert main(["ingest", str(fixture_path("heisenberg.cdga")), str(path), "--model", "total"]) == 0
    return path


def test_ingest_writes_valid_file(iwasawa_file):
    A = read_bicomplex(iwasawa_file.read_text())
    assert A.total_dim == 64 and A.mult is not None


def test_ingest_rejects_non_integrable(capsys, tmp_path):
    code, _, err = run(capsys, "ingest", fixture_path("filiform.cdga"), tmp_path / "x.bcx")
    assert code == 2 and "witness" in err
    assert not (tmp_path / "x.bcx").exists()


def test_ingest_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.cdga"
    bad.write_text("cdga real\ngenerators x\nd y = x*x\n")
    code, _, err = run(capsys, "ingest", bad, "-")
    assert code == 2 and "line 3" in err


def test_report_json(capsys, iwasawa_file):
    code, doc = run_json(capsys, "report", iwasawa_file)
    assert code == 0 and doc["command"] == "report"
    assert doc["h_delbar"]["1,0"] == 3 and doc["h_delbar"]["0,1"] == 2
    assert doc["totals"]["b"] == 36


def test_zigzag_reconstruction_and_render(capsys, iwasawa_file):
    code, doc = run_json(capsys, "zigzag", iwasawa_file, "--check-reconstruction")
    assert code == 0
    code, out, _ = run(capsys, "zigzag", fixture_path("twozigzag.bcx"), "--render")
    assert code == 0 and "evenh 0 1 2 : 1" in out and "oddtop 3 0 1 : 1" in out
    code, _, err = run(capsys, "zigzag", iwasawa_file, "--orbit")
    assert code == 2 and "--dim" in err


def test_render_table(capsys):
    code, out, _ = run(capsys, "render", fixture_path("genus2.table"), "--dim", 1)
    assert code == 0 and out.splitlines()[0].startswith("2")
    code, _, _ = run(capsys, "render", fixture_path("genus2.table"), "--dim", 1, "--orbit")
    assert code == 0


def test_audit_bicomplex(capsys, iwasawa_file):
    code, doc = run_json(capsys, "audit", iwasawa_file, "--checks", "ddbar,inequalities,duality")
    assert code == 1
    audits = {a["audit"]: a for a in doc["reports"]}
    assert not audits["ddbar"]["ok"]
    assert audits["inequalities"]["ok"] and audits["duality (n=3)"]["ok"]
    code, _, _ = run(capsys, "audit", fixture_path("dot.bcx"), "--checks", "ddbar")
    assert code == 0
    code, _, err = run(capsys, "audit", iwasawa_file, "--checks", "R4", "--dim", 3)
    assert code == 2


def test_audit_charnumbers(capsys):
    code, out, _ = run(capsys, "audit", fixture_path("p2.charnumbers"), "--checks", "stong,signature")
    assert code == 0 and "1" in out
    code, _, _ = run(capsys, "audit", fixture_path("bad4.charnumbers"), "--checks", "stong")
    assert code == 1
    code, out, _ = run(capsys, "audit", fixture_path("p3only.charnumbers"), "--checks", "signature")
    assert code == 1 and "62/945" in out
    code, _, _ = run(capsys, "audit", fixture_path("p2.charnumbers"), "--checks", "ddbar")
    assert code == 2


def test_massey_cli(capsys, heisenberg_file):
    code, doc = run_json(capsys, "massey", heisenberg_file, "e1=1", "e1=1", "e2=1")
    assert code == 0 and doc["defined"] and doc["is_trivial"] is False
    assert doc["indeterminacy"] == []
    code, _, err = run(capsys, "massey", heisenberg_file, "e9=1", "e1=1", "e2=1")
    assert code == 2 and "e9" in err
    code, _, _ = run(capsys, "massey", heisenberg_file, "e1=1", "e2=1")
    assert code == 2


def test_massey_obstruction(capsys, tmp_path):
    path = tmp_path / "t2.bcx"
    assert main(["ingest", str(fixture_path("torus2.cdga")), str(path)]) == 0
    capsys.readouterr()
    code, doc = run_json(capsys, "massey", path, "phi1=1", "phi2=1", "phi1=1")
    assert code == 1 and doc["defined"] is False


def test_sweep(capsys):
    code, doc = run_json(capsys, "sweep", "--seed", 3, "--count", 10, "--properties", "roundtrip,reconstruction,ddbar-equivalence")
    assert code == 0 and doc["count"] == 10
    code, _, _ = run(capsys, "sweep", "--properties", "nonsense")
    assert code == 2


def test_bad_input_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "report", tmp_path / "missing.bcx")
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.bcx"
    bad.write_text("bicomplex\ncell 0 0 1 a\nfrobnicate\n")
    code, _, err = run(capsys, "report", bad)
    assert code == 2 and "line 3" in err
    assert main(["--help"]) == 0
    assert main(["no-such-command"]) == 2


def test_abc_massey_cli(capsys, iwasawa_file):
    code, doc = run_json(capsys, "massey", iwasawa_file, "0,1:1,0", "0,2:1,0,0", "2,0:1,0,0", "--kind", "abc")
    assert code == 0 and doc["kind"] == "abc" and doc["degree"] == [1, 2]
    assert doc["is_trivial"] is False
    code, _, err = run(capsys, "massey", iwasawa_file, "0,1:1", "0,2:1,0,0", "2,0:1,0,0", "--kind", "abc")
    assert code == 2 and "coordinates" in err
