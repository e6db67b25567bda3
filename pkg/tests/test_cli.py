from __future__ import annotations

import json

from qprim.cli import main


def test_spectrum_z12(capsys):
    assert main(["spectrum", "--zmod", "12"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "qprim(Z/12): 3 points"
    assert [line.split()[0] for line in lines[1:]] == ["{0,2,4,6,8,10}", "{0,3,6,9}", "{0,4,8}"]


def test_spectrum_zero_ring(capsys):
    assert main(["spectrum", "--zmod", "1"]) == 0
    assert capsys.readouterr().out.splitlines() == ["qprim(Z/1): 0 points"]


def test_spec_kind_and_ring_file(tmp_path, capsys):
    path = tmp_path / "ring.json"
    path.write_text(json.dumps({"type": "product", "factors": [{"type": "zmod", "n": 2}, {"type": "zmod", "n": 2}]}))
    assert main(["spectrum", "--ring", str(path), "--kind", "spec"]) == 0
    assert capsys.readouterr().out.startswith("spec(Z/2xZ/2): 2 points")


def test_inspect_topology_sheaf(capsys):
    assert main(["inspect", "--zmod", "12"]) == 0
    out = capsys.readouterr().out
    assert "units: {1,5,7,11}" in out and "nilpotents: {0,6}" in out
    assert main(["topology", "--zmod", "12"]) == 0
    out = capsys.readouterr().out
    assert "4 closed sets" in out and "connected: no" in out
    assert main(["sheaf", "--zmod", "12"]) == 0
    out = capsys.readouterr().out
    assert "{0,4,8}: order 4, local" in out and "direct image along Spec -> QPrim: pass" in out


def test_input_errors(tmp_path, capsys):
    assert main(["spectrum", "--zmod", "0"]) == 2
    assert main(["spectrum"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["inspect", "--ring", str(bad)]) == 2
    assert main(["verify", "--checks", "C99"]) == 2
    err = capsys.readouterr().err
    assert "input error" in err


def test_cap_exceeded(capsys):
    assert main(["spectrum", "--zmod", "600"]) == 3
    assert main(["spectrum", "--zmod", "30", "--ideal-cap", "2"]) == 3
    assert "cap exceeded" in capsys.readouterr().err


def test_verify_writes_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--checks", "C09,C15", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["summary"]["fail"] == 0
    c15 = [v for v in report["verdicts"] if v["check"].startswith("C15") and v["label"] == "Z/2xZ/2"]
    assert c15 and "note" in c15[0]["details"]
    assert "pass" in capsys.readouterr().err


def test_export_dot(tmp_path, capsys):
    assert main(["export-dot", "--zmod", "12", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "specialization.dot").read_text().startswith("digraph")
    assert "∅" in (tmp_path / "closed_lattice.dot").read_text()
    assert main(["export-dot", "--zmod", "4", "--out", str(tmp_path / "sub" / "z4")]) == 0
    assert (tmp_path / "sub" / "z4_specialization.dot").exists()
