from __future__ import annotations

import json

import pytest

from qprim.checks import REGISTRY, check, replay, report_json, run_suite, select_checks
from qprim.corpus import CorpusEntry, default_corpus, load_corpus
from qprim.specs import ZMod


def z(n: int) -> CorpusEntry:
    return CorpusEntry(f"Z/{n}", ZMod(n))


def test_registry_covers_all_numbered_checks():
    ids = sorted(REGISTRY)
    assert [i[:3] for i in ids] == [f"C{k:02d}" for k in range(1, 23)]


def test_select_checks():
    assert [c.id for c in select_checks(["C09"])] == ["C09_CLOSURE"]
    assert len(select_checks(None)) == len(REGISTRY)
    with pytest.raises(KeyError):
        select_checks(["C99"])


def test_empty_corpus_gives_no_verdicts(tmp_path):
    assert run_suite([]) == []
    path = tmp_path / "empty.json"
    path.write_text("[]")
    assert load_corpus(str(path)) == []


def test_closure_table_on_z12():
    (v,) = run_suite([z(12)], ["C09"])
    assert v.status == "pass"
    table = v.details["closures"]
    assert len(table) == 3
    assert table[0] == {"point": [0, 2, 4, 6, 8, 10], "closure": [[0, 2, 4, 6, 8, 10], [0, 4, 8]]}
    assert table[1]["closure"] == [[0, 3, 6, 9]]


def test_report_is_deterministic():
    corpus = [z(12), z(36), CorpusEntry("Z/2xZ/2", default_corpus()[15].spec)]
    a = report_json(run_suite(corpus, seed=3), seed=3)
    b = report_json(run_suite(corpus, seed=3), seed=3)
    assert a == b
    assert json.loads(a)["verdicts"][0]["ms"] is None


def test_timing_records_ms():
    (v,) = run_suite([z(6)], ["C01"], timing=True)
    assert isinstance(v.ms, int)


def test_cap_exceeded_becomes_skip():
    verdicts = run_suite([z(30)], ["C01", "C09"], order_cap=16)
    assert [v.status for v in verdicts] == ["skipped", "skipped"]
    assert "cap" in verdicts[0].reason


def test_lattice_oracle_skipped_on_large_rings():
    (v,) = run_suite([z(24)], ["C22"])
    assert v.status == "skipped"


def test_product_note_on_klein_ring():
    entry = next(e for e in default_corpus() if e.label == "Z/2xZ/2")
    (v,) = run_suite([entry], ["C15"])
    assert v.status == "pass"
    assert (v.details["total"], v.details["product_count"]) == (2, 1)
    assert "note" in v.details


def test_failing_check_is_replayable():
    @check("CT_PROBE", "every point has at most 6 elements")(
        lambda ctx: ({"Q": list(Q.elements)} for Q in ctx.qprim.points))
    def _probe(ctx, p):
        return len(p["Q"]) <= 4

    try:
        (v,) = run_suite([z(12)], ["CT_PROBE"])
        assert v.status == "fail"
        assert v.counterexample == {"Q": [0, 2, 4, 6, 8, 10]}
        entry = json.loads(report_json([v]))["verdicts"][0]
        assert replay(entry) is True
        entry["counterexample"] = {"Q": [0, 4, 8]}
        assert replay(entry) is False
    finally:
        del REGISTRY["CT_PROBE"]
