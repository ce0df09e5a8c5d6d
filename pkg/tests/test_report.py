import json

import pytest

from errors import ScenarioError
from game import ModelComparison
from report import (
    MISSING,
    ActionRecord,
    Expectation,
    LinkReport,
    comparison_facts,
    graph_of_comparison,
    load_report,
    lookup,
    normalize,
)

FACTS = {
    "flop_counts": [11],
    "blowup": {"weights": {"x3": 3, "y1": 4}},
    "crossings": [{"count": 11}, {"count": 1}],
    "terminal": "divisorial",
}


def test_normalize():
    assert normalize((1, (2, 3))) == [1, [2, 3]]
    assert normalize({1: frozenset({"b", "a"})}) == {"1": ["a", "b"]}
    assert normalize(True) is True
    assert normalize(None) is None


def test_lookup_dotted_paths():
    assert lookup(FACTS, "flop_counts") == [11]
    assert lookup(FACTS, "blowup.weights.x3") == 3
    assert lookup(FACTS, "crossings.1.count") == 1
    assert lookup(FACTS, "crossings.-1.count") == 1
    assert lookup(FACTS, "crossings.2.count") == MISSING
    assert lookup(FACTS, "blowup.index") == MISSING
    assert lookup(FACTS, "terminal.kind") == MISSING


def test_expectation_compares_json_shapes():
    assert Expectation(0, "link", "restricted_types", [[1, 1, -1, -1]], [(1, 1, -1, -1)]).passed
    assert not Expectation(0, "link", "flop_counts", [7], [11]).passed
    assert not Expectation(0, "link", "contracted", "x3", MISSING).passed


def make_report(expect):
    out = LinkReport("X-py-link", {"prime": 32003, "seeds": [42]})
    out.record(ActionRecord(0, "link", FACTS, {"edges": []}), expect)
    return out


def test_report_passes_and_tables():
    out = make_report({"flop_counts": [11], "blowup.weights.x3": 3})
    assert out.passed
    assert [e.key for e in out.expectations] == ["blowup.weights.x3", "flop_counts"]
    assert out.table().splitlines() == [
        "X-py-link: PASS",
        "  ok   [0] link blowup.weights.x3 = 3",
        "  ok   [0] link flop_counts = [11]",
    ]


def test_failed_expectation_is_shown():
    out = make_report({"flop_counts": [7]})
    assert not out.passed
    assert "FAIL [0] link flop_counts = [11] (expected [7])" in out.table()


def test_action_error_fails_the_report():
    out = LinkReport("broken", {})
    out.record(ActionRecord(0, "count", error="ideal is not zero-dimensional"), {})
    assert not out.passed
    assert "ERROR [0] count: ideal is not zero-dimensional" in out.table()


def test_json_is_sorted_and_reloads(tmp_path):
    out = make_report({"terminal": "divisorial"})
    text = out.to_json()
    assert text.endswith("}\n")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["passed"] is True
    assert data["expectations"][0]["actual"] == "divisorial"
    path = tmp_path / "report.json"
    path.write_text(text, encoding="utf-8")
    assert load_report(path) == data


def test_comparison_graph():
    same = ModelComparison(True)
    assert graph_of_comparison("Z", "Zbar", same) == {
        "edges": [{"source": "Z", "target": "Zbar", "kind": "equal", "label": ""}]
    }
    assert graph_of_comparison("Z", "Zt", ModelComparison(False, reason="no")) == {"edges": []}
    facts = comparison_facts(same, "Z", "Zbar")
    assert facts["verdict"] == "structurally isomorphic"
    assert facts["models"] == ["Z", "Zbar"]


def test_load_report_rejects_broken_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\n", encoding="utf-8")
    with pytest.raises(ScenarioError, match="not a report"):
        load_report(path)
