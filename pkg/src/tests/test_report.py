"""Test text and JSON rendering of reports."""

import json
import math
from fractions import Fraction

from multireg.lattice import semigroup_region
from multireg.model.status import Verdict
from multireg.report import Report, format_text, to_jsonable


def test_to_jsonable():
    region = semigroup_region([(1,)], [(2,)])
    value = to_jsonable(
        {
            "low": -math.inf,
            "ratio": Fraction(1, 2),
            "verdict": Verdict.YES,
            "region": region,
            "set": frozenset({(2, 1), (1, 2)}),
        }
    )
    assert value["low"] == "-inf"
    assert value["ratio"] == "1/2"
    assert value["verdict"] == "yes"
    assert value["region"]["generators"] == [[2]]
    assert value["set"] == [[1, 2], [2, 1]], "sets are sorted for deterministic output"


def test_json_render():
    report = Report("regS", {"ring": "p2"})
    report.undecided = True
    data = json.loads(report.render("json"))
    assert data == {"command": "regS", "undecided": True, "failed": False, "ring": "p2"}


def test_text_render():
    report = Report("coh")
    report.add("dimension", 3)
    report.add("degree", (-4,))
    report.add("member", True)
    report.add("generators", [(0, 1), (1, 0)])
    text = report.render("text")
    assert text.splitlines() == [
        "== coh ==",
        "dimension: 3",
        "degree: (-4)",
        "member: yes",
        "generators: (0,1) (1,0)",
    ]


def test_nested_text():
    lines = format_text({"levels": [{"level": 0, "passed": False}]})
    assert lines == ["levels:", "  -", "    level: 0", "    passed: no"]


def test_failed_note():
    report = Report("examples")
    report.failed = True
    assert report.render().endswith("note: some checks failed")
