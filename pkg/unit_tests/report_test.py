#!/usr/bin/env python

import json
import os
import pytest
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.append(parent_dir)

from coverlattice.report import Report  # noqa: E402


@pytest.fixture
def report():
    return Report(
        command="hilbert",
        n=3,
        input_edges=[[1, 1], [2, 2], [2, 3], [3, 2], [3, 3]],
        relabeling=[1, 2, 3],
        h=[1, 3, 3, 1],
        denom_power=7,
        multiplicity=8,
        bounds=[4, 16],
        gorenstein_symmetric=True,
        a_invariant=-4,
    )


def test_to_dict_keeps_field_order(report):
    assert list(report.to_dict()) == [
        "command",
        "n",
        "input_edges",
        "relabeling",
        "h",
        "denom_power",
        "multiplicity",
        "bounds",
        "gorenstein_symmetric",
        "a_invariant",
    ]


def test_round_trip(report):
    data = json.loads(report.to_json())
    assert Report.from_dict(data) == report
    assert Report.from_dict(data).to_json() == report.to_json()


def test_unknown_fields():
    with pytest.raises(ValueError):
        Report.from_dict({"n": 1, "color": "blue"})


def test_text_body_is_not_serialized(report):
    report.text_body = "x1*u{} - y1*u{1}"
    assert "text_body" not in report.to_dict()


def test_to_text(report):
    text = report.to_text()
    assert "n: 3" in text
    assert "h: [1, 3, 3, 1]" in text
    assert "gorenstein_symmetric: yes" in text
    assert "command" not in text


def test_failed_checks():
    report = Report(
        verification=[
            {"name": "buchberger", "status": "pass", "detail": ""},
            {"name": "basis_size", "status": "fail", "detail": "4 binomials"},
            {"name": "direct_counting", "status": "skip", "detail": ""},
        ]
    )
    assert report.failed_checks == ["basis_size"]
    text = report.to_text()
    assert "basis_size: 4 binomials" in text
    assert Report().failed_checks == []
