import json

import pytest

from simdual.report import (FAIL, FINDING, PASS, CheckRow, Report,
                            emit_report)


def make_report(statuses=("pass", "pass")):
    rows = [CheckRow(name=f"check-{i}", status=s, detail={"n": i})
            for i, s in enumerate(statuses)]
    return Report(suite="demo", params={"p": 3, "family": "symplectic"},
                  rows=rows)


def test_summary_and_passed():
    rep = make_report((PASS, FAIL, FINDING))
    assert rep.summary() == {PASS: 1, FAIL: 1, FINDING: 1}
    assert not rep.passed
    assert make_report().passed


def test_exit_codes():
    assert make_report().exit_code() == 0
    assert make_report((PASS, FAIL)).exit_code() == 1
    assert make_report((PASS, FINDING)).exit_code() == 0
    assert make_report((PASS, FINDING)).exit_code(findings_fail=True) == 1


def test_json_is_deterministic_and_sorted():
    a = make_report().to_json()
    b = make_report().to_json()
    assert a == b
    data = json.loads(a)
    assert data["schema_version"] == 1
    assert list(data.keys()) == sorted(data.keys())
    assert a.endswith("\n")


def test_timing_excluded_by_default():
    rep = make_report()
    rep.rows[0].timing = 1.234
    assert "timing" not in rep.to_json()
    assert "timing_seconds" in rep.to_json(include_timing=True)


def test_counterexample_and_replay_serialized():
    rep = make_report()
    rep.rows[0].counterexample = {"X": "1, 0; 0, 1"}
    rep.rows[0].replay = {"check": "demo", "payload": {"X": "1, 0; 0, 1"}}
    data = json.loads(rep.to_json())
    assert data["rows"][0]["counterexample"] == {"X": "1, 0; 0, 1"}
    assert data["rows"][0]["replay"]["check"] == "demo"


def test_markdown_contains_rows():
    md = make_report((PASS, FAIL)).to_markdown()
    assert "| check-0 | pass |" in md
    assert "| check-1 | fail |" in md
    assert "1 fail" in md


def test_emit_report_formats():
    rep = make_report()
    assert emit_report(rep, "json").startswith("{")
    assert emit_report(rep, "markdown").startswith("# suite")
    with pytest.raises(ValueError):
        emit_report(rep, "xml")
