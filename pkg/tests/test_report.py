"""Unit tests for reports, search records, and the sweep driver."""

import io
import json
from dataclasses import replace

import pytest

from minrank.config import LIMITS, ToolConfig
from minrank.errors import LimitError
from minrank.pmx import parse_pmx
from minrank.report import (
    SearchRecord,
    best_epsilon,
    epsilon_of,
    evaluate_matrix,
    format_report,
    report,
    search,
)

A1 = parse_pmx("10*0*1\n*111**\n0**1**\n")

REPORT_KEYS = [
    "n", "m", "star_count", "min_rank", "max_rank", "line_cover",
    "row_min_rank", "col_min_rank", "star_monotone", "isolated",
    "strongly_isolated", "lin", "opt", "epsilon", "epsilon_exact",
]


def test_report_flagship():
    rep = report(A1)
    assert list(rep) == REPORT_KEYS
    assert rep["min_rank"] == 2
    assert rep["col_min_rank"] == 2
    assert rep["lin"] == 16
    assert rep["opt"] == 16
    assert rep["epsilon"] == 1.0
    assert rep["epsilon_exact"] == [6, 16, 2]


def test_report_all_star():
    rep = report(parse_pmx("**\n**\n"))
    assert rep["min_rank"] == 0
    assert rep["opt"] == 4
    assert rep["epsilon"] is None


def test_report_marks_skipped_fields():
    cfg = ToolConfig(limits=replace(LIMITS, opt_n=2, subset_rows=0))
    rep = report(A1, cfg)
    assert rep["opt"] == "skipped: limit"
    assert rep["epsilon"] == "skipped: limit"
    assert rep["row_min_rank"] == "skipped: limit"
    assert rep["min_rank"] == 2  # unaffected fields still computed


def test_format_report_stable_order():
    text = format_report(report(A1))
    rep = json.loads(text)
    assert list(rep) == REPORT_KEYS
    assert format_report(report(A1)) == text


def test_epsilon_of():
    assert epsilon_of(6, 16, 2) == 1.0
    assert epsilon_of(4, 16, 0) is None
    assert epsilon_of(4, 4, 4) == 0.5


def test_search_record_round_trip_and_invariants():
    rec = evaluate_matrix(A1, ToolConfig(seed=9))
    assert rec.lin == 1 << (rec.n - rec.minrk)
    assert rec.epsilon == epsilon_of(rec.n, rec.opt, rec.minrk)
    assert rec.seed == 9
    back = SearchRecord.from_json(rec.to_json())
    assert back == rec
    assert json.loads(rec.to_json())["epsilon_exact"] == [6, 16, 2]


def test_exhaustive_search_tiny_shape():
    recs = list(search(1, 2, mode="exhaustive"))
    assert len(recs) == 9
    assert {r.epsilon for r in recs} == {1.0, None}


def test_exhaustive_search_dedupes_row_multisets():
    recs = list(search(2, 2, mode="exhaustive"))
    # 9 distinct rows, multisets of two: C(9,2) + 9
    assert len(recs) == 45
    for rec in recs:
        rows = rec.matrix.split("/")
        assert rows == sorted(rows)
    assert len({r.matrix for r in recs}) == 45


def test_exhaustive_search_respects_space_limit():
    with pytest.raises(LimitError):
        list(search(2, 8, mode="exhaustive"))


def test_random_search_needs_seed_and_count():
    with pytest.raises(ValueError):
        list(search(2, 2, mode="random", count=3))
    with pytest.raises(ValueError):
        list(search(2, 2, mode="random", config=ToolConfig(seed=1)))
    with pytest.raises(ValueError):
        list(search(2, 2, mode="sideways"))


def test_random_search_reproducible_and_logged():
    cfg = ToolConfig(seed=7)
    log1, log2 = io.StringIO(), io.StringIO()
    r1 = list(search(3, 6, mode="random", count=25, config=cfg, log=log1))
    r2 = list(search(3, 6, mode="random", count=25, config=cfg, log=log2))
    assert r1 == r2
    assert log1.getvalue() == log2.getvalue()
    lines = log1.getvalue().splitlines()
    assert len(lines) == 25
    assert all(SearchRecord.from_json(line) in r1 for line in lines)


def test_threaded_search_keeps_input_order():
    base = list(search(2, 5, mode="random", count=40, config=ToolConfig(seed=3)))
    par = list(
        search(2, 5, mode="random", count=40, config=ToolConfig(seed=3, threads=4))
    )
    assert base == par


def test_counterexample_flagging():
    # alarm above 1 flags every matrix with defined epsilon 1.0
    cfg = ToolConfig(seed=5, epsilon_alarm=1.01)
    recs = list(search(1, 2, mode="exhaustive", config=cfg))
    flagged = [r for r in recs if r.flag == "COUNTEREXAMPLE-CANDIDATE"]
    assert flagged and all(r.epsilon == 1.0 for r in flagged)
    assert all(r.flag is None for r in search(1, 2, mode="exhaustive"))


def test_best_epsilon():
    recs = list(search(1, 2, mode="exhaustive"))
    best = best_epsilon(recs)
    assert best is not None and best.epsilon == 1.0
    assert best_epsilon([]) is None


def test_search_writes_to_configured_path(tmp_path):
    out = tmp_path / "log.jsonl"
    cfg = ToolConfig(seed=11, out=str(out))
    recs = list(search(2, 3, mode="random", count=5, config=cfg))
    lines = out.read_text().splitlines()
    assert [SearchRecord.from_json(ln) for ln in lines] == recs
    # append-only: a second run extends the log
    list(search(2, 3, mode="random", count=5, config=cfg))
    assert len(out.read_text().splitlines()) == 10
