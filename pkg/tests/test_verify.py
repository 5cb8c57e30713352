import json

import pytest

from efpebble import generators as gen
from efpebble.game import INF
from efpebble.structures import make_graph
from efpebble.verify import (
    CRITERIA,
    FAIL,
    SKIP,
    Report,
    Row,
    Session,
    minimax_depth,
    reports_to_csv,
    run_criterion,
    small_graphs,
    tree_pairs,
    truncation_samples,
)

K2, TWO_K1 = make_graph(2, [(0, 1)]), make_graph(2)


def test_registry_has_every_criterion():
    assert len(CRITERIA) == 13
    assert {"thm1-colored-trees", "thm8-bound", "formula-soundness", "oracle-equivalence"} <= set(CRITERIA)


def test_corpus_sizes():
    assert len(small_graphs(6)) == 208
    assert sum(g.n == 6 for g in small_graphs(6)) == 156


def test_samples_are_seeded():
    assert tree_pairs(5) == tree_pairs(5)
    assert all(t.n <= 12 and g.n <= 10 for _, t, g in truncation_samples(30))


def test_oracle_values():
    assert minimax_depth(K2, TWO_K1, 2) == 2
    assert minimax_depth(K2, K2, 2) == INF
    red_blue = (make_graph(3, [], ["red", "blue", "blue"]), make_graph(3, [], "blue"))
    assert minimax_depth(*red_blue, 2, "sigma", 1) == 1
    assert minimax_depth(*red_blue, 2, "pi", 1) == INF


def test_oracle_respects_cap():
    g, h = gen.cycle_pair(2)
    assert minimax_depth(g, h, 2, "sigma", 1, cap=3) == INF


def test_thm1_small():
    rep = run_criterion("thm1-colored-trees", max_i=2)
    assert rep.passed and len(rep.rows) == 2
    assert rep.rows[1].computed["pi"] == INF


def test_thm4_single_ladder():
    rep = run_criterion("thm4-ladder", max_m=2)
    assert rep.passed
    assert rep.rows[0].computed["alternation"] == 1


def test_documented_skip():
    rep = run_criterion("thm2-uncolored-trees")
    assert rep.passed
    skipped = [r for r in rep.rows if r.status == SKIP]
    assert len(skipped) == 1 and not skipped[0].required
    assert "limit" in skipped[0].reason
    assert not rep.limit_hit


def test_piggyback_checks_use_session_log():
    s = Session()
    run_criterion("thm4-ladder", s, max_m=3)
    rep = run_criterion("formula-soundness", s)
    assert rep.passed and rep.rows[0].computed["formulas"] > 0
    rep = run_criterion("thm8-bound", s)
    assert rep.passed


def test_reports_are_reproducible():
    a = run_criterion("thm5-cycle", max_m=2)
    b = run_criterion("thm5-cycle", max_m=2)
    assert a.to_json() == b.to_json()
    assert "seconds" in a.timings and "seconds" not in a.to_json()


def test_failing_row_fails_report():
    rep = Report("x", [Row({}, {"v": INF}, {}, FAIL)])
    assert not rep.passed
    assert json.loads(rep.to_json())["rows"][0]["computed"]["v"] == "inf"
    assert "fail" in reports_to_csv([rep])


def test_unknown_criterion():
    with pytest.raises(KeyError):
        run_criterion("thm99")
