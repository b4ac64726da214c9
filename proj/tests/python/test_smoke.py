"""Smoke tests for the python bindings."""

import pytest

import gamebpa as g

SUBMITTING_P = "start . write . (submit . store $ cancel)"
SUBMITTING_DECL = """players P, O
owner O: submit, cancel
owner P: start, write, store
"""


def test_parse_print_roundtrip():
    term = g.parse_term(SUBMITTING_P)
    assert g.print_term(term) == SUBMITTING_P
    assert g.parse_term(g.print_term(term)) == term


def test_parse_error_positions():
    with pytest.raises(g.ParseError):
        g.parse_term("a + ")


def test_normalize_golden_deduction():
    play = g.Term.play(g.parse_term(SUBMITTING_P),
                       g.parse_term("start . write . submit . store"))
    trace = g.normalize(play)
    assert str(trace.final) == "start . write . submit . store"
    assert [s.rule for s in trace.steps][0] == "OA1"
    assert all(isinstance(s.position, list) for s in trace.steps)


def test_weight_and_canonical_forms():
    assert g.weight(g.parse_term("a & b")) == 16
    assert g.weight(g.parse_term("a $ b")) == 5
    assert g.ac_equal(g.parse_term("a + b"), g.parse_term("b + a"))
    assert not g.ac_equal(g.parse_term("a + a"), g.parse_term("a"))


def test_bisimulation():
    assert g.bisimilar(g.parse_term("a + b"), g.parse_term("b + a")).equivalent
    r = g.bisimilar(g.parse_term("a . (b + c)"), g.parse_term("a . b + a . c"))
    assert not r.equivalent
    assert r.witness[0] == "a"


def test_lts():
    lts = g.build_lts(g.parse_term(SUBMITTING_P))
    assert len(lts.states) == 4
    assert lts.root == 0
    assert "digraph" in lts.to_dot()


def test_strategies_and_play():
    decl = g.parse_game_decl(SUBMITTING_DECL)
    tree, warnings = g.game_tree_from_term(g.parse_term(SUBMITTING_P), decl, "P")
    assert warnings == []
    p_strategies = g.enumerate_strategies(tree, "P")
    o_strategies = g.enumerate_strategies(tree, "O")
    assert len(p_strategies) == 1
    assert len(o_strategies) == 2
    assert g.count_strategies(tree, "O") == 2

    report = g.verify_play([p_strategies[0], o_strategies[0]], decl)
    assert report.pass_
    assert str(report.play_term) == "start . write . submit . store"
    assert report.maximal_trace == ["start", "write", "submit", "store"]


def test_intersection():
    decl = g.parse_game_decl(SUBMITTING_DECL)
    tree, _ = g.game_tree_from_term(g.parse_term(SUBMITTING_P), decl, "P")
    p = g.enumerate_strategies(tree, "P")[0]
    o = g.enumerate_strategies(tree, "O")[0]
    common = g.intersect_strategies([p, o])
    assert common.maximal == ["start", "write", "submit", "store"]
    assert [] in common.traces


def test_selftest_small():
    results = g.run_selftest(seed=7, count=25)
    assert {r["suite"] for r in results} == {
        "weight-decrease",
        "normal-form-purity",
        "parser-roundtrip",
        "soundness",
        "completeness",
        "congruence",
        "play-correctness",
    }
    assert all(r["failures"] == 0 for r in results)
