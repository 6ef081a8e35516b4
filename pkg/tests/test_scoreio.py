import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polytreelearn import (
    ParseError,
    SolveResult,
    make_instance,
    parse_graph,
    parse_scores,
    parse_set_family,
    write_result,
    write_scores,
)
from polytreelearn.gen import GenConfig, random_instance
from polytreelearn.model import Polytree

TWO_VAR = "2\nA 1\n0.0 0\nB 2\n0.0 0\n4.5 1 A\n"


# --- parse_scores ------------------------------------------------------------

def test_parse_single_variable():
    inst = parse_scores("1\nA 1\n0.0 0\n")
    assert inst.n == 1
    assert inst.names == ("A",)
    assert inst.families[0].entries == ((0, 0.0),)


def test_parse_two_variables():
    inst = parse_scores(TWO_VAR)
    assert inst.families[1].score_of(0b01) == 4.5


def test_parse_unknown_parent_name():
    with pytest.raises(ParseError, match="unknown parent name"):
        parse_scores("2\nA 1\n0.0 0\nB 1\n1.0 1 C\n")


def test_parse_forward_references_allowed():
    inst = parse_scores("2\nA 2\n0.0 0\n1.0 1 B\nB 1\n0.0 0\n")
    assert inst.families[0].score_of(0b10) == 1.0


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 4"):
        parse_scores("2\nA 1\n0.0 0\nB x\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_scores("1\nA 1\n0.0 2 B\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_scores("nope\n")


def test_parse_truncated_input():
    with pytest.raises(ParseError):
        parse_scores("2\nA 1\n0.0 0\n")


def test_parse_duplicate_name():
    with pytest.raises(ParseError, match="duplicate"):
        parse_scores("2\nA 1\n0.0 0\nA 1\n0.0 0\n")


def test_parse_tolerates_blank_lines_and_spacing():
    inst = parse_scores("\n 2 \n\nA 1\n  0.0   0\nB 2\n0.0 0\n4.5 1   A\n\n")
    assert inst.families[1].score_of(0b01) == 4.5


def test_parse_collapses_duplicate_sets_to_max():
    inst = parse_scores("2\nA 1\n0.0 0\nB 3\n0.0 0\n1.0 1 A\n3.0 1 A\n")
    assert inst.families[1].score_of(0b01) == 3.0


# --- write_scores ------------------------------------------------------------

def test_write_scores_round_trips_example():
    inst = parse_scores(TWO_VAR)
    assert parse_scores(write_scores(inst)) == inst


def test_write_scores_emits_empty_set_entry():
    inst = make_instance([[(0, 0.0)]], names=["solo"])
    text = write_scores(inst)
    assert text == "1\nsolo 1\n0.0 0\n"


def test_write_scores_integer_precision():
    big = float(2**52 + 1)
    inst = make_instance([[(0, 0.0)], [((0,), big), (0, 0.0)]])
    again = parse_scores(write_scores(inst))
    assert again.families[1].score_of(0b01) == big


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=2, max_value=7))
def test_round_trip_property(seed, n):
    cfg = GenConfig(n=n, max_parent_size=min(2, n - 1), sets_per_node=min(2, n - 1),
                    seed=seed)
    inst = random_instance(cfg)
    assert parse_scores(write_scores(inst)) == inst.__class__(
        inst.n, inst.families, inst.names
    )


# --- graphs and set families -------------------------------------------------

def test_parse_graph_path():
    g = parse_graph("3 2\n0 1\n1 2\n")
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))
    assert g.degree(1) == 2 and g.max_degree == 2


def test_parse_graph_rejects_self_loop():
    with pytest.raises(ParseError, match="self-loop"):
        parse_graph("2 1\n0 0\n")


def test_parse_graph_rejects_duplicate_edge():
    with pytest.raises(ParseError, match="duplicate"):
        parse_graph("2 2\n0 1\n1 0\n")


def test_parse_graph_rejects_out_of_range():
    with pytest.raises(ParseError, match="out of range"):
        parse_graph("2 1\n0 5\n")


def test_parse_set_family():
    fam = parse_set_family("4 2 2\n2 0 1\n2 2 3\n")
    assert fam.n == 4 and fam.t == 2
    assert fam.sets == (0b0011, 0b1100)


def test_parse_set_family_rejects_empty_set_and_bad_budget():
    with pytest.raises(ParseError, match="nonempty"):
        parse_set_family("2 1 1\n0\n")
    with pytest.raises(ParseError, match="budget"):
        parse_set_family("2 1 3\n1 0\n")
    with pytest.raises(ParseError, match="universe"):
        parse_set_family("2 1 1\n1 4\n")


# --- result records ----------------------------------------------------------

def _result(score, masks, names, **extras):
    return SolveResult(
        score=score, polytree=Polytree(masks), algorithm="dp",
        n=len(masks), names=tuple(names), extras=extras,
    )


def test_write_result_empty_polytree():
    rec = json.loads(write_result(_result(0.0, (0, 0), "AB")))
    assert rec["score"] == 0.0
    assert rec["arcs"] == []
    assert rec["algorithm"] == "dp"
    assert rec["n"] == 2


def test_write_result_one_arc_named():
    rec = json.loads(write_result(_result(4.5, (0, 0b01), "AB")))
    assert rec["arcs"] == [["A", "B"]]


def test_write_result_neg_inf_rendered():
    rec = json.loads(write_result(_result(-math.inf, (0,), "A")))
    assert rec["score"] == "-inf"


def test_write_result_field_order_and_extras():
    text = write_result(_result(1.0, (0,), "A", zeta=1, alpha=2))
    keys = list(json.loads(text).keys())
    assert keys == ["score", "arcs", "algorithm", "n", "states_visited",
                    "runtime_ms", "alpha", "zeta"]


def test_write_result_arcs_sorted_by_child_then_parent():
    rec = json.loads(write_result(_result(0.0, (0, 0, 0b011), "ABC")))
    assert rec["arcs"] == [["A", "C"], ["B", "C"]]
