import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argclean import (
    ApxSyntaxError,
    AttackGraph,
    Label,
    Labeling,
    Verdict,
    grounded_labeling,
    labeling_from_json,
    labeling_to_json,
    parse_apx,
    stable_labelings,
    to_apx,
    to_dot,
    verify_labeling,
)
from oracles import grounded_by_alternating_fixpoint, random_graph, stable_by_enumeration


# ---------------------------------------------------------------- apx

def test_parse_apx_single_line():
    graph = parse_apx("arg(a). arg(b). att(a,b).")
    assert graph.arguments == {"a", "b"}
    assert graph.attacks == {("a", "b")}


def test_parse_apx_empty():
    graph = parse_apx("")
    assert graph.arguments == frozenset()
    assert graph.attacks == frozenset()


def test_parse_apx_comments_and_blank_lines():
    text = "% a demo graph\narg(x).\n\narg(y). % trailing comment\natt(x,y).\n"
    graph = parse_apx(text)
    assert graph.arguments == {"x", "y"}
    assert graph.attacks == {("x", "y")}


def test_parse_apx_undeclared_argument():
    with pytest.raises(ApxSyntaxError, match="undeclared argument 'a'"):
        parse_apx("att(a,b).")


def test_parse_apx_syntax_error_has_line_number():
    with pytest.raises(ApxSyntaxError, match="line 2"):
        parse_apx("arg(a).\nargh(b).\n")


def test_parse_apx_forward_reference_ok():
    graph = parse_apx("att(a,b). arg(a). arg(b).")
    assert graph.attacks == {("a", "b")}


def test_apx_round_trip():
    graph = AttackGraph(["b", "a", "c"], [("a", "b"), ("c", "c")])
    assert parse_apx(to_apx(graph)) == graph


# ---------------------------------------------------------------- graph type

def test_graph_rejects_undeclared_endpoints():
    with pytest.raises(ValueError, match="undeclared"):
        AttackGraph(["a"], [("a", "b")])


def test_graph_rejects_empty_id():
    with pytest.raises(ValueError):
        AttackGraph([""])


def test_graph_accepts_self_attack():
    graph = AttackGraph(["a"], [("a", "a")])
    assert graph.attackers("a") == {"a"}
    assert graph.targets("a") == {"a"}


# ---------------------------------------------------------------- grounded

def test_grounded_chain():
    graph = AttackGraph("abc", [("a", "b"), ("b", "c")])
    labeling = grounded_labeling(graph)
    # frozen from the alternating-fixpoint oracle
    assert labeling == Labeling({"a": "in", "b": "out", "c": "in"})
    assert labeling == grounded_by_alternating_fixpoint(graph)


def test_grounded_self_attack_is_undecided():
    graph = AttackGraph(["a"], [("a", "a")])
    assert grounded_labeling(graph) == Labeling({"a": "undec"})


def test_grounded_empty_graph():
    assert grounded_labeling(AttackGraph([])) == Labeling({})


def test_grounded_demo_graph(demo_graph):
    graph, _ = demo_graph
    labeling = grounded_labeling(graph)
    assert labeling.in_set == {"H", "Q"}
    assert labeling.out_set == {"N", "K"}
    assert labeling.undec_set == set("EFGIJLMOPRS")


# ---------------------------------------------------------------- stable

def test_stable_demo_graph_has_sixteen(demo_graph):
    graph, _ = demo_graph
    assert len(stable_labelings(graph)) == 16


def test_stable_self_attack_none():
    graph = AttackGraph(["a"], [("a", "a")])
    assert stable_labelings(graph) == []


def test_stable_mutual_pair_with_free_argument():
    graph = AttackGraph(["a", "c", "d"], [("c", "d"), ("d", "c")])
    labelings = stable_labelings(graph)
    assert [sorted(l.in_set) for l in labelings] == [["a", "c"], ["a", "d"]]


def test_stable_empty_graph_single_empty_labeling():
    assert stable_labelings(AttackGraph([])) == [Labeling({})]


def test_stable_limit_caps_enumeration(demo_graph):
    graph, _ = demo_graph
    assert len(stable_labelings(graph, limit=5)) == 5
    assert stable_labelings(graph, limit=0) == []


def test_stable_canonical_order(demo_graph):
    graph, _ = demo_graph
    keys = [tuple(sorted(l.in_set)) for l in stable_labelings(graph)]
    assert keys == sorted(keys)


def test_stable_refines_grounded(demo_graph):
    graph, _ = demo_graph
    grounded = grounded_labeling(graph)
    for labeling in stable_labelings(graph):
        for a in grounded.in_set:
            assert labeling.label(a) is Label.IN
        for a in grounded.out_set:
            assert labeling.label(a) is Label.OUT


# ---------------------------------------------------------------- oracle equivalence

@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_solvers_agree_with_oracles(seed):
    graph = random_graph(seed, max_args=8)
    assert grounded_labeling(graph) == grounded_by_alternating_fixpoint(graph)
    assert stable_labelings(graph) == stable_by_enumeration(graph)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_unattacked_arguments_accepted_everywhere(seed):
    graph = random_graph(seed, max_args=8)
    unattacked = {a for a in graph.arguments if not graph.attackers(a)}
    grounded = grounded_labeling(graph)
    for a in unattacked:
        assert grounded.label(a) is Label.IN
    for labeling in stable_labelings(graph):
        for a in unattacked:
            assert labeling.label(a) is Label.IN


# ---------------------------------------------------------------- verify

def test_verify_stable(demo_graph):
    graph, _ = demo_graph
    labeling = Labeling(
        {a: ("in" if a in "EHJMOPQS" else "out") for a in graph.arguments}
    )
    result = verify_labeling(graph, labeling)
    assert result.verdict is Verdict.STABLE
    assert result.violations == ()


def test_verify_all_undec_matches_grounded_only_when_grounded_all_undec():
    balanced = AttackGraph("ab", [("a", "b"), ("b", "a")])
    all_undec = Labeling({"a": "undec", "b": "undec"})
    assert verify_labeling(balanced, all_undec).verdict is Verdict.GROUNDED_CONSISTENT

    chain = AttackGraph("ab", [("a", "b")])
    result = verify_labeling(chain, Labeling({"a": "undec", "b": "undec"}))
    assert result.verdict is Verdict.ILLEGAL
    assert any(v.argument == "a" and v.condition == "legal-undec" for v in result.violations)


def test_verify_conflicting_in_set_is_illegal():
    graph = AttackGraph("ab", [("a", "b")])
    result = verify_labeling(graph, Labeling({"a": "in", "b": "in"}))
    assert result.verdict is Verdict.ILLEGAL
    assert any(v.argument == "b" and v.condition == "legal-in" for v in result.violations)


def test_verify_requires_total_labeling():
    graph = AttackGraph("ab", [("a", "b")])
    with pytest.raises(ValueError, match="not total"):
        verify_labeling(graph, Labeling({"a": "in"}))


def test_verify_grounded_is_never_illegal():
    for seed in range(60):
        graph = random_graph(seed, max_args=8)
        result = verify_labeling(graph, grounded_labeling(graph))
        assert result.verdict is not Verdict.ILLEGAL
        assert result.violations == ()


# ---------------------------------------------------------------- dot

def test_dot_empty_graph():
    assert to_dot(AttackGraph([])) == "digraph {\n}\n"


def test_dot_plain_edge():
    graph = AttackGraph("ab", [("a", "b")])
    assert to_dot(graph) == 'digraph {\n  "a";\n  "b";\n  "a" -> "b";\n}\n'


def test_dot_colors_and_order_edges(demo_graph):
    graph, order_edges = demo_graph
    text = to_dot(graph, grounded_labeling(graph), order_edges)
    assert text.count('fillcolor="#9BDFFB"') == 2   # accepted
    assert text.count('fillcolor="#FFC380"') == 2   # rejected
    assert text.count('fillcolor="#F0CC00"') == 11  # undecided
    assert text.count("style=dashed") == 13


def test_dot_deterministic(demo_graph):
    graph, order_edges = demo_graph
    labeling = grounded_labeling(graph)
    assert to_dot(graph, labeling, order_edges) == to_dot(graph, labeling, order_edges)


def test_dot_shapes():
    graph = AttackGraph("ab", [("a", "b")])
    text = to_dot(graph, shapes={"a": "oval", "b": "box"})
    assert '"a" [shape=oval];' in text
    assert '"b" [shape=box];' in text


# ---------------------------------------------------------------- labeling json

def test_labeling_json_round_trip(demo_graph):
    graph, _ = demo_graph
    labeling = grounded_labeling(graph)
    assert labeling_from_json(labeling_to_json(labeling)) == labeling


def test_labeling_json_sorted_keys():
    labeling = Labeling({"b": "in", "a": "out"})
    assert labeling_to_json(labeling) == json.dumps({"a": "out", "b": "in"})


def test_labeling_json_rejects_bad_value():
    with pytest.raises(ValueError, match="invalid labeling JSON"):
        labeling_from_json('{"a": "maybe"}')
