import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argclean import (
    CellEdit,
    ConflictKind,
    ConflictRule,
    DelCol,
    DelRow,
    JoinCol,
    Rename,
    SplitCol,
    Transform,
    detect_conflicts,
    footprint,
    load_conflict_rules,
    pairwise_conflict,
)
from conftest import DEMO_ATTACKS


# ---------------------------------------------------------------- pairwise

def test_rename_rename_same_source_mutual():
    a = Rename("Book Title", "Book-Title")
    b = Rename("Book Title", "Book_Title")
    assert pairwise_conflict(a, b) is ConflictKind.MUTUAL


def test_del_row_attacks_cell_edit_same_row():
    a = DelRow(4)
    b = CellEdit(4, "Author", "Shannon, C.E.")
    assert pairwise_conflict(a, b) is ConflictKind.A_ATTACKS_B
    assert pairwise_conflict(b, a) is ConflictKind.B_ATTACKS_A


def test_identical_del_rows_do_not_conflict():
    assert pairwise_conflict(DelRow(3), DelRow(3)) is ConflictKind.NONE


def test_transform_attacks_join_reading_its_column():
    a = Transform("Date", "value.toNumber()")
    b = JoinCol(("Last Name", "Date"), ",", "Citation")
    assert pairwise_conflict(a, b) is ConflictKind.A_ATTACKS_B


def test_cell_edit_same_cell_different_value_mutual():
    a = CellEdit(3, "Author", "Stanford, P.")
    b = CellEdit(3, "Author", "Stanford, P.K.")
    assert pairwise_conflict(a, b) is ConflictKind.MUTUAL


def test_cell_edit_same_column_different_row_none():
    a = CellEdit(3, "Author", "x")
    b = CellEdit(4, "Author", "y")
    assert pairwise_conflict(a, b) is ConflictKind.NONE


def test_identical_splits_do_not_conflict():
    assert pairwise_conflict(SplitCol("Author", ","), SplitCol("Author", ",")) is ConflictKind.NONE


def test_split_split_same_column_different_separator_none():
    # the policy table leaves split/split empty even for the same column
    assert pairwise_conflict(SplitCol("Author", ","), SplitCol("Author", ";")) is ConflictKind.NONE


def test_cell_edit_attacks_split_on_its_column():
    a = CellEdit(3, "Author", "x")
    b = SplitCol("Author", ",")
    assert pairwise_conflict(a, b) is ConflictKind.A_ATTACKS_B


def test_rename_attacks_cell_edit_on_old_name():
    a = Rename("Author", "Writer")
    b = CellEdit(2, "Author", "x")
    assert pairwise_conflict(a, b) is ConflictKind.A_ATTACKS_B


def test_rename_del_col_same_column_mutual():
    assert pairwise_conflict(Rename("A", "B"), DelCol("A")) is ConflictKind.MUTUAL


def test_name_scoping_is_not_lineage_scoping():
    # renaming a split output does not touch the split's source column
    assert pairwise_conflict(Rename("Author 1", "Last Name"), SplitCol("Author", ",")) is ConflictKind.NONE


def test_join_join_none_even_with_same_new_column():
    a = JoinCol(("A", "B"), ",", "C")
    b = JoinCol(("X", "Y"), ",", "C")
    assert pairwise_conflict(a, b) is ConflictKind.NONE


_ops = st.one_of(
    st.builds(CellEdit, st.integers(1, 3), st.sampled_from("AB"), st.sampled_from(["x", "y"])),
    st.builds(DelRow, st.integers(1, 3)),
    st.builds(DelCol, st.sampled_from("AB")),
    st.builds(SplitCol, st.sampled_from("AB"), st.sampled_from([",", ";"])),
    st.builds(Transform, st.sampled_from("AB"), st.sampled_from(["value.trim()", "value.toNumber()"])),
    st.builds(
        JoinCol,
        st.sampled_from([("A", "B"), ("B", "A")]),
        st.just(","),
        st.just("C"),
    ),
    st.builds(Rename, st.sampled_from("AB"), st.sampled_from(["X", "Y"])),
)


@settings(max_examples=400, deadline=None)
@given(_ops, _ops)
def test_pairwise_mirror_property(a, b):
    forward = pairwise_conflict(a, b)
    backward = pairwise_conflict(b, a)
    mirror = {
        ConflictKind.MUTUAL: ConflictKind.MUTUAL,
        ConflictKind.NONE: ConflictKind.NONE,
        ConflictKind.A_ATTACKS_B: ConflictKind.B_ATTACKS_A,
        ConflictKind.B_ATTACKS_A: ConflictKind.A_ATTACKS_B,
    }
    assert backward is mirror[forward]


@settings(max_examples=400, deadline=None)
@given(_ops, _ops)
def test_conflicts_require_footprint_overlap(a, b):
    if pairwise_conflict(a, b) is ConflictKind.NONE:
        return
    fa, fb = footprint(a), footprint(b)
    names_a = fa.columns_read | fa.columns_written | fa.columns_deleted
    names_b = fb.columns_read | fb.columns_written | fb.columns_deleted
    rows_a = fa.rows_deleted | {r for r, _ in fa.cells_edited}
    rows_b = fb.rows_deleted | {r for r, _ in fb.cells_edited}
    assert (names_a & names_b) or (rows_a & rows_b)


# ---------------------------------------------------------------- detection

def test_demo_attacks_exact(demo_graph):
    graph, _ = demo_graph
    assert graph.attacks == DEMO_ATTACKS
    assert graph.arguments == set("EFGHIJKLMNOPQRS")


def test_demo_order_edges(demo_graph, alice, bob):
    _, order_edges = demo_graph
    assert len(order_edges) == 13  # 6 consecutive pairs + 7
    assert ("E", "F") in order_edges
    assert ("R", "S") in order_edges


def test_no_intra_recipe_attacks(demo_graph, alice, bob):
    graph, _ = demo_graph
    owner = {s.label: r.curator for r in (alice, bob) for s in r.steps}
    for s, t in graph.attacks:
        assert owner[s] != owner[t]


def test_identical_one_step_recipes_no_attacks(alice):
    from argclean import Recipe, RecipeStep, DelRow

    r1 = Recipe("X", (RecipeStep("A", DelRow(1), 1),))
    r2 = Recipe("Y", (RecipeStep("B", DelRow(1), 1),))
    graph, _ = detect_conflicts([r1, r2])
    assert graph.attacks == frozenset()


def test_single_recipe_rejected(alice):
    with pytest.raises(ValueError, match="at least two"):
        detect_conflicts([alice])


def test_duplicate_labels_across_recipes_rejected(alice):
    with pytest.raises(ValueError, match="duplicate step label"):
        detect_conflicts([alice, alice])


def test_three_recipes_cross_pairs_only():
    from argclean import Recipe, RecipeStep

    r1 = Recipe("X", (RecipeStep("A", CellEdit(1, "C", "x"), 1),))
    r2 = Recipe("Y", (RecipeStep("B", CellEdit(1, "C", "y"), 1),))
    r3 = Recipe("Z", (RecipeStep("D", DelRow(1), 1),))
    graph, _ = detect_conflicts([r1, r2, r3])
    assert ("A", "B") in graph.attacks and ("B", "A") in graph.attacks
    assert ("D", "A") in graph.attacks and ("D", "B") in graph.attacks


# ---------------------------------------------------------------- pluggable table

def test_load_conflict_rules_round_trip():
    text = '[{"a": "del_row", "b": "cell_edit", "overlap": "same_row", "result": "a_attacks_b"}]'
    rules = load_conflict_rules(text)
    assert rules == (ConflictRule("del_row", "cell_edit", "same_row", ConflictKind.A_ATTACKS_B),)
    assert pairwise_conflict(DelRow(1), CellEdit(1, "A", "x"), rules) is ConflictKind.A_ATTACKS_B
    # the custom table drops every other rule
    assert pairwise_conflict(Rename("A", "B"), Rename("A", "C"), rules) is ConflictKind.NONE


def test_load_conflict_rules_rejects_unknown_predicate():
    with pytest.raises(ValueError, match="unknown overlap predicate"):
        load_conflict_rules('[{"a": "del_row", "b": "cell_edit", "overlap": "nearby", "result": "mutual"}]')
