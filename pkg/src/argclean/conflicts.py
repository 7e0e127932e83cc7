"""Pairwise conflict policy between cleaning operations.

The policy is data, not code: a table of rules, each mapping a pair of
operation kinds plus an overlap predicate to an attack outcome.
Alternative tables can be loaded from JSON and passed wherever a
``rules`` argument is accepted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .afgraph import AttackGraph
from .recipes import OP_KINDS, Operation, Recipe


class ConflictKind(str, Enum):
    MUTUAL = "mutual"
    A_ATTACKS_B = "a_attacks_b"
    B_ATTACKS_A = "b_attacks_a"
    NONE = "none"


def _same_cell(a, b) -> bool:
    return a.row_id == b.row_id and a.column == b.column


def _same_row(a, b) -> bool:
    return a.row_id == b.row_id


def _same_column(a, b) -> bool:
    # For rename this is the old name; scoping is by plain name, not lineage.
    return a.column == b.column


def _column_in_sources(a, b) -> bool:
    return a.column in b.columns


OVERLAP_PREDICATES = {
    "same_cell": _same_cell,
    "same_row": _same_row,
    "same_column": _same_column,
    "column_in_sources": _column_in_sources,
}


@dataclass(frozen=True)
class ConflictRule:
    """When operations of kinds (a, b) overlap per the predicate, the
    stated attack holds.  Pairs without a matching rule never conflict."""

    kind_a: str
    kind_b: str
    overlap: str
    outcome: ConflictKind

    def __post_init__(self):
        if self.kind_a not in OP_KINDS or self.kind_b not in OP_KINDS:
            raise ValueError(f"unknown operation kind in rule: {self.kind_a!r}/{self.kind_b!r}")
        if self.overlap not in OVERLAP_PREDICATES:
            raise ValueError(f"unknown overlap predicate: {self.overlap!r}")
        if not isinstance(self.outcome, ConflictKind) or self.outcome is ConflictKind.NONE:
            raise ValueError("rule outcome must be mutual, a_attacks_b, or b_attacks_a")


_M = ConflictKind.MUTUAL
_A = ConflictKind.A_ATTACKS_B

DEFAULT_CONFLICT_RULES: tuple[ConflictRule, ...] = (
    ConflictRule("cell_edit", "cell_edit", "same_cell", _M),
    ConflictRule("del_row", "cell_edit", "same_row", _A),
    ConflictRule("del_col", "cell_edit", "same_column", _A),
    ConflictRule("cell_edit", "split_col", "same_column", _A),
    ConflictRule("del_col", "split_col", "same_column", _A),
    ConflictRule("transform", "cell_edit", "same_column", _M),
    ConflictRule("del_col", "transform", "same_column", _A),
    ConflictRule("transform", "split_col", "same_column", _A),
    ConflictRule("transform", "transform", "same_column", _M),
    ConflictRule("cell_edit", "join_col", "column_in_sources", _A),
    ConflictRule("del_col", "join_col", "column_in_sources", _A),
    ConflictRule("transform", "join_col", "column_in_sources", _A),
    ConflictRule("rename", "cell_edit", "same_column", _A),
    ConflictRule("rename", "del_col", "same_column", _M),
    ConflictRule("rename", "split_col", "same_column", _A),
    ConflictRule("rename", "transform", "same_column", _A),
    ConflictRule("rename", "join_col", "column_in_sources", _A),
    ConflictRule("rename", "rename", "same_column", _M),
)


def _mirror(outcome: ConflictKind) -> ConflictKind:
    if outcome is ConflictKind.A_ATTACKS_B:
        return ConflictKind.B_ATTACKS_A
    if outcome is ConflictKind.B_ATTACKS_A:
        return ConflictKind.A_ATTACKS_B
    return outcome


def pairwise_conflict(
    a: Operation,
    b: Operation,
    rules: Sequence[ConflictRule] = DEFAULT_CONFLICT_RULES,
) -> ConflictKind:
    """Attack relation between two operations from different curators.

    Identical operations never conflict.  The first matching rule wins;
    rules stored for (kind_b, kind_a) apply mirrored.
    """
    if a == b:
        return ConflictKind.NONE
    for rule in rules:
        predicate = OVERLAP_PREDICATES[rule.overlap]
        if rule.kind_a == a.kind and rule.kind_b == b.kind and predicate(a, b):
            return rule.outcome
        if rule.kind_a == b.kind and rule.kind_b == a.kind and predicate(b, a):
            return _mirror(rule.outcome)
    return ConflictKind.NONE


def detect_conflicts(
    recipes: Iterable[Recipe],
    rules: Sequence[ConflictRule] = DEFAULT_CONFLICT_RULES,
) -> tuple[AttackGraph, frozenset[tuple[str, str]]]:
    """Build the attack graph over all steps of two or more recipes.

    Arguments are the step labels (globally unique across recipes),
    attacks come from cross-curator pairwise conflicts (mutual becomes
    two directed edges), and the second return value holds the dashed
    execution-order edges: consecutive steps within each recipe.
    """
    recipe_list = list(recipes)
    if len(recipe_list) < 2:
        raise ValueError("conflict detection needs at least two recipes")
    owner: dict[str, str] = {}
    for r in recipe_list:
        for s in r.steps:
            if s.label in owner:
                raise ValueError(
                    f"duplicate step label {s.label!r} used by {owner[s.label]} and {r.curator}"
                )
            owner[s.label] = r.curator

    attacks: set[tuple[str, str]] = set()
    for r1, r2 in combinations(recipe_list, 2):
        for s in r1.steps:
            for t in r2.steps:
                verdict = pairwise_conflict(s.operation, t.operation, rules)
                if verdict is ConflictKind.MUTUAL:
                    attacks.add((s.label, t.label))
                    attacks.add((t.label, s.label))
                elif verdict is ConflictKind.A_ATTACKS_B:
                    attacks.add((s.label, t.label))
                elif verdict is ConflictKind.B_ATTACKS_A:
                    attacks.add((t.label, s.label))

    order_edges: set[tuple[str, str]] = set()
    for r in recipe_list:
        for s1, s2 in zip(r.steps, r.steps[1:]):
            order_edges.add((s1.label, s2.label))
    return AttackGraph(owner, attacks), frozenset(order_edges)


def load_conflict_rules(text: str) -> tuple[ConflictRule, ...]:
    """Load a rule table from JSON: a list of
    ``{"a": kind, "b": kind, "overlap": predicate, "result": outcome}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid conflict rule JSON: {exc}") from None
    if not isinstance(obj, list):
        raise ValueError("conflict rule JSON must be a list")
    rules = []
    for i, raw in enumerate(obj):
        if not isinstance(raw, dict):
            raise ValueError(f"rule {i}: must be an object")
        try:
            outcome = ConflictKind(raw.get("result"))
            rules.append(ConflictRule(raw.get("a"), raw.get("b"), raw.get("overlap"), outcome))
        except ValueError as exc:
            raise ValueError(f"rule {i}: {exc}") from None
    return tuple(rules)
