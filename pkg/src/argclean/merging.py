"""Merge the accepted steps of several recipes into one ordered recipe."""

from __future__ import annotations

import heapq
import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .afgraph import Labeling
from .recipes import Operation, Recipe, RecipeStep, footprint, operation_to_wire

REASON_INTRA = "intra_recipe"
REASON_PRODUCES = "produces_consumes"
REASON_CONSUME = "consume_before_delete"
DEFAULT_DEPENDENCY_RULES = (REASON_INTRA, REASON_PRODUCES, REASON_CONSUME)


class UnresolvedConflictError(ValueError):
    """Merging was attempted while some arguments are still undecided."""

    def __init__(self, arguments: Iterable[str]):
        self.arguments = tuple(sorted(arguments))
        super().__init__("unresolved conflicts: " + ", ".join(self.arguments))


class DependencyCycleError(ValueError):
    """The accepted steps cannot be ordered; carries one offending cycle."""

    def __init__(self, cycle: Sequence[str]):
        self.cycle = tuple(cycle)
        super().__init__("dependency cycle: " + " -> ".join(self.cycle + (self.cycle[0],)))


@dataclass(frozen=True)
class DependencyEdge:
    before: str
    after: str
    reason: str


@dataclass(frozen=True)
class MergedStep:
    label: str
    operation: Operation
    curator: str


@dataclass(frozen=True)
class MergedRecipe:
    """Accepted steps in execution order plus the edges justifying it."""

    steps: tuple[MergedStep, ...]
    dependency_edges: frozenset[DependencyEdge]


def dependency_edges(
    accepted: Iterable[tuple[RecipeStep, str]],
    rules: Sequence[str] = DEFAULT_DEPENDENCY_RULES,
) -> frozenset[DependencyEdge]:
    """Ordering constraints among accepted (step, curator) pairs.

    intra_recipe: steps of one curator keep their original relative
    order.  produces_consumes: a step writing a column goes before
    another curator's step reading or deleting that column.
    consume_before_delete: a step reading a column goes before another
    curator's step deleting it, unless a produces_consumes edge already
    orders the pair the other way around.
    """
    items = list(accepted)
    prints = {step.label: footprint(step.operation) for step, _ in items}
    edges: set[DependencyEdge] = set()

    if REASON_INTRA in rules:
        for s1, c1 in items:
            for s2, c2 in items:
                if c1 == c2 and s1.position < s2.position:
                    edges.add(DependencyEdge(s1.label, s2.label, REASON_INTRA))

    produced: set[tuple[str, str]] = set()
    if REASON_PRODUCES in rules:
        for x, cx in items:
            for y, cy in items:
                if cx == cy or x.label == y.label:
                    continue
                consumed = prints[y.label].columns_read | prints[y.label].columns_deleted
                if prints[x.label].columns_written & consumed:
                    edges.add(DependencyEdge(x.label, y.label, REASON_PRODUCES))
                    produced.add((x.label, y.label))

    if REASON_CONSUME in rules:
        for x, cx in items:  # the deleting step
            for y, cy in items:  # the reading step
                if cx == cy or x.label == y.label:
                    continue
                if prints[x.label].columns_deleted & prints[y.label].columns_read:
                    if (x.label, y.label) in produced:
                        continue
                    edges.add(DependencyEdge(y.label, x.label, REASON_CONSUME))

    return frozenset(edges)


def _find_cycle(nodes: set[str], successors: dict[str, set[str]]) -> list[str]:
    color: dict[str, int] = {}
    stack: list[str] = []

    def visit(n: str) -> list[str] | None:
        color[n] = 1
        stack.append(n)
        for m in sorted(successors.get(n, ())):
            if m not in nodes:
                continue
            if color.get(m) == 1:
                return stack[stack.index(m):]
            if color.get(m) is None:
                found = visit(m)
                if found:
                    return found
        stack.pop()
        color[n] = 2
        return None

    for n in sorted(nodes):
        if color.get(n) is None:
            found = visit(n)
            if found:
                return found
    return sorted(nodes)  # unreachable for a genuine cycle set


def _topological_order(
    accepted: Sequence[tuple[RecipeStep, str]],
    edges: frozenset[DependencyEdge],
) -> list[str]:
    key = {step.label: (step.position, curator, step.label) for step, curator in accepted}
    pairs = {(e.before, e.after) for e in edges}
    successors: dict[str, set[str]] = defaultdict(set)
    indegree = {label: 0 for label in key}
    for before, after in pairs:
        if before in indegree and after in indegree and after not in successors[before]:
            successors[before].add(after)
            indegree[after] += 1

    heap = [key[label] for label, d in indegree.items() if d == 0]
    heapq.heapify(heap)
    order: list[str] = []
    while heap:
        _, _, label = heapq.heappop(heap)
        order.append(label)
        for nxt in successors[label]:
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                heapq.heappush(heap, key[nxt])
    if len(order) < len(key):
        remaining = set(key) - set(order)
        raise DependencyCycleError(_find_cycle(remaining, successors))
    return order


def merge(
    recipes: Iterable[Recipe],
    labeling: Labeling,
    rules: Sequence[str] = DEFAULT_DEPENDENCY_RULES,
) -> MergedRecipe:
    """Combine the accepted steps of ``recipes`` into one ordered recipe.

    The labeling must be two-valued over exactly the recipes' step
    labels; undecided arguments raise :class:`UnresolvedConflictError`.
    Steps are the accepted arguments, ordered by a deterministic
    topological sort of the dependency edges.  Ties prefer the smaller
    original position, then curator name, then label.
    """
    steps: dict[str, tuple[RecipeStep, str]] = {}
    for r in recipes:
        for s in r.steps:
            if s.label in steps:
                raise ValueError(f"duplicate step label {s.label!r} across recipes")
            steps[s.label] = (s, r.curator)

    if labeling.arguments != frozenset(steps):
        missing = sorted(frozenset(steps) - labeling.arguments)
        extra = sorted(labeling.arguments - frozenset(steps))
        parts = []
        if missing:
            parts.append(f"unlabeled steps: {', '.join(missing)}")
        if extra:
            parts.append(f"labels without steps: {', '.join(extra)}")
        raise ValueError("labeling does not match the recipes: " + "; ".join(parts))
    if labeling.undec_set:
        raise UnresolvedConflictError(labeling.undec_set)

    accepted = [steps[label] for label in sorted(labeling.in_set)]
    edges = dependency_edges(accepted, rules)
    order = _topological_order(accepted, edges)
    merged_steps = tuple(
        MergedStep(label, steps[label][0].operation, steps[label][1]) for label in order
    )
    return MergedRecipe(merged_steps, edges)


@dataclass(frozen=True)
class OrderCheck:
    valid: bool
    violations: tuple[DependencyEdge, ...]


def validate_order(merged: MergedRecipe) -> OrderCheck:
    """Check the step order against the recipe's own dependency edges."""
    position = {s.label: i for i, s in enumerate(merged.steps)}
    bad = []
    for e in sorted(merged.dependency_edges, key=lambda e: (e.before, e.after, e.reason)):
        if e.before not in position or e.after not in position:
            bad.append(e)
        elif position[e.before] >= position[e.after]:
            bad.append(e)
    return OrderCheck(not bad, tuple(bad))


def reorder(merged: MergedRecipe, labels: Sequence[str]) -> MergedRecipe:
    """Same steps and edges, in the caller's order.  Useful for checking
    an externally proposed order with :func:`validate_order`."""
    by_label = {s.label: s for s in merged.steps}
    if sorted(labels) != sorted(by_label):
        raise ValueError("reorder must permute exactly the merged steps")
    return MergedRecipe(tuple(by_label[l] for l in labels), merged.dependency_edges)


def merged_to_json_obj(merged: MergedRecipe) -> dict:
    steps = []
    for s in merged.steps:
        kind, args = operation_to_wire(s.operation)
        steps.append(
            {"label": s.label, "op": kind, "args": args,
             "curator": s.curator, "source_label": s.label}
        )
    deps = sorted((e.before, e.after, e.reason) for e in merged.dependency_edges)
    return {"curator": "merged", "steps": steps, "dependencies": [list(d) for d in deps]}


def serialize_merged(merged: MergedRecipe) -> str:
    return json.dumps(merged_to_json_obj(merged), indent=2) + "\n"
