"""Independent oracles for the solver tests.

Deliberately naive: the grounded oracle is a textbook alternating
fixpoint of the defeat rule, the stable oracle enumerates all 2^n
candidate accepted sets.  Neither shares code with the package solver.
"""

from __future__ import annotations

import random

from argclean import AttackGraph, Label, Labeling


def grounded_by_alternating_fixpoint(graph: AttackGraph) -> Labeling:
    """Alternate under- and over-estimates of the defeated set until both
    stabilize; accepted = never possibly defeated."""

    def defeated_given(not_defeated_excluded: set[str]) -> set[str]:
        return {t for (s, t) in graph.attacks if s not in not_defeated_excluded}

    certain: set[str] = set()
    possible = defeated_given(certain)
    while True:
        new_certain = defeated_given(possible)
        new_possible = defeated_given(new_certain)
        if new_certain == certain and new_possible == possible:
            break
        certain, possible = new_certain, new_possible
    labels = {}
    for a in graph.arguments:
        if a not in possible:
            labels[a] = Label.IN
        elif a in certain:
            labels[a] = Label.OUT
        else:
            labels[a] = Label.UNDEC
    return Labeling(labels)


def stable_by_enumeration(graph: AttackGraph) -> list[Labeling]:
    """Check every subset: accepted sets that are conflict-free and attack
    exactly the complement."""
    args = sorted(graph.arguments)
    n = len(args)
    index = {a: i for i, a in enumerate(args)}
    attack_mask = [0] * n
    for s, t in graph.attacks:
        attack_mask[index[s]] |= 1 << index[t]

    full = (1 << n) - 1
    attacked = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        attacked[mask] = attacked[mask ^ low] | attack_mask[low.bit_length() - 1]

    labelings = []
    for mask in range(1 << n):
        if attacked[mask] & mask:
            continue  # not conflict-free
        if attacked[mask] != full & ~mask:
            continue  # some outside argument not attacked
        labels = {a: (Label.IN if mask >> i & 1 else Label.OUT) for a, i in index.items()}
        labelings.append(Labeling(labels))
    labelings.sort(key=lambda lab: tuple(sorted(lab.in_set)))
    return labelings


def random_graph(seed: int, max_args: int = 12, max_density: float = 0.4) -> AttackGraph:
    """Seeded random graph; self-attacks allowed."""
    rng = random.Random(seed)
    n = rng.randint(1, max_args)
    density = rng.uniform(0.0, max_density)
    args = [f"a{i}" for i in range(n)]
    attacks = [(s, t) for s in args for t in args if rng.random() < density]
    return AttackGraph(args, attacks)
