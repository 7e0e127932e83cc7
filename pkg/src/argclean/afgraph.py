"""Attack graphs and their grounded and stable labelings.

An attack graph is a finite directed graph whose vertices are argument
ids and whose edges mean "source attacks target".  Solving assigns every
argument one of three labels: accepted (in), rejected (out), or
undecided.  The grounded labeling is the unique least-committed legal
assignment; stable labelings are the two-valued assignments refining it.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

IN_COLOR = "#9BDFFB"
OUT_COLOR = "#FFC380"
UNDEC_COLOR = "#F0CC00"


class Label(str, Enum):
    """Acceptance status of a single argument."""

    IN = "in"
    OUT = "out"
    UNDEC = "undec"


class Verdict(str, Enum):
    """Outcome of checking a labeling against its graph."""

    STABLE = "stable"
    GROUNDED_CONSISTENT = "grounded-consistent"
    ILLEGAL = "illegal"


class ApxSyntaxError(ValueError):
    """Malformed apx text.  ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class AttackGraph:
    """Immutable set of arguments plus a binary attacks relation.

    Self-attacks are allowed and duplicate edges collapse.  Both
    endpoints of every attack must be declared arguments.
    """

    __slots__ = ("_arguments", "_attacks", "_attackers", "_targets")

    def __init__(self, arguments: Iterable[str], attacks: Iterable[tuple[str, str]] = ()):
        args = frozenset(arguments)
        for a in args:
            if not isinstance(a, str) or not a:
                raise ValueError(f"argument ids must be non-empty strings, got {a!r}")
        edges = frozenset((s, t) for s, t in attacks)
        for s, t in edges:
            for end in (s, t):
                if end not in args:
                    raise ValueError(f"attack ({s!r}, {t!r}) references undeclared argument {end!r}")
        attackers: dict[str, set[str]] = {a: set() for a in args}
        targets: dict[str, set[str]] = {a: set() for a in args}
        for s, t in edges:
            attackers[t].add(s)
            targets[s].add(t)
        self._arguments = args
        self._attacks = edges
        self._attackers = {a: frozenset(v) for a, v in attackers.items()}
        self._targets = {a: frozenset(v) for a, v in targets.items()}

    @property
    def arguments(self) -> frozenset[str]:
        return self._arguments

    @property
    def attacks(self) -> frozenset[tuple[str, str]]:
        return self._attacks

    def attackers(self, argument: str) -> frozenset[str]:
        """Arguments attacking ``argument``."""
        try:
            return self._attackers[argument]
        except KeyError:
            raise ValueError(f"unknown argument {argument!r}") from None

    def targets(self, argument: str) -> frozenset[str]:
        """Arguments that ``argument`` attacks."""
        try:
            return self._targets[argument]
        except KeyError:
            raise ValueError(f"unknown argument {argument!r}") from None

    def __eq__(self, other):
        if not isinstance(other, AttackGraph):
            return NotImplemented
        return self._arguments == other._arguments and self._attacks == other._attacks

    def __hash__(self):
        return hash((self._arguments, self._attacks))

    def __repr__(self):
        return f"AttackGraph({len(self._arguments)} arguments, {len(self._attacks)} attacks)"


class Labeling:
    """Total map from argument id to :class:`Label`; a value object."""

    __slots__ = ("_assignment", "_in", "_out", "_undec")

    def __init__(self, assignment: Mapping[str, Label | str]):
        labeled = {a: Label(v) for a, v in assignment.items()}
        for a in labeled:
            if not isinstance(a, str) or not a:
                raise ValueError(f"argument ids must be non-empty strings, got {a!r}")
        self._assignment = labeled
        self._in = frozenset(a for a, v in labeled.items() if v is Label.IN)
        self._out = frozenset(a for a, v in labeled.items() if v is Label.OUT)
        self._undec = frozenset(a for a, v in labeled.items() if v is Label.UNDEC)

    def label(self, argument: str) -> Label:
        try:
            return self._assignment[argument]
        except KeyError:
            raise ValueError(f"argument {argument!r} is not labeled") from None

    @property
    def arguments(self) -> frozenset[str]:
        return frozenset(self._assignment)

    @property
    def in_set(self) -> frozenset[str]:
        return self._in

    @property
    def out_set(self) -> frozenset[str]:
        return self._out

    @property
    def undec_set(self) -> frozenset[str]:
        return self._undec

    def as_dict(self) -> dict[str, Label]:
        return dict(self._assignment)

    def __eq__(self, other):
        if not isinstance(other, Labeling):
            return NotImplemented
        return self._assignment == other._assignment

    def __hash__(self):
        return hash(frozenset(self._assignment.items()))

    def __len__(self):
        return len(self._assignment)

    def __repr__(self):
        return (
            f"Labeling(in={sorted(self._in)}, out={sorted(self._out)}, "
            f"undec={sorted(self._undec)})"
        )


_STATEMENT = re.compile(
    r"\s*(arg|att)\s*\(\s*([A-Za-z0-9_]+)\s*(?:,\s*([A-Za-z0-9_]+)\s*)?\)\s*\."
)


def parse_apx(text: str) -> AttackGraph:
    """Parse apx text: ``arg(x).`` and ``att(x,y).`` facts, ``%`` comments.

    Several facts may share one line.  Attacks may reference arguments
    declared anywhere in the text; undeclared references are an error.
    """
    arguments: list[str] = []
    attacks: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0]
        pos = 0
        while pos < len(line):
            if not line[pos:].strip():
                break
            m = _STATEMENT.match(line, pos)
            if not m:
                snippet = line[pos:].strip()[:40]
                raise ApxSyntaxError(f"unrecognized statement near {snippet!r}", lineno)
            kind, first, second = m.group(1), m.group(2), m.group(3)
            if kind == "arg":
                if second is not None:
                    raise ApxSyntaxError("arg() takes exactly one id", lineno)
                arguments.append(first)
            else:
                if second is None:
                    raise ApxSyntaxError("att() takes exactly two ids", lineno)
                attacks.append((first, second, lineno))
            pos = m.end()
    declared = set(arguments)
    for s, t, lineno in attacks:
        for end in (s, t):
            if end not in declared:
                raise ApxSyntaxError(f"attack references undeclared argument {end!r}", lineno)
    return AttackGraph(declared, [(s, t) for s, t, _ in attacks])


def to_apx(graph: AttackGraph) -> str:
    """Serialize a graph as apx text, arguments first, everything sorted."""
    lines = [f"arg({a})." for a in sorted(graph.arguments)]
    lines += [f"att({s},{t})." for s, t in sorted(graph.attacks)]
    return "\n".join(lines) + ("\n" if lines else "")


def grounded_labeling(graph: AttackGraph) -> Labeling:
    """The unique least fixpoint labeling of the graph.

    Arguments whose attackers are all rejected become accepted, targets
    of accepted arguments become rejected, everything else stays
    undecided.  Implemented as a worklist over per-argument counts of
    not-yet-rejected attackers; the result does not depend on
    processing order.
    """
    labels: dict[str, Label] = {}
    not_out = {a: len(graph.attackers(a)) for a in graph.arguments}
    ready = deque(sorted(a for a, n in not_out.items() if n == 0))
    while ready:
        x = ready.popleft()
        if x in labels:
            continue
        labels[x] = Label.IN
        for t in graph.targets(x):
            if t in labels:
                continue
            labels[t] = Label.OUT
            for u in graph.targets(t):
                not_out[u] -= 1
                if not_out[u] == 0 and u not in labels:
                    ready.append(u)
    return Labeling({a: labels.get(a, Label.UNDEC) for a in graph.arguments})


def _is_stable_assignment(graph: AttackGraph, state: dict[str, Label]) -> bool:
    for x, lx in state.items():
        atk = graph.attackers(x)
        if lx is Label.IN and any(state[y] is not Label.OUT for y in atk):
            return False
        if lx is Label.OUT and not any(state[y] is Label.IN for y in atk):
            return False
    return True


def stable_labelings(graph: AttackGraph, *, limit: int | None = None) -> list[Labeling]:
    """Every two-valued legal labeling, sorted by sorted accepted set.

    The search starts from the grounded labeling, branches only on its
    undecided arguments, and propagates forced labels before each
    branch:

    * an accepted argument forces all its attackers (and targets) to be
      rejected,
    * an argument whose attackers are all rejected must be accepted,
    * a rejected argument with no accepted attacker and a single
      undecided attacker forces that attacker to be accepted.

    Branches violating legality are pruned.  With ``limit`` set,
    enumeration stops after that many labelings were found; the result
    is then a deterministic subset rather than the full canonical list.
    """
    if limit is not None and limit <= 0:
        return []
    base = grounded_labeling(graph)
    order = sorted(graph.arguments)
    seed: dict[str, Label | None] = {
        a: (None if base.label(a) is Label.UNDEC else base.label(a)) for a in order
    }
    found: list[dict[str, Label]] = []

    def propagate(state: dict[str, Label | None]) -> bool:
        changed = True
        while changed:
            changed = False
            for x in order:
                lx = state[x]
                atk = graph.attackers(x)
                if lx is Label.IN:
                    for y in atk:
                        if state[y] is Label.IN:
                            return False
                        if state[y] is None:
                            state[y] = Label.OUT
                            changed = True
                elif lx is None:
                    if any(state[y] is Label.IN for y in atk):
                        state[x] = Label.OUT
                        changed = True
                    elif all(state[y] is Label.OUT for y in atk):
                        state[x] = Label.IN
                        changed = True
                else:  # OUT
                    if not any(state[y] is Label.IN for y in atk):
                        open_attackers = [y for y in atk if state[y] is None]
                        if not open_attackers:
                            return False
                        if len(open_attackers) == 1:
                            state[open_attackers[0]] = Label.IN
                            changed = True
        return True

    def search(state: dict[str, Label | None]) -> bool:
        if not propagate(state):
            return True
        pick = next((x for x in order if state[x] is None), None)
        if pick is None:
            total = {a: v for a, v in state.items() if v is not None}
            if _is_stable_assignment(graph, total):
                found.append(total)
                if limit is not None and len(found) >= limit:
                    return False
            return True
        for choice in (Label.IN, Label.OUT):
            branch = dict(state)
            branch[pick] = choice
            if not search(branch):
                return False
        return True

    search(seed)
    labelings = [Labeling(state) for state in found]
    labelings.sort(key=lambda lab: tuple(sorted(lab.in_set)))
    return labelings


@dataclass(frozen=True)
class Violation:
    """One broken legality condition, anchored to its argument."""

    argument: str
    condition: str  # "legal-in" | "legal-out" | "legal-undec"
    detail: str


@dataclass(frozen=True)
class VerificationResult:
    verdict: Verdict
    violations: tuple[Violation, ...]


def verify_labeling(graph: AttackGraph, labeling: Labeling) -> VerificationResult:
    """Check a labeling for legality against its graph.

    Raises ``ValueError`` unless the labeling covers exactly the graph's
    arguments.  ``stable`` means legal and two-valued,
    ``grounded-consistent`` means legal with undecided arguments left,
    ``illegal`` means at least one condition is violated.
    """
    have = labeling.arguments
    if have != graph.arguments:
        parts = []
        missing = sorted(graph.arguments - have)
        extra = sorted(have - graph.arguments)
        if missing:
            parts.append(f"unlabeled arguments: {', '.join(missing)}")
        if extra:
            parts.append(f"labels for unknown arguments: {', '.join(extra)}")
        raise ValueError("labeling is not total: " + "; ".join(parts))

    violations: list[Violation] = []
    for x in sorted(graph.arguments):
        lx = labeling.label(x)
        atk = graph.attackers(x)
        accepted_attackers = sorted(y for y in atk if labeling.label(y) is Label.IN)
        unrejected_attackers = sorted(y for y in atk if labeling.label(y) is not Label.OUT)
        if lx is Label.IN:
            if unrejected_attackers:
                violations.append(
                    Violation(
                        x,
                        "legal-in",
                        f"accepted although attacker(s) {', '.join(unrejected_attackers)} are not rejected",
                    )
                )
        elif lx is Label.OUT:
            if not accepted_attackers:
                violations.append(
                    Violation(x, "legal-out", "rejected although no attacker is accepted")
                )
        else:
            if accepted_attackers:
                violations.append(
                    Violation(
                        x,
                        "legal-undec",
                        f"undecided although attacker(s) {', '.join(accepted_attackers)} are accepted",
                    )
                )
            elif not unrejected_attackers:
                violations.append(
                    Violation(x, "legal-undec", "undecided although every attacker is rejected")
                )

    if violations:
        verdict = Verdict.ILLEGAL
    elif labeling.undec_set:
        verdict = Verdict.GROUNDED_CONSISTENT
    else:
        verdict = Verdict.STABLE
    return VerificationResult(verdict, tuple(violations))


def _dot_id(argument: str) -> str:
    return '"' + argument.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    graph: AttackGraph,
    labeling: Labeling | None = None,
    order_edges: Iterable[tuple[str, str]] | None = None,
    shapes: Mapping[str, str] | None = None,
) -> str:
    """Render a graph as Graphviz text.

    Attack edges are solid, execution-order edges dashed.  With a
    labeling, nodes are filled blue/orange/yellow for in/out/undec.
    Output is byte-identical for equal inputs.
    """
    fills = {Label.IN: IN_COLOR, Label.OUT: OUT_COLOR, Label.UNDEC: UNDEC_COLOR}
    lines = ["digraph {"]
    for a in sorted(graph.arguments):
        attrs = []
        if shapes and a in shapes:
            attrs.append(f"shape={shapes[a]}")
        if labeling is not None:
            attrs.append("style=filled")
            attrs.append(f'fillcolor="{fills[labeling.label(a)]}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_id(a)}{suffix};")
    for s, t in sorted(graph.attacks):
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)};")
    for s, t in sorted(set(order_edges or ())):
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def labeling_to_json_obj(labeling: Labeling) -> dict[str, str]:
    return {a: labeling.label(a).value for a in sorted(labeling.arguments)}


def labeling_to_json(labeling: Labeling) -> str:
    """Serialize as a JSON object mapping argument id to in/out/undec."""
    return json.dumps(labeling_to_json_obj(labeling))


def labeling_from_json(text: str) -> Labeling:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid labeling JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ValueError("labeling JSON must be an object")
    try:
        return Labeling(obj)
    except ValueError as exc:
        raise ValueError(f"invalid labeling JSON: {exc}") from None
