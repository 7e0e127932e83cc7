"""Cleaning operations, recipes, and per-operation read/write footprints."""

from __future__ import annotations

import itertools
import json
import re
import string
from dataclasses import dataclass
from typing import ClassVar, Iterable, Union

#: GREL expressions the execution engine understands.
SUPPORTED_TRANSFORMS = ("value.trim()", "value.toNumber()")

_LABEL_RE = re.compile(r"\w+", re.ASCII)


class RecipeFormatError(ValueError):
    """Raised when recipe JSON cannot be turned into a Recipe."""


def _check_name(value, what: str) -> str:
    if not isinstance(value, str) or not value:
        raise ValueError(f"{what} must be a non-empty string, got {value!r}")
    return value


def _check_row_id(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"row_id must be a positive integer, got {value!r}")
    return value


@dataclass(frozen=True)
class CellEdit:
    """Replace the value of one cell, addressed by stable row id."""

    row_id: int
    column: str
    new_value: str
    kind: ClassVar[str] = "cell_edit"

    def __post_init__(self):
        _check_row_id(self.row_id)
        _check_name(self.column, "column_name")
        if not isinstance(self.new_value, str):
            raise ValueError(f"new_value must be a string, got {self.new_value!r}")


@dataclass(frozen=True)
class DelRow:
    row_id: int
    kind: ClassVar[str] = "del_row"

    def __post_init__(self):
        _check_row_id(self.row_id)


@dataclass(frozen=True)
class DelCol:
    column: str
    kind: ClassVar[str] = "del_col"

    def __post_init__(self):
        _check_name(self.column, "column_name")


@dataclass(frozen=True)
class SplitCol:
    """Split a column on a separator into new part columns; the source stays."""

    column: str
    separator: str
    kind: ClassVar[str] = "split_col"

    def __post_init__(self):
        _check_name(self.column, "column_name")
        if not isinstance(self.separator, str) or not self.separator:
            raise ValueError("separator must be a non-empty string")


@dataclass(frozen=True)
class Transform:
    """Apply a GREL expression to every cell of a column."""

    column: str
    expression: str
    kind: ClassVar[str] = "transform"

    def __post_init__(self):
        _check_name(self.column, "column_name")
        _check_name(self.expression, "function")


@dataclass(frozen=True)
class JoinCol:
    """Concatenate several columns into a new one; sources stay."""

    columns: tuple[str, ...]
    separator: str
    new_column: str
    kind: ClassVar[str] = "join_col"

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        if len(self.columns) < 2:
            raise ValueError("join_col needs at least two source columns")
        for c in self.columns:
            _check_name(c, "source column")
        if not isinstance(self.separator, str):
            raise ValueError("separator must be a string")
        _check_name(self.new_column, "new_column_name")
        if self.new_column in self.columns:
            raise ValueError(f"new column {self.new_column!r} is among the source columns")


@dataclass(frozen=True)
class Rename:
    column: str
    new_column: str
    kind: ClassVar[str] = "rename"

    def __post_init__(self):
        _check_name(self.column, "column_name")
        _check_name(self.new_column, "new_column_name")
        if self.column == self.new_column:
            raise ValueError("rename must change the column name")


Operation = Union[CellEdit, DelRow, DelCol, SplitCol, Transform, JoinCol, Rename]

_OP_TYPES = {
    cls.kind: cls for cls in (CellEdit, DelRow, DelCol, SplitCol, Transform, JoinCol, Rename)
}
OP_KINDS = tuple(_OP_TYPES)


def operation_from_wire(kind, args) -> Operation:
    """Build an operation from its wire form: kind plus positional args."""
    if not isinstance(kind, str) or kind not in _OP_TYPES:
        raise RecipeFormatError(f"unknown operation kind: {kind!r}")
    if not isinstance(args, (list, tuple)):
        raise RecipeFormatError(f"{kind}: args must be an array, got {args!r}")
    arity = {"cell_edit": 3, "del_row": 1, "del_col": 1, "split_col": 2,
             "transform": 2, "join_col": 3, "rename": 2}[kind]
    if len(args) != arity:
        raise RecipeFormatError(f"{kind}: expected {arity} argument(s), got {len(args)}")
    try:
        if kind == "join_col":
            sources = args[0]
            if not isinstance(sources, (list, tuple)):
                raise ValueError("source columns must be an array of strings")
            return JoinCol(tuple(sources), args[1], args[2])
        if kind == "cell_edit":
            return CellEdit(args[0], args[1], args[2])
        return _OP_TYPES[kind](*args)
    except ValueError as exc:
        raise RecipeFormatError(f"{kind}: {exc}") from None


def operation_to_wire(op: Operation) -> tuple[str, list]:
    if isinstance(op, CellEdit):
        return op.kind, [op.row_id, op.column, op.new_value]
    if isinstance(op, DelRow):
        return op.kind, [op.row_id]
    if isinstance(op, DelCol):
        return op.kind, [op.column]
    if isinstance(op, SplitCol):
        return op.kind, [op.column, op.separator]
    if isinstance(op, Transform):
        return op.kind, [op.column, op.expression]
    if isinstance(op, JoinCol):
        return op.kind, [list(op.columns), op.separator, op.new_column]
    if isinstance(op, Rename):
        return op.kind, [op.column, op.new_column]
    raise TypeError(f"not an operation: {op!r}")


def describe_operation(op: Operation) -> str:
    """One-line rendering, e.g. ``rename("Book Title", "Book-Title")``."""
    kind, args = operation_to_wire(op)
    flat: list = []
    for a in args:
        if isinstance(a, list):
            flat.extend(a)
        else:
            flat.append(a)
    rendered = ", ".join(json.dumps(a) if isinstance(a, str) else str(a) for a in flat)
    return f"{kind}({rendered})"


@dataclass(frozen=True)
class RecipeStep:
    """A labeled operation at a 1-based position within a recipe."""

    label: str
    operation: Operation
    position: int

    def __post_init__(self):
        if not isinstance(self.label, str) or not _LABEL_RE.fullmatch(self.label):
            raise ValueError(f"step label must be an identifier-like token, got {self.label!r}")
        if isinstance(self.position, bool) or not isinstance(self.position, int) or self.position < 1:
            raise ValueError(f"position must be a positive integer, got {self.position!r}")


@dataclass(frozen=True)
class Recipe:
    """One curator's ordered sequence of cleaning steps."""

    curator: str
    steps: tuple[RecipeStep, ...]

    def __post_init__(self):
        if not isinstance(self.curator, str) or not self.curator:
            raise ValueError("curator must be a non-empty string")
        object.__setattr__(self, "steps", tuple(self.steps))
        labels = [s.label for s in self.steps]
        if len(set(labels)) != len(labels):
            dup = next(l for l in labels if labels.count(l) > 1)
            raise ValueError(f"duplicate step label {dup!r}")
        if [s.position for s in self.steps] != list(range(1, len(self.steps) + 1)):
            raise ValueError("step positions must be 1..n in order")


def _auto_labels(used: set[str]):
    for size in itertools.count(1):
        for combo in itertools.product(string.ascii_uppercase, repeat=size):
            candidate = "".join(combo)
            if candidate not in used:
                yield candidate


def recipe_from_json_obj(obj) -> Recipe:
    """Build a Recipe from a decoded JSON object (see :func:`parse_recipe`)."""
    if not isinstance(obj, dict):
        raise RecipeFormatError("recipe must be a JSON object")
    curator = obj.get("curator")
    if not isinstance(curator, str) or not curator:
        raise RecipeFormatError('"curator" must be a non-empty string')
    raw_steps = obj.get("steps")
    if not isinstance(raw_steps, list):
        raise RecipeFormatError('"steps" must be an array')

    explicit: list[str] = []
    for i, raw in enumerate(raw_steps, start=1):
        if not isinstance(raw, dict):
            raise RecipeFormatError(f"step {i}: must be an object")
        label = raw.get("label")
        if label is not None:
            if not isinstance(label, str) or not _LABEL_RE.fullmatch(label):
                raise RecipeFormatError(f"step {i}: bad label {label!r}")
            explicit.append(label)
    if len(set(explicit)) != len(explicit):
        dup = next(l for l in explicit if explicit.count(l) > 1)
        raise RecipeFormatError(f"duplicate step label {dup!r}")

    auto = _auto_labels(set(explicit))
    steps: list[RecipeStep] = []
    for i, raw in enumerate(raw_steps, start=1):
        try:
            op = operation_from_wire(raw.get("op"), raw.get("args", []))
        except RecipeFormatError as exc:
            raise RecipeFormatError(f"step {i}: {exc}") from None
        if isinstance(op, Transform) and op.expression not in SUPPORTED_TRANSFORMS:
            supported = ", ".join(SUPPORTED_TRANSFORMS)
            raise RecipeFormatError(
                f"step {i}: unsupported transform expression {op.expression!r} "
                f"(supported: {supported})"
            )
        label = raw.get("label") or next(auto)
        steps.append(RecipeStep(label, op, i))
    return Recipe(curator, tuple(steps))


def parse_recipe(text: str) -> Recipe:
    """Parse the recipe JSON wire format.

    ``{"curator": ..., "steps": [{"label": ..., "op": ..., "args": [...]}]}``
    with positional args per operation signature.  Missing labels are
    filled with unused letters (A, B, ... then AA, AB, ...).  Unknown
    keys are ignored, so merged-recipe files parse too.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecipeFormatError(f"invalid JSON: {exc}") from None
    return recipe_from_json_obj(obj)


def recipe_to_json_obj(recipe: Recipe) -> dict:
    steps = []
    for s in recipe.steps:
        kind, args = operation_to_wire(s.operation)
        steps.append({"label": s.label, "op": kind, "args": args})
    return {"curator": recipe.curator, "steps": steps}


def serialize_recipe(recipe: Recipe) -> str:
    return json.dumps(recipe_to_json_obj(recipe), indent=2) + "\n"


@dataclass(frozen=True)
class Footprint:
    """What an operation reads, writes, deletes, keyed by plain names."""

    columns_read: frozenset[str] = frozenset()
    columns_written: frozenset[str] = frozenset()
    columns_deleted: frozenset[str] = frozenset()
    rows_deleted: frozenset[int] = frozenset()
    cells_edited: frozenset[tuple[int, str]] = frozenset()


def footprint(op: Operation) -> Footprint:
    """Static read/write/delete sets used for conflict scoping and
    cross-recipe ordering.

    split_col is approximated by its first two part columns; the
    execution engine may create more on wider data.
    """
    if isinstance(op, CellEdit):
        return Footprint(
            columns_written=frozenset([op.column]),
            cells_edited=frozenset([(op.row_id, op.column)]),
        )
    if isinstance(op, DelRow):
        return Footprint(rows_deleted=frozenset([op.row_id]))
    if isinstance(op, DelCol):
        return Footprint(columns_read=frozenset([op.column]), columns_deleted=frozenset([op.column]))
    if isinstance(op, SplitCol):
        return Footprint(
            columns_read=frozenset([op.column]),
            columns_written=frozenset([f"{op.column} 1", f"{op.column} 2"]),
        )
    if isinstance(op, Transform):
        return Footprint(columns_read=frozenset([op.column]), columns_written=frozenset([op.column]))
    if isinstance(op, JoinCol):
        return Footprint(columns_read=frozenset(op.columns), columns_written=frozenset([op.new_column]))
    if isinstance(op, Rename):
        return Footprint(
            columns_read=frozenset([op.column]),
            columns_written=frozenset([op.new_column]),
            columns_deleted=frozenset([op.column]),
        )
    raise TypeError(f"not an operation: {op!r}")
