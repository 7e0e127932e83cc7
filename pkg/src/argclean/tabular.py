"""Tabular datasets and execution of cleaning recipes against them.

Cells are plain Python values: ``str``, ``int``/``float`` (produced only
by the number-conversion transform), or ``None`` for empty.  Rows carry
stable ids assigned at load time; deletions never renumber them.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .recipes import (
    SUPPORTED_TRANSFORMS,
    CellEdit,
    DelCol,
    DelRow,
    JoinCol,
    Operation,
    Rename,
    SplitCol,
    Transform,
)

Cell = "str | int | float | None"


class DatasetError(ValueError):
    """Raised for malformed tables or operations that cannot apply."""


@dataclass(frozen=True)
class DatasetRow:
    row_id: int
    values: tuple


class Dataset:
    """Immutable rectangular table with named columns and stable row ids."""

    __slots__ = ("_columns", "_rows", "_col_index", "_row_index")

    def __init__(self, columns: Iterable[str], rows: Iterable[DatasetRow] = ()):
        cols = tuple(columns)
        for c in cols:
            if not isinstance(c, str) or not c:
                raise DatasetError(f"column names must be non-empty strings, got {c!r}")
        if len(set(cols)) != len(cols):
            dup = next(c for c in cols if cols.count(c) > 1)
            raise DatasetError(f"duplicate column name {dup!r}")
        row_tuple = tuple(rows)
        seen_ids = set()
        for r in row_tuple:
            if isinstance(r.row_id, bool) or not isinstance(r.row_id, int) or r.row_id < 1:
                raise DatasetError(f"row ids must be positive integers, got {r.row_id!r}")
            if r.row_id in seen_ids:
                raise DatasetError(f"duplicate row id {r.row_id}")
            seen_ids.add(r.row_id)
            if len(r.values) != len(cols):
                raise DatasetError(
                    f"row {r.row_id}: expected {len(cols)} cells, got {len(r.values)}"
                )
        self._columns = cols
        self._rows = row_tuple
        self._col_index = {c: i for i, c in enumerate(cols)}
        self._row_index = {r.row_id: i for i, r in enumerate(row_tuple)}

    @property
    def columns(self) -> tuple[str, ...]:
        return self._columns

    @property
    def rows(self) -> tuple[DatasetRow, ...]:
        return self._rows

    @property
    def row_ids(self) -> tuple[int, ...]:
        return tuple(r.row_id for r in self._rows)

    def column_index(self, name: str) -> int:
        try:
            return self._col_index[name]
        except KeyError:
            raise DatasetError(f"no such column: {name!r}") from None

    def row(self, row_id: int) -> DatasetRow:
        try:
            return self._rows[self._row_index[row_id]]
        except KeyError:
            raise DatasetError(f"no such row id: {row_id}") from None

    def cell(self, row_id: int, column: str):
        return self.row(row_id).values[self.column_index(column)]

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return self._columns == other._columns and self._rows == other._rows

    def __hash__(self):
        return hash((self._columns, self._rows))

    def __repr__(self):
        return f"Dataset({len(self._columns)} columns, {len(self._rows)} rows)"


def render_cell(cell) -> str:
    """Canonical text of a cell: empty renders as '', numbers in plain
    decimal form."""
    if cell is None:
        return ""
    if isinstance(cell, str):
        return cell
    if isinstance(cell, bool):
        raise DatasetError(f"unsupported cell value {cell!r}")
    if isinstance(cell, int):
        return str(cell)
    if isinstance(cell, float):
        return repr(cell)
    raise DatasetError(f"unsupported cell value {cell!r}")


def load_csv(text: str) -> Dataset:
    """Read a header-first CSV into a Dataset of string cells.

    Row ids are assigned 1..n in file order.  Whitespace is preserved
    exactly; empty fields become empty cells.
    """
    records = list(csv.reader(io.StringIO(text)))
    if not records:
        raise DatasetError("missing header row")
    header = records[0]
    ncols = len(header)
    rows = []
    for lineno, record in enumerate(records[1:], start=2):
        if record == [] and ncols == 1:
            record = [""]
        if len(record) != ncols:
            raise DatasetError(f"row {lineno}: expected {ncols} fields, got {len(record)}")
        values = tuple(v if v != "" else None for v in record)
        rows.append(DatasetRow(lineno - 1, values))
    return Dataset(header, rows)


def save_csv(dataset: Dataset) -> str:
    """Write canonical CSV: minimal quoting, LF line endings, trailing
    newline.  Numeric cells render unquoted in plain decimal form."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(dataset.columns)
    for row in dataset.rows:
        writer.writerow([render_cell(v) for v in row.values])
    return out.getvalue()


_INT_RE = re.compile(r"[+-]?\d+")
_DECIMAL_RE = re.compile(r"[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?")


def _parse_number(text: str):
    if _INT_RE.fullmatch(text):
        return int(text)
    if _DECIMAL_RE.fullmatch(text):
        return float(text)
    return None


def _apply_cell_edit(ds: Dataset, op: CellEdit, warnings: list[str]) -> Dataset:
    col = ds.column_index(op.column)
    ds.row(op.row_id)  # existence check
    rows = []
    for row in ds.rows:
        if row.row_id == op.row_id:
            values = row.values[:col] + (op.new_value,) + row.values[col + 1:]
            rows.append(DatasetRow(row.row_id, values))
        else:
            rows.append(row)
    return Dataset(ds.columns, rows)


def _apply_del_row(ds: Dataset, op: DelRow, warnings: list[str]) -> Dataset:
    ds.row(op.row_id)
    return Dataset(ds.columns, (r for r in ds.rows if r.row_id != op.row_id))


def _apply_del_col(ds: Dataset, op: DelCol, warnings: list[str]) -> Dataset:
    col = ds.column_index(op.column)
    columns = ds.columns[:col] + ds.columns[col + 1:]
    rows = (DatasetRow(r.row_id, r.values[:col] + r.values[col + 1:]) for r in ds.rows)
    return Dataset(columns, rows)


def _apply_split_col(ds: Dataset, op: SplitCol, warnings: list[str]) -> Dataset:
    col = ds.column_index(op.column)
    if not op.separator:
        raise DatasetError("split separator must not be empty")
    parts_by_row = []
    for row in ds.rows:
        cell = row.values[col]
        if cell is None:
            parts_by_row.append([])
        else:
            parts_by_row.append([p.strip() for p in render_cell(cell).split(op.separator)])
    width = max((len(p) for p in parts_by_row), default=0)
    new_columns = tuple(f"{op.column} {i}" for i in range(1, width + 1))
    for c in new_columns:
        if c in ds.columns:
            raise DatasetError(f"split would overwrite existing column {c!r}")
    rows = []
    for row, parts in zip(ds.rows, parts_by_row):
        extra = tuple(parts[i] if i < len(parts) else None for i in range(width))
        rows.append(DatasetRow(row.row_id, row.values + extra))
    return Dataset(ds.columns + new_columns, rows)


def _apply_transform(ds: Dataset, op: Transform, warnings: list[str]) -> Dataset:
    col = ds.column_index(op.column)
    if op.expression not in SUPPORTED_TRANSFORMS:
        supported = ", ".join(SUPPORTED_TRANSFORMS)
        raise DatasetError(
            f"unsupported transform expression {op.expression!r} (supported: {supported})"
        )
    rows = []
    for row in ds.rows:
        cell = row.values[col]
        new = cell
        if op.expression == "value.trim()":
            if isinstance(cell, str):
                new = cell.strip()
        else:  # value.toNumber()
            if isinstance(cell, str):
                parsed = _parse_number(cell.strip())
                if parsed is None:
                    warnings.append(
                        f"column {op.column!r} row {row.row_id}: "
                        f"value {cell!r} is not numeric; left unchanged"
                    )
                else:
                    new = parsed
        if new is cell:
            rows.append(row)
        else:
            rows.append(DatasetRow(row.row_id, row.values[:col] + (new,) + row.values[col + 1:]))
    return Dataset(ds.columns, rows)


def _apply_join_col(ds: Dataset, op: JoinCol, warnings: list[str]) -> Dataset:
    indices = [ds.column_index(c) for c in op.columns]
    if op.new_column in ds.columns:
        raise DatasetError(f"join would overwrite existing column {op.new_column!r}")
    rows = []
    for row in ds.rows:
        joined = op.separator.join(render_cell(row.values[i]) for i in indices)
        rows.append(DatasetRow(row.row_id, row.values + (joined,)))
    return Dataset(ds.columns + (op.new_column,), rows)


def _apply_rename(ds: Dataset, op: Rename, warnings: list[str]) -> Dataset:
    col = ds.column_index(op.column)
    if op.new_column in ds.columns:
        raise DatasetError(f"rename would overwrite existing column {op.new_column!r}")
    columns = ds.columns[:col] + (op.new_column,) + ds.columns[col + 1:]
    return Dataset(columns, ds.rows)


_HANDLERS = {
    CellEdit: _apply_cell_edit,
    DelRow: _apply_del_row,
    DelCol: _apply_del_col,
    SplitCol: _apply_split_col,
    Transform: _apply_transform,
    JoinCol: _apply_join_col,
    Rename: _apply_rename,
}


def _apply(ds: Dataset, op: Operation, warnings: list[str]) -> Dataset:
    try:
        handler = _HANDLERS[type(op)]
    except KeyError:
        raise DatasetError(f"not an operation: {op!r}") from None
    return handler(ds, op, warnings)


def apply_op(dataset: Dataset, op: Operation) -> Dataset:
    """Apply a single operation, returning a new Dataset.

    cell_edit replaces one cell; del_row removes a row by stable id;
    del_col drops a column; split_col appends trimmed part columns
    named "<col> 1".."<col> k" (source kept); transform runs one of the
    supported GREL expressions; join_col appends the concatenation of
    its sources; rename changes a column name in place.
    """
    return _apply(dataset, op, [])


@dataclass(frozen=True)
class StepOutcome:
    label: str
    status: str  # "ok" | "error"
    warnings: tuple[str, ...] = ()
    message: str = ""


class RecipeApplicationError(Exception):
    """A step failed; carries the dataset state before that step."""

    def __init__(self, step_label: str, step_index: int, dataset: Dataset,
                 log: tuple[StepOutcome, ...], message: str):
        self.step_label = step_label
        self.step_index = step_index
        self.dataset = dataset
        self.log = log
        super().__init__(f"step {step_label} (#{step_index + 1}) failed: {message}")


def apply_recipe(dataset: Dataset, recipe) -> tuple[Dataset, tuple[StepOutcome, ...]]:
    """Fold a recipe (or merged recipe) over the dataset left to right.

    Returns the final dataset and a per-step log with any conversion
    warnings.  A failing step raises :class:`RecipeApplicationError`
    carrying the dataset as of just before that step.
    """
    log: list[StepOutcome] = []
    current = dataset
    for i, step in enumerate(recipe.steps):
        warnings: list[str] = []
        try:
            updated = _apply(current, step.operation, warnings)
        except DatasetError as exc:
            log.append(StepOutcome(step.label, "error", tuple(warnings), str(exc)))
            raise RecipeApplicationError(step.label, i, current, tuple(log), str(exc)) from exc
        log.append(StepOutcome(step.label, "ok", tuple(warnings)))
        current = updated
    return current, tuple(log)


def dataset_to_json_obj(dataset: Dataset) -> dict:
    """JSON table form used by the service: columns plus row objects."""
    return {
        "columns": list(dataset.columns),
        "rows": [{"row_id": r.row_id, "values": list(r.values)} for r in dataset.rows],
    }
