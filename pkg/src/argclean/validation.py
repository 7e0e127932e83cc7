"""Input coercion and validation helpers for the estimator and service."""

from __future__ import annotations

from typing import Iterable

import pandas as pd

from .recipes import Recipe, RecipeFormatError, parse_recipe, recipe_from_json_obj
from .tabular import Dataset, DatasetError, DatasetRow, load_csv


def coerce_recipe(value) -> Recipe:
    """Accept a Recipe, a decoded JSON object, or recipe JSON text."""
    if isinstance(value, Recipe):
        return value
    if isinstance(value, dict):
        return recipe_from_json_obj(value)
    if isinstance(value, str):
        return parse_recipe(value)
    raise RecipeFormatError(f"cannot interpret {type(value).__name__} as a recipe")


def check_recipes(recipes: Iterable) -> tuple[Recipe, ...]:
    """Coerce and validate a collection of at least two recipes."""
    coerced = tuple(coerce_recipe(r) for r in recipes)
    if len(coerced) < 2:
        raise ValueError(f"need at least two recipes to reconcile, got {len(coerced)}")
    return coerced


def dataset_from_dataframe(frame: pd.DataFrame) -> Dataset:
    """Convert a DataFrame to a Dataset of string cells.

    Row ids are positional (1..n); NaN and None become empty cells,
    non-string values are rendered with ``str``.
    """
    columns = [str(c) for c in frame.columns]
    rows = []
    for i, (_, record) in enumerate(frame.iterrows(), start=1):
        values = []
        for v in record:
            if v is None or (isinstance(v, float) and pd.isna(v)) or v is pd.NA:
                values.append(None)
            elif isinstance(v, str):
                values.append(v if v != "" else None)
            else:
                values.append(str(v))
        rows.append(DatasetRow(i, tuple(values)))
    return Dataset(columns, rows)


def dataset_to_dataframe(dataset: Dataset) -> pd.DataFrame:
    """Convert a Dataset to an object-dtype DataFrame indexed by row id."""
    data = [list(r.values) for r in dataset.rows]
    frame = pd.DataFrame(data, columns=list(dataset.columns), dtype=object)
    frame.index = pd.Index([r.row_id for r in dataset.rows], name="row_id")
    return frame


def as_dataset(X) -> Dataset:
    """Accept a Dataset, a pandas DataFrame, or CSV text."""
    if isinstance(X, Dataset):
        return X
    if isinstance(X, pd.DataFrame):
        return dataset_from_dataframe(X)
    if isinstance(X, str):
        return load_csv(X)
    raise DatasetError(f"cannot interpret {type(X).__name__} as a dataset")
