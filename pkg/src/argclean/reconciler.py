"""Estimator-style facade over the full reconciliation pipeline.

``fit`` detects conflicts among the configured recipes and solves the
resulting attack graph; ``transform`` applies the merged recipe to a
table.  The class follows scikit-learn conventions (``get_params``,
fitted attributes with trailing underscores, ``clone`` compatibility),
so it slots into existing tooling that expects transformers.
"""

from __future__ import annotations

import pandas as pd
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .afgraph import grounded_labeling, stable_labelings
from .conflicts import DEFAULT_CONFLICT_RULES, detect_conflicts
from .merging import DEFAULT_DEPENDENCY_RULES, UnresolvedConflictError, merge
from .tabular import apply_recipe
from .validation import as_dataset, check_recipes, dataset_to_dataframe


class RecipeReconciler(BaseEstimator, TransformerMixin):
    """Reconcile several cleaning recipes and apply the merged result.

    Parameters
    ----------
    recipes : sequence of recipes (Recipe objects, decoded JSON objects,
        or recipe JSON strings), at least two.
    stable_index : which stable labeling resolves the leftover undecided
        arguments, by canonical 0-based index.  Leave ``None`` when the
        grounded labeling is already two-valued.
    dependency_rules : which ordering rules to apply when merging.
    conflict_rules : pairwise conflict policy; ``None`` uses the default
        table.

    Attributes (after ``fit``)
    --------------------------
    attack_graph_, order_edges_ : the detected conflict structure.
    grounded_labeling_ : unique three-valued solution.
    stable_labelings_ : all two-valued solutions, canonically ordered.
    selected_labeling_ : the labeling used for merging, or ``None``.
    merged_recipe_ : the merged recipe, or ``None`` while unresolved.
    """

    def __init__(self, recipes=(), stable_index=None,
                 dependency_rules=DEFAULT_DEPENDENCY_RULES, conflict_rules=None):
        self.recipes = recipes
        self.stable_index = stable_index
        self.dependency_rules = dependency_rules
        self.conflict_rules = conflict_rules

    def fit(self, X=None, y=None):
        """Detect conflicts and solve them.  ``X`` is unused; the inputs
        of interest are the recipes passed at construction."""
        recipes = check_recipes(self.recipes)
        conflict_rules = self.conflict_rules if self.conflict_rules is not None else DEFAULT_CONFLICT_RULES
        self.recipes_ = recipes
        self.attack_graph_, self.order_edges_ = detect_conflicts(recipes, conflict_rules)
        self.grounded_labeling_ = grounded_labeling(self.attack_graph_)
        self.stable_labelings_ = stable_labelings(self.attack_graph_)

        if self.stable_index is not None:
            n = len(self.stable_labelings_)
            if not 0 <= self.stable_index < n:
                raise ValueError(
                    f"stable_index {self.stable_index} out of range; "
                    f"{n} stable labeling(s) exist"
                )
            self.selected_labeling_ = self.stable_labelings_[self.stable_index]
        elif not self.grounded_labeling_.undec_set:
            self.selected_labeling_ = self.grounded_labeling_
        else:
            self.selected_labeling_ = None

        if self.selected_labeling_ is not None:
            self.merged_recipe_ = merge(recipes, self.selected_labeling_, self.dependency_rules)
        else:
            self.merged_recipe_ = None
        return self

    def transform(self, X):
        """Apply the merged recipe to ``X`` (Dataset, DataFrame, or CSV
        text).  DataFrames come back as DataFrames, everything else as a
        Dataset."""
        check_is_fitted(self, "attack_graph_")
        if self.merged_recipe_ is None:
            raise UnresolvedConflictError(self.grounded_labeling_.undec_set)
        result, _ = apply_recipe(as_dataset(X), self.merged_recipe_)
        if isinstance(X, pd.DataFrame):
            return dataset_to_dataframe(result)
        return result
