"""Reconcile conflicting data-cleaning recipes through argumentation.

Independently authored cleaning recipes are compared step by step with
a configurable conflict policy, the conflicts become an attack graph,
and its grounded and stable labelings decide which steps survive.  The
accepted steps are merged into a single ordered recipe and executed
against tabular data.
"""

from .afgraph import (
    ApxSyntaxError,
    AttackGraph,
    Label,
    Labeling,
    VerificationResult,
    Verdict,
    Violation,
    grounded_labeling,
    labeling_from_json,
    labeling_to_json,
    labeling_to_json_obj,
    parse_apx,
    stable_labelings,
    to_apx,
    to_dot,
    verify_labeling,
)
from .conflicts import (
    DEFAULT_CONFLICT_RULES,
    ConflictKind,
    ConflictRule,
    detect_conflicts,
    load_conflict_rules,
    pairwise_conflict,
)
from .merging import (
    DEFAULT_DEPENDENCY_RULES,
    DependencyCycleError,
    DependencyEdge,
    MergedRecipe,
    MergedStep,
    OrderCheck,
    UnresolvedConflictError,
    dependency_edges,
    merge,
    merged_to_json_obj,
    reorder,
    serialize_merged,
    validate_order,
)
from .recipes import (
    CellEdit,
    DelCol,
    DelRow,
    Footprint,
    JoinCol,
    Operation,
    Recipe,
    RecipeFormatError,
    RecipeStep,
    Rename,
    SplitCol,
    Transform,
    describe_operation,
    footprint,
    parse_recipe,
    recipe_from_json_obj,
    recipe_to_json_obj,
    serialize_recipe,
)
from .reconciler import RecipeReconciler
from .tabular import (
    Dataset,
    DatasetError,
    DatasetRow,
    RecipeApplicationError,
    StepOutcome,
    apply_op,
    apply_recipe,
    dataset_to_json_obj,
    load_csv,
    render_cell,
    save_csv,
)
from .validation import (
    as_dataset,
    check_recipes,
    coerce_recipe,
    dataset_from_dataframe,
    dataset_to_dataframe,
)

__version__ = "0.1.0"

__all__ = [
    "ApxSyntaxError",
    "AttackGraph",
    "CellEdit",
    "ConflictKind",
    "ConflictRule",
    "DEFAULT_CONFLICT_RULES",
    "DEFAULT_DEPENDENCY_RULES",
    "Dataset",
    "DatasetError",
    "DatasetRow",
    "DelCol",
    "DelRow",
    "DependencyCycleError",
    "DependencyEdge",
    "Footprint",
    "JoinCol",
    "Label",
    "Labeling",
    "MergedRecipe",
    "MergedStep",
    "Operation",
    "OrderCheck",
    "Recipe",
    "RecipeApplicationError",
    "RecipeFormatError",
    "RecipeReconciler",
    "RecipeStep",
    "Rename",
    "SplitCol",
    "StepOutcome",
    "Transform",
    "UnresolvedConflictError",
    "VerificationResult",
    "Verdict",
    "Violation",
    "apply_op",
    "apply_recipe",
    "as_dataset",
    "check_recipes",
    "coerce_recipe",
    "dataset_from_dataframe",
    "dataset_to_dataframe",
    "dataset_to_json_obj",
    "dependency_edges",
    "describe_operation",
    "detect_conflicts",
    "footprint",
    "grounded_labeling",
    "labeling_from_json",
    "labeling_to_json",
    "labeling_to_json_obj",
    "load_conflict_rules",
    "load_csv",
    "merge",
    "merged_to_json_obj",
    "pairwise_conflict",
    "parse_apx",
    "parse_recipe",
    "recipe_from_json_obj",
    "recipe_to_json_obj",
    "render_cell",
    "reorder",
    "save_csv",
    "serialize_merged",
    "serialize_recipe",
    "stable_labelings",
    "to_apx",
    "to_dot",
    "validate_order",
    "verify_labeling",
]
