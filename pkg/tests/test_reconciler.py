import pandas as pd
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from argclean import (
    Dataset,
    RecipeReconciler,
    UnresolvedConflictError,
    dataset_from_dataframe,
    dataset_to_dataframe,
    save_csv,
)
from conftest import DEMO_MERGE_ORDER, DEMO_SELECTED_IN, fixture_text


def _demo_index(est):
    return next(i for i, l in enumerate(est.stable_labelings_) if l.in_set == DEMO_SELECTED_IN)


@pytest.fixture()
def fitted(demo_recipe_objs):
    return RecipeReconciler(recipes=list(demo_recipe_objs)).fit()


def test_fit_exposes_solution(fitted):
    assert len(fitted.attack_graph_.attacks) == 15
    assert fitted.grounded_labeling_.in_set == {"H", "Q"}
    assert len(fitted.stable_labelings_) == 16
    assert fitted.merged_recipe_ is None  # undecided arguments remain


def test_transform_requires_fit(demo_recipe_objs):
    est = RecipeReconciler(recipes=list(demo_recipe_objs))
    with pytest.raises(NotFittedError):
        est.transform(fixture_text("books.csv"))


def test_transform_unresolved_raises(fitted):
    with pytest.raises(UnresolvedConflictError):
        fitted.transform(fixture_text("books.csv"))


def test_stable_index_resolves_and_transforms(demo_recipe_objs, fitted):
    est = RecipeReconciler(recipes=list(demo_recipe_objs), stable_index=_demo_index(fitted)).fit()
    assert [s.label for s in est.merged_recipe_.steps] == DEMO_MERGE_ORDER
    out = est.transform(fixture_text("books.csv"))
    assert isinstance(out, Dataset)
    assert save_csv(out) == fixture_text("merged_result.csv")


def test_dataframe_in_dataframe_out(demo_recipe_objs, fitted):
    est = RecipeReconciler(recipes=list(demo_recipe_objs), stable_index=_demo_index(fitted)).fit()
    frame = dataset_to_dataframe(dataset_from_dataframe(_books_frame()))
    out = est.fit_transform(_books_frame())
    assert isinstance(out, pd.DataFrame)
    assert list(out.columns) == ["Book-Title", "Author", "Date", "Last Name", "Citation"]
    assert out.loc[3, "Author"] == "Stanford, P.K."
    assert list(out.index) == [1, 2, 3]
    assert frame is not None


def test_stable_index_out_of_range(demo_recipe_objs):
    with pytest.raises(ValueError, match="out of range"):
        RecipeReconciler(recipes=list(demo_recipe_objs), stable_index=99).fit()


def test_requires_two_recipes(demo_recipe_objs):
    with pytest.raises(ValueError, match="at least two"):
        RecipeReconciler(recipes=[demo_recipe_objs[0]]).fit()


def test_grounded_suffices_without_conflicts():
    r1 = {"curator": "X", "steps": [{"label": "A", "op": "del_row", "args": [1]}]}
    r2 = {"curator": "Y", "steps": [{"label": "B", "op": "del_col", "args": ["Junk"]}]}
    est = RecipeReconciler(recipes=[r1, r2]).fit()
    assert est.selected_labeling_ is est.grounded_labeling_
    out = est.transform("Keep,Junk\na,b\nc,d\n")
    assert out.columns == ("Keep",)
    assert out.row_ids == (2,)


def test_get_params_and_clone(demo_recipe_objs):
    est = RecipeReconciler(recipes=list(demo_recipe_objs), stable_index=3)
    params = est.get_params()
    assert params["stable_index"] == 3
    cloned = clone(est)
    assert cloned.get_params()["stable_index"] == 3
    cloned.set_params(stable_index=None)
    assert cloned.stable_index is None


def _books_frame():
    import io

    return pd.read_csv(io.StringIO(fixture_text("books.csv")), dtype=str, skipinitialspace=False)
