"""In-memory reconciliation sessions shared by the HTTP service.

Sessions are desk-scale: recipes plus an optional dataset, with the
attack graph, grounded labeling, and stable labelings derived eagerly
(up to a cap) at creation.  Optionally each session is snapshotted to a
single JSON file so a restarted service can pick it up again.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .afgraph import grounded_labeling, stable_labelings
from .conflicts import DEFAULT_CONFLICT_RULES, ConflictRule, detect_conflicts
from .merging import DEFAULT_DEPENDENCY_RULES, MergedRecipe, UnresolvedConflictError, merge
from .recipes import Recipe, recipe_from_json_obj, recipe_to_json_obj
from .tabular import Dataset, load_csv, save_csv
from .validation import check_recipes


class NoStableSelectionError(RuntimeError):
    """Selection was attempted although no stable labeling exists."""


@dataclass
class SessionConfig:
    stable_cap: int = 10_000
    dependency_rules: tuple[str, ...] = DEFAULT_DEPENDENCY_RULES
    conflict_rules: tuple[ConflictRule, ...] = DEFAULT_CONFLICT_RULES
    snapshot_dir: str | None = None


class Session:
    """Recipes plus derived conflict state for one reconciliation."""

    def __init__(self, session_id: str, recipes: tuple[Recipe, ...],
                 dataset: Dataset | None, config: SessionConfig):
        self.id = session_id
        self.config = config
        self.recipes = recipes
        self.dataset = dataset
        self.selected_index: int | None = None
        self.lock = threading.Lock()
        self._recompute()

    def _recompute(self):
        self.graph, self.order_edges = detect_conflicts(self.recipes, self.config.conflict_rules)
        self.grounded = grounded_labeling(self.graph)
        cap = self.config.stable_cap
        self.stable = stable_labelings(self.graph, limit=cap)
        self.stable_count_exact = cap is None or len(self.stable) < cap

    def resolved_labeling(self):
        """The labeling a merge would use right now, or None."""
        if self.selected_index is not None:
            return self.stable[self.selected_index]
        if not self.grounded.undec_set:
            return self.grounded
        return None

    def merged(self) -> MergedRecipe:
        labeling = self.resolved_labeling()
        if labeling is None:
            raise UnresolvedConflictError(self.grounded.undec_set)
        return merge(self.recipes, labeling, self.config.dependency_rules)

    def curators(self) -> tuple[str, ...]:
        return tuple(r.curator for r in self.recipes)

    def snapshot_obj(self) -> dict:
        return {
            "id": self.id,
            "recipes": [recipe_to_json_obj(r) for r in self.recipes],
            "csv": save_csv(self.dataset) if self.dataset is not None else None,
            "selected_index": self.selected_index,
        }


class SessionStore:
    """Thread-safe map of sessions with optional disk snapshots."""

    def __init__(self, config: SessionConfig | None = None):
        self.config = config or SessionConfig()
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, recipes_raw, csv_text: str | None = None) -> Session:
        recipes = check_recipes(recipes_raw)
        dataset = load_csv(csv_text) if csv_text is not None else None
        session_id = secrets.token_hex(8)
        session = Session(session_id, recipes, dataset, self.config)
        with self._lock:
            self._sessions[session_id] = session
        self._snapshot(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            if session_id in self._sessions:
                return self._sessions[session_id]
        session = self._load_snapshot(session_id)
        if session is None:
            raise KeyError(session_id)
        with self._lock:
            return self._sessions.setdefault(session_id, session)

    def select(self, session_id: str, index: int) -> MergedRecipe:
        session = self.get(session_id)
        with session.lock:
            if not session.stable:
                raise NoStableSelectionError(
                    "no stable labeling exists for this session's conflicts"
                )
            if not 0 <= index < len(session.stable):
                raise IndexError(
                    f"stable index {index} out of range; "
                    f"{len(session.stable)} stable labeling(s) exist"
                )
            session.selected_index = index
            merged = session.merged()
        self._snapshot(session)
        return merged

    def _snapshot_path(self, session_id: str) -> Path | None:
        if not self.config.snapshot_dir:
            return None
        return Path(self.config.snapshot_dir) / f"{session_id}.json"

    def _snapshot(self, session: Session):
        path = self._snapshot_path(session.id)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(session.snapshot_obj(), indent=2), encoding="utf-8")

    def _load_snapshot(self, session_id: str) -> Session | None:
        path = self._snapshot_path(session_id)
        if path is None or not path.is_file():
            return None
        obj = json.loads(path.read_text(encoding="utf-8"))
        recipes = tuple(recipe_from_json_obj(r) for r in obj["recipes"])
        dataset = load_csv(obj["csv"]) if obj.get("csv") is not None else None
        session = Session(session_id, recipes, dataset, self.config)
        selected = obj.get("selected_index")
        if selected is not None and 0 <= selected < len(session.stable):
            session.selected_index = selected
        return session
