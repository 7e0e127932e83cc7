"""HTTP front-end: sessions, solving, selection, merged results.

All solving and merging happens in the core modules; endpoints only
translate between HTTP and those functions, so the CLI and the service
produce identical artifacts for identical inputs.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .afgraph import labeling_to_json_obj, to_dot
from .merging import DependencyCycleError, UnresolvedConflictError, merged_to_json_obj
from .recipes import RecipeFormatError, describe_operation, operation_to_wire
from .session import NoStableSelectionError, Session, SessionConfig, SessionStore
from .tabular import DatasetError, RecipeApplicationError, apply_recipe, dataset_to_json_obj, save_csv

#: node shapes assigned to curators in upload order, wrapping around
CURATOR_SHAPES = ("oval", "box", "hexagon", "diamond")


class SessionCreate(BaseModel):
    recipes: list[Any]
    csv: str | None = None


class Selection(BaseModel):
    index: int


def _graph_payload(session: Session) -> dict:
    steps = []
    shapes = {c: CURATOR_SHAPES[i % len(CURATOR_SHAPES)] for i, c in enumerate(session.curators())}
    for recipe in session.recipes:
        for step in recipe.steps:
            kind, args = operation_to_wire(step.operation)
            steps.append(
                {
                    "label": step.label,
                    "curator": recipe.curator,
                    "position": step.position,
                    "op": kind,
                    "args": args,
                    "text": describe_operation(step.operation),
                    "shape": shapes[recipe.curator],
                }
            )
    return {
        "arguments": sorted(session.graph.arguments),
        "attacks": sorted([s, t] for s, t in session.graph.attacks),
        "order_edges": sorted([s, t] for s, t in session.order_edges),
        "grounded": labeling_to_json_obj(session.grounded),
        "steps": steps,
        "curators": list(session.curators()),
        "stable_count": len(session.stable),
        "stable_count_exact": session.stable_count_exact,
        "has_dataset": session.dataset is not None,
        "selected_index": session.selected_index,
    }


def _result_payload(session: Session) -> dict:
    if session.dataset is None:
        raise HTTPException(409, "session has no dataset")
    try:
        with session.lock:
            merged = session.merged()
    except UnresolvedConflictError as exc:
        raise HTTPException(409, str(exc))
    except DependencyCycleError as exc:
        raise HTTPException(409, str(exc))
    try:
        result, log = apply_recipe(session.dataset, merged)
    except RecipeApplicationError as exc:
        raise HTTPException(409, str(exc))
    payload = dataset_to_json_obj(result)
    payload["csv"] = save_csv(result)
    payload["log"] = [
        {"label": entry.label, "status": entry.status, "warnings": list(entry.warnings)}
        for entry in log
    ]
    return payload


def create_app(config: SessionConfig | None = None, static_dir: str | None = None) -> FastAPI:
    store = SessionStore(config)
    app = FastAPI(title="argclean service")
    app.state.store = store
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def _session(session_id: str) -> Session:
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(404, f"unknown session {session_id!r}")

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionCreate):
        try:
            session = store.create(body.recipes, body.csv)
        except (RecipeFormatError, DatasetError, ValueError) as exc:
            raise HTTPException(422, str(exc))
        return {
            "id": session.id,
            "arguments": sorted(session.graph.arguments),
            "stable_count": len(session.stable),
            "stable_count_exact": session.stable_count_exact,
        }

    @app.get("/sessions/{session_id}/graph")
    def graph(session_id: str):
        return _graph_payload(_session(session_id))

    @app.get("/sessions/{session_id}/stable")
    def stable(
        session_id: str,
        page: int = Query(0, ge=0),
        page_size: int = Query(20, ge=1, le=500),
    ):
        session = _session(session_id)
        start = page * page_size
        items = [
            {
                "index": start + offset,
                "labeling": labeling_to_json_obj(labeling),
                "accepted": sorted(labeling.in_set),
            }
            for offset, labeling in enumerate(session.stable[start:start + page_size])
        ]
        return {
            "total": len(session.stable),
            "exact": session.stable_count_exact,
            "page": page,
            "page_size": page_size,
            "items": items,
        }

    @app.post("/sessions/{session_id}/select")
    def select(session_id: str, body: Selection):
        _session(session_id)
        try:
            merged = store.select(session_id, body.index)
        except IndexError as exc:
            raise HTTPException(422, str(exc))
        except NoStableSelectionError as exc:
            raise HTTPException(409, str(exc))
        except (UnresolvedConflictError, DependencyCycleError) as exc:
            raise HTTPException(409, str(exc))
        return {"index": body.index, "merged": merged_to_json_obj(merged)}

    @app.get("/sessions/{session_id}/merged")
    def merged(session_id: str):
        session = _session(session_id)
        try:
            with session.lock:
                return {"merged": merged_to_json_obj(session.merged())}
        except UnresolvedConflictError as exc:
            raise HTTPException(409, str(exc))

    @app.get("/sessions/{session_id}/result")
    def result(session_id: str):
        return _result_payload(_session(session_id))

    @app.get("/sessions/{session_id}/result.csv")
    def result_csv(session_id: str):
        payload = _result_payload(_session(session_id))
        return PlainTextResponse(
            payload["csv"],
            media_type="text/csv",
            headers={"Content-Disposition": 'attachment; filename="result.csv"'},
        )

    @app.get("/sessions/{session_id}/dot", response_class=PlainTextResponse)
    def dot(session_id: str, stable: int | None = Query(None, ge=0)):
        session = _session(session_id)
        if stable is not None:
            if not 0 <= stable < len(session.stable):
                raise HTTPException(422, f"stable index {stable} out of range")
            labeling = session.stable[stable]
        else:
            labeling = session.resolved_labeling() or session.grounded
        shapes = {c: CURATOR_SHAPES[i % len(CURATOR_SHAPES)] for i, c in enumerate(session.curators())}
        node_shapes = {
            step.label: shapes[recipe.curator]
            for recipe in session.recipes
            for step in recipe.steps
        }
        return to_dot(session.graph, labeling, session.order_edges, node_shapes)

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
