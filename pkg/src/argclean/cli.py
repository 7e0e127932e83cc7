"""Command line interface over the reconciliation pipeline."""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .afgraph import (
    ApxSyntaxError,
    grounded_labeling,
    labeling_to_json,
    labeling_to_json_obj,
    parse_apx,
    stable_labelings,
    to_apx,
    to_dot,
)
from .conflicts import DEFAULT_CONFLICT_RULES, detect_conflicts, load_conflict_rules
from .merging import (
    DEFAULT_DEPENDENCY_RULES,
    DependencyCycleError,
    UnresolvedConflictError,
    merge,
    serialize_merged,
)
from .recipes import RecipeFormatError, describe_operation, parse_recipe
from .session import SessionConfig
from .tabular import DatasetError, RecipeApplicationError, apply_recipe, load_csv, save_csv

_PATH = click.Path(exists=True, dir_okay=False, path_type=Path)
_OUT_PATH = click.Path(dir_okay=False, path_type=Path)


def _report_errors(fn):
    """Print domain errors as JSON on stderr and exit nonzero."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (
            ApxSyntaxError,
            RecipeFormatError,
            DatasetError,
            RecipeApplicationError,
            UnresolvedConflictError,
            DependencyCycleError,
            ValueError,
            OSError,
        ) as exc:
            payload = {"error": type(exc).__name__, "message": str(exc)}
            click.echo(json.dumps(payload), err=True)
            sys.exit(1)

    return wrapper


def _load_recipes(paths):
    return [parse_recipe(Path(p).read_text(encoding="utf-8")) for p in paths]


def _emit(text: str, output: Path | None):
    if output is None:
        click.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")


def _select_labeling(graph, stable_index):
    grounded = grounded_labeling(graph)
    if stable_index is None:
        if grounded.undec_set:
            raise UnresolvedConflictError(grounded.undec_set)
        return grounded
    labelings = stable_labelings(graph)
    if not 0 <= stable_index < len(labelings):
        raise ValueError(
            f"--stable index {stable_index} out of range; "
            f"{len(labelings)} stable labeling(s) exist"
        )
    return labelings[stable_index]


def _echo_step_warnings(log):
    for entry in log:
        for warning in entry.warnings:
            click.echo(f"warning: step {entry.label}: {warning}", err=True)


@click.group()
def main():
    """Detect, solve, and merge conflicts between data-cleaning recipes."""


@main.command()
@click.argument("graph_file", type=_PATH)
@click.option("--semantics", type=click.Choice(["grounded", "stable"]), default="grounded",
              show_default=True, help="Which labeling(s) to compute.")
@click.option("--dot", "dot_path", type=_OUT_PATH, default=None,
              help="Also write the graph as Graphviz text, colored by the grounded labeling.")
@_report_errors
def solve(graph_file: Path, semantics: str, dot_path: Path | None):
    """Solve an attack graph given as apx text."""
    graph = parse_apx(graph_file.read_text(encoding="utf-8"))
    grounded = grounded_labeling(graph)
    if semantics == "grounded":
        click.echo(labeling_to_json(grounded))
    else:
        labelings = stable_labelings(graph)
        click.echo(json.dumps([labeling_to_json_obj(l) for l in labelings]))
    if dot_path is not None:
        dot_path.write_text(to_dot(graph, grounded), encoding="utf-8")


@main.command()
@click.argument("recipe_a", type=_PATH)
@click.argument("recipe_b", type=_PATH)
@click.option("--apx", "apx_path", type=_OUT_PATH, default=None,
              help="Write the attack graph as apx text.")
@click.option("--dot", "dot_path", type=_OUT_PATH, default=None,
              help="Write the attack graph with order edges as Graphviz text.")
@_report_errors
def conflicts(recipe_a: Path, recipe_b: Path, apx_path: Path | None, dot_path: Path | None):
    """Detect attacks between two recipes."""
    recipes = _load_recipes([recipe_a, recipe_b])
    graph, order_edges = detect_conflicts(recipes)
    payload = {
        "arguments": sorted(graph.arguments),
        "attacks": sorted([s, t] for s, t in graph.attacks),
        "order_edges": sorted([s, t] for s, t in order_edges),
        "steps": [
            {"label": s.label, "curator": r.curator, "position": s.position,
             "text": describe_operation(s.operation)}
            for r in recipes
            for s in r.steps
        ],
    }
    click.echo(json.dumps(payload, indent=2))
    if apx_path is not None:
        apx_path.write_text(to_apx(graph), encoding="utf-8")
    if dot_path is not None:
        dot_path.write_text(to_dot(graph, None, order_edges), encoding="utf-8")


@main.command()
@click.argument("recipes", nargs=-1, required=True, type=_PATH)
@click.option("--list", "as_list", is_flag=True, help="Print all labelings as JSON (default).")
@click.option("--count", "as_count", is_flag=True, help="Print only the number of stable labelings.")
@_report_errors
def extensions(recipes, as_list: bool, as_count: bool):
    """Compute the grounded labeling and all stable labelings."""
    if as_list and as_count:
        raise click.UsageError("--list and --count are mutually exclusive")
    parsed = _load_recipes(recipes)
    graph, _ = detect_conflicts(parsed)
    if as_count:
        click.echo(f"stable: {len(stable_labelings(graph))}")
        return
    payload = {
        "grounded": labeling_to_json_obj(grounded_labeling(graph)),
        "stable": [
            {"index": i, "labeling": labeling_to_json_obj(l)}
            for i, l in enumerate(stable_labelings(graph))
        ],
    }
    click.echo(json.dumps(payload, indent=2))


@main.command(name="merge")
@click.argument("recipes", nargs=-1, required=True, type=_PATH)
@click.option("--stable", "stable_index", type=int, default=None,
              help="Resolve undecided arguments with this stable labeling (0-based canonical index).")
@click.option("-o", "--output", type=_OUT_PATH, default=None)
@_report_errors
def merge_cmd(recipes, stable_index: int | None, output: Path | None):
    """Merge the accepted steps of the recipes into one recipe."""
    parsed = _load_recipes(recipes)
    graph, _ = detect_conflicts(parsed)
    labeling = _select_labeling(graph, stable_index)
    merged = merge(parsed, labeling)
    _emit(serialize_merged(merged), output)


@main.command()
@click.argument("recipe_file", type=_PATH)
@click.argument("csv_file", type=_PATH)
@click.option("-o", "--output", type=_OUT_PATH, default=None)
@_report_errors
def apply(recipe_file: Path, csv_file: Path, output: Path | None):
    """Apply a recipe (or merged recipe) to a CSV file."""
    recipe = parse_recipe(recipe_file.read_text(encoding="utf-8"))
    dataset = load_csv(csv_file.read_text(encoding="utf-8"))
    result, log = apply_recipe(dataset, recipe)
    _echo_step_warnings(log)
    _emit(save_csv(result), output)


@main.command()
@click.argument("inputs", nargs=-1, required=True, type=_PATH)
@click.option("--stable", "stable_index", type=int, default=None,
              help="Resolve undecided arguments with this stable labeling (0-based canonical index).")
@click.option("-o", "--output", type=_OUT_PATH, default=None)
@_report_errors
def pipeline(inputs, stable_index: int | None, output: Path | None):
    """End to end: RECIPE... DATA_CSV; detect, solve, merge, apply."""
    if len(inputs) < 3:
        raise click.UsageError("pipeline needs at least two recipe files and a CSV file")
    *recipe_paths, csv_path = inputs
    parsed = _load_recipes(recipe_paths)
    dataset = load_csv(Path(csv_path).read_text(encoding="utf-8"))
    graph, _ = detect_conflicts(parsed)
    labeling = _select_labeling(graph, stable_index)
    merged = merge(parsed, labeling)
    result, log = apply_recipe(dataset, merged)
    _echo_step_warnings(log)
    _emit(save_csv(result), output)


def _load_config(path: Path | None) -> dict[str, str]:
    """Key=value lines; '#' starts a comment."""
    if path is None:
        return {}
    values: dict[str, str] = {}
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None, help="Listen port [default: 8000].")
@click.option("--config", "config_path", type=_PATH, default=None,
              help="Key=value config file (port, stable_cap, session_dir, static_dir, conflict_matrix, dependency_rules).")
@click.option("--session-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Snapshot sessions to this directory.")
@click.option("--stable-cap", type=int, default=None,
              help="Stop enumerating stable labelings after this many [default: 10000].")
@click.option("--static-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Serve this directory (a built UI bundle) at /.")
@click.option("--conflict-matrix", "matrix_path", type=_PATH, default=None,
              help="JSON file overriding the pairwise conflict rule table.")
@click.option("--dependency-rules", "dependency_rules", default=None,
              help="Comma-separated subset of: " + ", ".join(DEFAULT_DEPENDENCY_RULES))
@_report_errors
def serve(host, port, config_path, session_dir, stable_cap, static_dir, matrix_path, dependency_rules):
    """Run the HTTP API (and UI, when a bundle is available)."""
    import uvicorn

    from .service import create_app

    file_cfg = _load_config(config_path)
    port = port if port is not None else int(file_cfg.get("port", 8000))
    stable_cap = stable_cap if stable_cap is not None else int(file_cfg.get("stable_cap", 10_000))
    session_dir = session_dir or file_cfg.get("session_dir")
    static_dir = static_dir or file_cfg.get("static_dir")
    if static_dir is None and Path("frontend/dist").is_dir():
        static_dir = "frontend/dist"

    conflict_rules = DEFAULT_CONFLICT_RULES
    matrix_path = matrix_path or file_cfg.get("conflict_matrix")
    if matrix_path:
        conflict_rules = load_conflict_rules(Path(matrix_path).read_text(encoding="utf-8"))

    dependency_rules = dependency_rules or file_cfg.get("dependency_rules")
    if dependency_rules:
        rules = tuple(r.strip() for r in dependency_rules.split(",") if r.strip())
        unknown = [r for r in rules if r not in DEFAULT_DEPENDENCY_RULES]
        if unknown:
            raise ValueError(f"unknown dependency rule(s): {', '.join(unknown)}")
    else:
        rules = DEFAULT_DEPENDENCY_RULES

    config = SessionConfig(
        stable_cap=stable_cap,
        dependency_rules=rules,
        conflict_rules=conflict_rules,
        snapshot_dir=str(session_dir) if session_dir else None,
    )
    uvicorn.run(create_app(config, str(static_dir) if static_dir else None), host=host, port=port)


if __name__ == "__main__":
    main()
