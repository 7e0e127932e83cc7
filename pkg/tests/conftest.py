import json
from pathlib import Path

import pytest

from argclean import detect_conflicts, load_csv, parse_recipe

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

#: the 15 directed attacks between the two bundled demo recipes
DEMO_ATTACKS = frozenset(
    [
        ("E", "L"), ("L", "E"),
        ("F", "O"), ("O", "F"),
        ("J", "R"), ("R", "J"),
        ("G", "M"), ("M", "G"),
        ("Q", "K"),
        ("H", "N"),
        ("N", "I"),
        ("O", "I"),
        ("F", "P"),
        ("M", "K"),
        ("G", "S"),
    ]
)

#: accepted set of the demo selection used throughout the docs
DEMO_SELECTED_IN = frozenset(["E", "H", "J", "M", "O", "P", "Q", "S"])

#: published-style step order for that selection
DEMO_MERGE_ORDER = ["E", "M", "H", "O", "P", "J", "Q", "S"]


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def alice():
    return parse_recipe(fixture_text("alice.json"))


@pytest.fixture(scope="session")
def bob():
    return parse_recipe(fixture_text("bob.json"))


@pytest.fixture(scope="session")
def books():
    return load_csv(fixture_text("books.csv"))


@pytest.fixture(scope="session")
def demo_graph(alice, bob):
    graph, order_edges = detect_conflicts([alice, bob])
    return graph, order_edges


@pytest.fixture(scope="session")
def demo_recipe_objs():
    return json.loads(fixture_text("alice.json")), json.loads(fixture_text("bob.json"))
