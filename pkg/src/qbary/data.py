"""Bundled example polytopes.

Each fixture is a JSON polytope document carrying both representations
(vertices and normals/offsets), so loading one also exercises the
consistency check between them.
"""

from __future__ import annotations

import json
from importlib import resources

from .errors import InvalidInput
from .polytope import Polytope, polytope_from_document


def _fixture_dir():
    return resources.files("qbary").joinpath("fixtures")


def fixture_names() -> tuple[str, ...]:
    names = sorted(
        entry.name[: -len(".json")]
        for entry in _fixture_dir().iterdir()
        if entry.name.endswith(".json")
    )
    return tuple(names)


def fixture_document(name: str) -> dict:
    entry = _fixture_dir().joinpath(f"{name}.json")
    try:
        text = entry.read_text()
    except FileNotFoundError:
        raise InvalidInput(
            f"unknown fixture {name!r}; available: {', '.join(fixture_names())}"
        ) from None
    return json.loads(text)


def load_fixture(name: str) -> Polytope:
    polytope, _ = polytope_from_document(fixture_document(name))
    return polytope
