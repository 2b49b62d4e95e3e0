"""Shared fixtures: the bundled polytopes and a seeded random corpus."""

from __future__ import annotations

import random
from itertools import product

import pytest

import qbary as qb
from qbary.linalg import dot

FIXTURE_NAMES = (
    "p2",
    "f1",
    "blowup-p1xp1",
    "fano-3-29",
    "cube2",
    "cube3",
    "square-reflexive-nondelzant",
    "square-delzant-nonreflexive",
    "hexagon",
)

DEL_PEZZO_NAMES = ("p2", "f1", "cube2", "blowup-p1xp1", "hexagon")

_CORPUS_CACHE: list | None = None


@pytest.fixture(scope="session")
def fixtures() -> dict[str, qb.Polytope]:
    return {name: qb.load_fixture(name) for name in FIXTURE_NAMES}


def random_corpus() -> list[qb.Polytope]:
    """At least 50 full-dimensional lattice polytopes with vertices in
    [-3, 3]^n for n in {2, 3}; deterministic across runs."""
    global _CORPUS_CACHE
    if _CORPUS_CACHE is not None:
        return _CORPUS_CACHE
    rng = random.Random(20260810)
    corpus: list[qb.Polytope] = []
    want = [(2, 32), (3, 20)]
    for dim, quota in want:
        got = 0
        while got < quota:
            count = rng.randint(dim + 1, dim + 5)
            pts = [
                tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(count)
            ]
            try:
                corpus.append(qb.hull_from_vertices(pts))
            except qb.QbaryError:
                continue
            got += 1
    _CORPUS_CACHE = corpus
    return corpus


@pytest.fixture(scope="session")
def corpus() -> list[qb.Polytope]:
    return random_corpus()


# ---------------------------------------------------------------------------
# independent oracles (deliberately naive implementations)

def brute_count(p: qb.Polytope, k: int, strict: bool = False) -> int:
    """Box scan with per-point inequality tests; independent of the library's
    interval-based counter."""
    if k == 0:
        return 0 if strict else 1
    ranges = [
        range(k * min(v[i] for v in p.vertices), k * max(v[i] for v in p.vertices) + 1)
        for i in range(p.dim)
    ]
    total = 0
    for pt in product(*ranges):
        ok = all(
            (dot(pt, f.normal) > -k * f.offset)
            if strict
            else (dot(pt, f.normal) >= -k * f.offset)
            for f in p.facets
        )
        total += ok
    return total


def brute_vertex_sum(p: qb.Polytope, k: int) -> tuple[int, ...]:
    ranges = [
        range(k * min(v[i] for v in p.vertices), k * max(v[i] for v in p.vertices) + 1)
        for i in range(p.dim)
    ]
    sums = [0] * p.dim
    for pt in product(*ranges):
        if all(dot(pt, f.normal) >= -k * f.offset for f in p.facets):
            for i, x in enumerate(pt):
                sums[i] += x
    return tuple(sums)


def shoelace_area(vertices_ccw) -> object:
    from fractions import Fraction

    total = Fraction(0)
    n = len(vertices_ccw)
    for i in range(n):
        x1, y1 = vertices_ccw[i]
        x2, y2 = vertices_ccw[(i + 1) % n]
        total += Fraction(x1) * y2 - Fraction(x2) * y1
    return abs(total) / 2


def ccw_order(points):
    from fractions import Fraction

    cx = sum(Fraction(p[0]) for p in points) / len(points)
    cy = sum(Fraction(p[1]) for p in points) / len(points)

    import math

    return sorted(points, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))
