"""Exact convex hulls and triangulations of integer point sets.

The hull is built incrementally (beneath-beyond) with all-integer
predicates: a simplicial scaffold of the boundary is maintained, each new
point removes the facets it strictly sees and is joined to the horizon
ridges, and coplanar simplices are merged into true facets at the end.
With strict visibility a horizon ridge can never be affinely dependent with
the inserted point, so the scaffold stays non-degenerate without any
perturbation.

Facets are reported in inward form: primitive integer normal ``v`` and
integer offset ``b`` with ``<u, v> >= -b`` on the hull and equality on the
facet.

Triangulation fans out from the lexicographically smallest vertex over the
recursively triangulated facets (any triangulation yields the same volume
and barycenter; this one is deterministic).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Iterable, Sequence

from .errors import DegenerateInput, InternalInconsistency, InvalidInput
from .lattice import AffineLatticeChart
from .linalg import IntVec, cross_normal, dot, int_det, rank, vec_sub


@dataclass(frozen=True)
class HullFacet:
    normal: IntVec
    offset: int
    vertex_ids: tuple[int, ...]


@dataclass(frozen=True)
class Hull:
    dim: int
    vertices: tuple[IntVec, ...]
    facets: tuple[HullFacet, ...]


def exact_int_vector(coords: Sequence) -> IntVec:
    """Convert exact rational coordinates to ints, refusing to round."""
    out = []
    for x in coords:
        f = Fraction(x)
        if f.denominator != 1:
            raise InternalInconsistency(f"expected integer coordinate, got {f}")
        out.append(int(f))
    return tuple(out)


def _dedupe(points: Iterable[Sequence[int]]) -> list[IntVec]:
    seen = sorted({tuple(int(x) for x in p) for p in points})
    if not seen:
        raise InvalidInput("empty point set")
    dims = {len(p) for p in seen}
    if len(dims) != 1:
        raise InvalidInput("points of mixed dimension")
    return seen


def convex_hull(points: Iterable[Sequence[int]]) -> Hull:
    """Hull of finitely many integer points; raises if not full-dimensional."""
    pts = _dedupe(points)
    dim = len(pts[0])
    if dim < 1:
        raise InvalidInput("ambient dimension must be at least 1")
    if dim == 1:
        lo, hi = pts[0][0], pts[-1][0]
        if lo == hi:
            raise DegenerateInput("hull of a single point is not full-dimensional")
        return Hull(
            1,
            ((lo,), (hi,)),
            (HullFacet((-1,), hi, (1,)), HullFacet((1,), -lo, (0,))),
        )

    base = _initial_simplex(pts, dim)
    interior_sum = tuple(sum(p[i] for p in base) for i in range(dim))
    scale = dim + 1
    id_of = {p: i for i, p in enumerate(pts)}
    base_ids = [id_of[p] for p in base]

    def make_facet(ids: tuple[int, ...]):
        corner = pts[ids[0]]
        w = cross_normal([vec_sub(pts[i], corner) for i in ids[1:]])
        if all(x == 0 for x in w):
            raise InternalInconsistency("degenerate facet in hull scaffold")
        c = dot(corner, w)
        side = dot(interior_sum, w) - scale * c
        if side > 0:
            w, c = tuple(-x for x in w), -c
        elif side == 0:
            raise InternalInconsistency("interior reference point on a facet plane")
        return (frozenset(ids), w, c)

    facets = []
    for drop in range(dim + 1):
        facets.append(make_facet(tuple(base_ids[i] for i in range(dim + 1) if i != drop)))

    in_hull = set(base_ids)
    for pid, p in enumerate(pts):
        if pid in in_hull:
            continue
        in_hull.add(pid)
        visible = [f for f in facets if dot(p, f[1]) > f[2]]
        if not visible:
            continue
        ridge_count: Counter = Counter()
        for ids, _, _ in visible:
            for ex in ids:
                ridge_count[ids - {ex}] += 1
        horizon = [r for r, cnt in ridge_count.items() if cnt == 1]
        visible_ids = {id(f) for f in visible}
        facets = [f for f in facets if id(f) not in visible_ids]
        for ridge in horizon:
            facets.append(make_facet(tuple(sorted(ridge)) + (pid,)))

    return _merge_scaffold(pts, dim, facets)


def _initial_simplex(pts: list[IntVec], dim: int) -> list[IntVec]:
    base = [pts[0]]
    dirs: list[IntVec] = []
    for p in pts[1:]:
        cand = dirs + [vec_sub(p, pts[0])]
        if rank(cand) > len(dirs):
            base.append(p)
            dirs = cand
        if len(base) == dim + 1:
            return base
    raise DegenerateInput(
        f"points span an affine space of dimension {len(base) - 1} < {dim}"
    )


def _merge_scaffold(pts: list[IntVec], dim: int, facets) -> Hull:
    planes: dict[tuple[IntVec, int], None] = {}
    for _, w, c in facets:
        g = 0
        for x in w:
            g = gcd(g, x)
        wp = tuple(x // g for x in w)
        if c % g:
            raise InternalInconsistency("facet offset not divisible by normal content")
        planes[(wp, c // g)] = None

    keys = list(planes)
    incident: dict[int, list[int]] = {}
    for pid, p in enumerate(pts):
        hits = [ki for ki, (wp, cp) in enumerate(keys) if dot(p, wp) == cp]
        if hits:
            incident[pid] = hits
    vertex_pts = sorted(
        pts[pid]
        for pid, hits in incident.items()
        if len(hits) >= dim and rank([keys[ki][0] for ki in hits]) == dim
    )
    index = {p: i for i, p in enumerate(vertex_pts)}

    hull_facets = []
    for wp, cp in keys:
        inward = tuple(-x for x in wp)
        ids = tuple(i for i, p in enumerate(vertex_pts) if dot(p, wp) == cp)
        if len(ids) < dim:
            raise InternalInconsistency("facet with too few vertices")
        hull_facets.append(HullFacet(inward, cp, ids))
    hull_facets.sort(key=lambda f: (f.normal, f.offset))
    return Hull(dim, tuple(vertex_pts), tuple(hull_facets))


# ---------------------------------------------------------------------------
# triangulation and measure

def triangulate(points: Iterable[Sequence[int]]) -> tuple[tuple[IntVec, ...], ...]:
    """Partition the hull of the points into integer simplices."""
    hull = convex_hull(points)
    return _triangulate_hull(hull)


def _triangulate_hull(hull: Hull) -> tuple[tuple[IntVec, ...], ...]:
    if hull.dim == 1:
        return ((hull.vertices[0], hull.vertices[1]),)
    apex = hull.vertices[0]
    apex_id = 0
    simplices: list[tuple[IntVec, ...]] = []
    for facet in hull.facets:
        if apex_id in facet.vertex_ids:
            continue
        fpoints = [hull.vertices[i] for i in facet.vertex_ids]
        if len(fpoints) == hull.dim:
            simplices.append((apex, *fpoints))
            continue
        chart = AffineLatticeChart.for_facet(facet.normal, fpoints)
        back: dict[IntVec, IntVec] = {}
        cpoints = []
        for p in fpoints:
            cp = exact_int_vector(chart.to_chart(p))
            back[cp] = p
            cpoints.append(cp)
        for sub in triangulate(cpoints):
            simplices.append((apex, *(back[q] for q in sub)))
    return tuple(simplices)


def volume_and_barycenter(points: Iterable[Sequence[int]]) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact Euclidean volume and barycenter of the hull of the points.

    Simplex volume is |det| / dim!, simplex barycenter the corner average;
    totals are volume-weighted.
    """
    simplices = triangulate(points)
    dim = len(simplices[0][0])
    total = Fraction(0)
    moment = [Fraction(0)] * dim
    for simplex in simplices:
        corner = simplex[0]
        vol = Fraction(abs(int_det([vec_sub(p, corner) for p in simplex[1:]])), factorial(dim))
        if vol == 0:
            continue
        total += vol
        for i in range(dim):
            moment[i] += vol * Fraction(sum(p[i] for p in simplex), dim + 1)
    if total == 0:
        raise DegenerateInput("zero-volume hull")
    return total, tuple(m / total for m in moment)
