"""Lattice-polytope geometry.

A :class:`Polytope` is a full-dimensional convex lattice polytope held in
dual representation: its lattice vertices and its irredundant half-spaces
``<u, v_i> >= -b_i`` with primitive integer normals, plus the facet/vertex
incidence relation.  Construction always goes through the exact hull engine
so both representations are consistent by construction.

Measures come in two flavors.  :func:`measure` is the Euclidean volume and
barycenter, computed by fanning a triangulation from the lexicographically
smallest vertex.  :func:`facet_data` equips each facet with the
lattice-normalized (dim-1)-measure: the facet is mapped to integer
coordinates through a lattice chart of its affine hyperplane (a fundamental
cell of the facet sublattice has measure one there), measured, and the
barycenter pulled back.

Lower-dimensional hulls appear only as :class:`Body` values, which is all
Minkowski sums and mixed volumes need; every other operation requires a
full-dimensional :class:`Polytope`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DegenerateInput, InternalInconsistency, InvalidInput, Unsupported, UnboundedInput
from .exactnum import Vector, rational_to_json
from .hull import Hull, convex_hull, exact_int_vector, volume_and_barycenter
from .lattice import AffineLatticeChart, primitive
from .linalg import IntVec, dot, rank, solve, vec_add, vec_sub

DIMENSION_CAP = 7


@dataclass(frozen=True)
class Halfspace:
    """Inward half-space ``<u, normal> >= -offset`` with primitive normal."""

    normal: IntVec
    offset: int


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: tuple[IntVec, ...]
    facets: tuple[Halfspace, ...]
    incidence: tuple[tuple[int, ...], ...]

    def facet_vertices(self, i: int) -> tuple[IntVec, ...]:
        return tuple(self.vertices[j] for j in self.incidence[i])

    def contains(self, point: Sequence, dilation: int = 1) -> bool:
        return all(dot(point, f.normal) >= -f.offset * dilation for f in self.facets)

    def strictly_contains(self, point: Sequence, dilation: int = 1) -> bool:
        return all(dot(point, f.normal) > -f.offset * dilation for f in self.facets)


@dataclass(frozen=True)
class Body:
    """Convex hull of lattice points, allowed to be lower-dimensional.

    ``vertices`` are the extreme points, lexicographically sorted, so equal
    hulls compare equal structurally.
    """

    dim: int
    vertices: tuple[IntVec, ...]


@dataclass(frozen=True)
class MeasureData:
    volume: Fraction
    barycenter: Vector


@dataclass(frozen=True)
class FacetMeasure:
    normal: IntVec
    offset: int
    normalized_volume: Fraction
    barycenter: Vector


@dataclass(frozen=True)
class FacetData:
    facets: tuple[FacetMeasure, ...]
    boundary_normalized_volume: Fraction
    boundary_barycenter: Vector


@dataclass(frozen=True)
class Classification:
    reflexive: bool
    delzant: bool


# ---------------------------------------------------------------------------
# construction

def _check_dim(dim: int, dimension_cap: int) -> None:
    if dim > dimension_cap:
        raise Unsupported(
            f"dimension {dim} above the configured cap {dimension_cap}"
        )


def hull_from_vertices(points: Iterable[Sequence[int]], dimension_cap: int = DIMENSION_CAP) -> Polytope:
    """Full-dimensional lattice polytope from a generating point set.

    Non-extreme input points are dropped; raises ``DegenerateInput`` when the
    points do not affinely span the ambient space.
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise InvalidInput("empty vertex set")
    _check_dim(len(pts[0]), dimension_cap)
    hull = convex_hull(pts)
    return Polytope(
        hull.dim,
        hull.vertices,
        tuple(Halfspace(f.normal, f.offset) for f in hull.facets),
        tuple(f.vertex_ids for f in hull.facets),
    )


def polytope_from_halfspaces(
    normals: Sequence[Sequence[int]],
    offsets: Sequence[int],
    dimension_cap: int = DIMENSION_CAP,
) -> Polytope:
    """Bounded full-dimensional intersection of lattice half-spaces.

    Vertices are enumerated from all maximal-rank normal subsets; redundant
    inequalities disappear when the hull is rebuilt from the vertices.  The
    intersection must be a lattice polytope (integer vertices).
    """
    if len(normals) != len(offsets):
        raise InvalidInput("normals and offsets of different lengths")
    if not normals:
        raise InvalidInput("no half-spaces given")
    dim = len(normals[0])
    _check_dim(dim, dimension_cap)
    from math import gcd

    rows: list[tuple[IntVec, Fraction]] = []
    for v, b in zip(normals, offsets):
        v = tuple(int(x) for x in v)
        if len(v) != dim:
            raise InvalidInput("normals of mixed dimension")
        if all(x == 0 for x in v):
            raise InvalidInput("zero normal vector")
        g = 0
        for x in v:
            g = gcd(g, x)
        rows.append((tuple(x // g for x in v), Fraction(int(b), g)))

    _require_bounded([v for v, _ in rows])

    candidates: set[IntVec] = set()
    for subset in combinations(range(len(rows)), dim):
        matrix = [rows[i][0] for i in subset]
        if rank(matrix) < dim:
            continue
        point = solve(matrix, [-rows[i][1] for i in subset])
        if all(dot(point, v) >= -b for v, b in rows):
            candidates.add(exact_int_vector_or_invalid(point))
    if not candidates:
        raise DegenerateInput("half-space intersection is empty")
    if rank([vec_sub(p, next(iter(candidates))) for p in candidates]) < dim:
        raise DegenerateInput("half-space intersection is not full-dimensional")
    return hull_from_vertices(sorted(candidates), dimension_cap)


def exact_int_vector_or_invalid(point: Sequence[Fraction]) -> IntVec:
    if any(Fraction(x).denominator != 1 for x in point):
        raise InvalidInput(f"vertex {tuple(point)} is not a lattice point")
    return tuple(int(x) for x in point)


def _require_bounded(normals: Sequence[IntVec]) -> None:
    # Bounded iff the normals positively span, iff the origin is strictly
    # interior to their convex hull.
    try:
        hull = convex_hull(normals)
    except DegenerateInput:
        raise UnboundedInput("facet normals do not span the ambient space")
    if any(f.offset <= 0 for f in hull.facets):
        raise UnboundedInput("facet normals do not positively span")


# ---------------------------------------------------------------------------
# bodies, dilation, Minkowski sums

def body_from_points(points: Iterable[Sequence[int]]) -> Body:
    """Canonical possibly-degenerate hull: extreme points only, sorted."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise InvalidInput("empty point set")
    dim = len(pts[0])
    if len(pts) == 1:
        return Body(dim, (pts[0],))
    origin = pts[0]
    dirs = [vec_sub(p, origin) for p in pts[1:]]
    r = rank(dirs)
    if r == dim:
        return Body(dim, convex_hull(pts).vertices)
    # project to exact integer coordinates on the affine hull, hull there
    from .lattice import hermite_normal_form

    h, _ = hermite_normal_form(dirs)
    basis = [row for row in h if any(x != 0 for x in row)]
    coords = []
    for p in pts:
        coords.append(_coords_in_rowspan(vec_sub(p, origin), basis))
    sub = convex_hull(coords) if r >= 1 else None
    keep = set(sub.vertices) if sub else {()}
    out = [p for p, c in zip(pts, coords) if c in keep]
    return Body(dim, tuple(sorted(out)))


def _coords_in_rowspan(target: IntVec, basis: list[IntVec]) -> IntVec:
    # basis rows are in Hermite form, hence echelon: forward-substitute.
    coords = []
    residue = list(target)
    for row in basis:
        lead = next(i for i, x in enumerate(row) if x != 0)
        if residue[lead] % row[lead]:
            raise InternalInconsistency("point outside the integer row span")
        c = residue[lead] // row[lead]
        coords.append(c)
        residue = [a - c * b for a, b in zip(residue, row)]
    if any(residue):
        raise InternalInconsistency("point outside the integer row span")
    return tuple(coords)


def as_body(obj: Polytope | Body) -> Body:
    if isinstance(obj, Body):
        return obj
    return Body(obj.dim, obj.vertices)


def dilate(obj: Polytope | Body, factor: int):
    """Integer dilation ``factor * P``; ``factor == 0`` collapses to the origin."""
    if factor < 0:
        raise InvalidInput("dilation factor must be nonnegative")
    if factor == 0:
        dim = obj.dim
        return Body(dim, ((0,) * dim,))
    if factor == 1:
        return obj
    verts = [tuple(factor * x for x in v) for v in obj.vertices]
    if isinstance(obj, Body):
        return Body(obj.dim, tuple(sorted(verts)))
    return hull_from_vertices(verts)


def translate(obj: Polytope | Body, shift: Sequence[int]):
    verts = [vec_add(v, shift) for v in obj.vertices]
    if isinstance(obj, Body):
        return Body(obj.dim, tuple(sorted(verts)))
    return hull_from_vertices(verts)


def minkowski_sum(a: Polytope | Body, b: Polytope | Body) -> Polytope | Body:
    """Minkowski sum; degenerate summands are fine, as is a degenerate result.

    Returns a :class:`Polytope` when the sum is full-dimensional and a
    :class:`Body` otherwise.
    """
    if a.dim != b.dim:
        raise InvalidInput(f"ambient dimensions differ: {a.dim} vs {b.dim}")
    sums = sorted({vec_add(u, v) for u in a.vertices for v in b.vertices})
    if rank([vec_sub(p, sums[0]) for p in sums]) == a.dim:
        return hull_from_vertices(sums)
    return body_from_points(sums)


# ---------------------------------------------------------------------------
# measures

@lru_cache(maxsize=None)
def measure(p: Polytope) -> MeasureData:
    """Exact Euclidean volume and barycenter."""
    vol, bc = volume_and_barycenter(p.vertices)
    return MeasureData(vol, bc)


@lru_cache(maxsize=None)
def facet_data(p: Polytope) -> FacetData:
    """Lattice-normalized facet measures, barycenters, and their aggregates."""
    measures = []
    total = Fraction(0)
    moment = [Fraction(0)] * p.dim
    for i, facet in enumerate(p.facets):
        fverts = p.facet_vertices(i)
        if p.dim == 1:
            # a facet is a single point; its 0-dimensional measure is 1
            vol, bc = Fraction(1), tuple(Fraction(x) for x in fverts[0])
        else:
            chart = AffineLatticeChart.for_facet(facet.normal, fverts)
            coords = [exact_int_vector(chart.to_chart(v)) for v in fverts]
            vol, cbc = volume_and_barycenter(coords)
            bc = chart.from_chart(cbc)
        measures.append(FacetMeasure(facet.normal, facet.offset, vol, bc))
        total += vol
        for j in range(p.dim):
            moment[j] += vol * bc[j]
    return FacetData(
        tuple(measures),
        total,
        tuple(m / total for m in moment),
    )


def support_value(p: Polytope, direction: Sequence[int]) -> int:
    """Support value ``min_{u in P} <u, direction>`` (attained at a vertex)."""
    return min(dot(v, direction) for v in p.vertices)


# ---------------------------------------------------------------------------
# classification

@lru_cache(maxsize=None)
def edges(p: Polytope) -> tuple[tuple[int, int], ...]:
    """Vertex-index pairs forming the 1-faces.

    A segment between two vertices is an edge exactly when the facets
    containing both have normals spanning a space of rank dim-1.
    """
    facet_sets = [set(ids) for ids in p.incidence]
    out = []
    for i, j in combinations(range(len(p.vertices)), 2):
        common = [k for k, s in enumerate(facet_sets) if i in s and j in s]
        if not common:
            continue
        if rank([p.facets[k].normal for k in common]) == p.dim - 1:
            out.append((i, j))
    return tuple(out)


@lru_cache(maxsize=None)
def classify(p: Polytope) -> Classification:
    """Reflexive and Delzant flags.

    Reflexive: the origin is interior and every facet offset is 1.  Delzant:
    every vertex lies on exactly dim edges whose primitive directions form a
    basis of the lattice (determinant +-1).
    """
    reflexive = all(f.offset == 1 for f in p.facets) and p.strictly_contains((0,) * p.dim)

    from .linalg import int_det

    neighbors: dict[int, list[int]] = {i: [] for i in range(len(p.vertices))}
    for i, j in edges(p):
        neighbors[i].append(j)
        neighbors[j].append(i)
    delzant = True
    for i, adj in neighbors.items():
        if len(adj) != p.dim:
            delzant = False
            break
        dirs = [primitive(vec_sub(p.vertices[j], p.vertices[i])) for j in adj]
        if abs(int_det(dirs)) != 1:
            delzant = False
            break
    return Classification(reflexive, delzant)


# ---------------------------------------------------------------------------
# JSON documents

def polytope_from_document(doc: dict, dimension_cap: int = DIMENSION_CAP) -> tuple[Polytope, str | None]:
    """Build a polytope from a JSON document.

    The document carries ``vertices`` and/or ``normals``+``offsets``; when
    both representations are present they must describe the same polytope.
    """
    if not isinstance(doc, dict):
        raise InvalidInput("polytope document must be a JSON object")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InvalidInput("polytope name must be a string")
    has_v = "vertices" in doc
    has_h = "normals" in doc or "offsets" in doc
    if has_h and ("normals" not in doc or "offsets" not in doc):
        raise InvalidInput("half-space form needs both normals and offsets")
    if not has_v and not has_h:
        raise InvalidInput("document has neither vertices nor normals/offsets")
    from_v = hull_from_vertices(_int_rows(doc["vertices"]), dimension_cap) if has_v else None
    from_h = (
        polytope_from_halfspaces(_int_rows(doc["normals"]), _int_list(doc["offsets"]), dimension_cap)
        if has_h
        else None
    )
    if from_v and from_h and from_v != from_h:
        raise InvalidInput("vertex and half-space representations disagree")
    return (from_v or from_h), name


def polytope_to_document(p: Polytope, name: str | None = None) -> dict:
    doc: dict = {}
    if name:
        doc["name"] = name
    doc["vertices"] = [list(v) for v in p.vertices]
    doc["normals"] = [list(f.normal) for f in p.facets]
    doc["offsets"] = [f.offset for f in p.facets]
    return doc


def _int_rows(rows: object) -> list[tuple[int, ...]]:
    if not isinstance(rows, list) or not rows:
        raise InvalidInput("expected a nonempty array of integer vectors")
    out = []
    for row in rows:
        if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise InvalidInput(f"expected an integer vector, got {row!r}")
        out.append(tuple(row))
    return out


def _int_list(values: object) -> list[int]:
    if not isinstance(values, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
        raise InvalidInput("expected an array of integers")
    return list(values)
