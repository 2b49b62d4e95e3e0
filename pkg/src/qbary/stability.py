"""Stability thresholds of polarized toric data.

For ray/offset data (v_i, b_i) the k-th threshold is

    delta_k = min_i 1 / (<Bc_k(P), v_i> + b_i),

with the quantized barycenter Bc_k of the polytope, and delta is the same
expression with the classical barycenter.  Since each coordinate of Bc_k is
a fixed rational function of k, delta_k agrees with a single facet's
rational function for all k past an effectively computable threshold k0:
the facet whose Laurent expansion dominates lexicographically wins, and k0
is found by exact sign analysis of the finitely many numerator differences.

The expansion of delta_k starts delta - (B/(2V)) max_{i in I} <bBc - Bc,
v_i> delta^2 / k + ... where B, bBc are the lattice-normalized boundary
volume and barycenter, V, Bc volume and barycenter, and I the facets
attaining delta; the Laurent coefficients of the dominant function are
asserted against that closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalInconsistency, InvalidInput, InvalidPolarization, Unsupported
from .exactnum import LaurentSeries, Polynomial, RationalFunction, laurent_expand
from .expansion import barycenter_function, quantized_barycenter
from .linalg import dot, solve
from .polytope import classify, facet_data, measure, support_value
from .toric import ToricData


@dataclass(frozen=True)
class DeltaValue:
    k: int
    value: Fraction
    argmin: tuple[int, ...]


@dataclass(frozen=True)
class DeltaSequence:
    values: tuple[DeltaValue, ...]
    limit: Fraction
    limit_argmin: tuple[int, ...]
    dominant: RationalFunction
    dominant_rays: tuple[int, ...]
    k0: int
    asymptotics: LaurentSeries


def _threshold(t: ToricData, bc: Sequence[Fraction]) -> tuple[Fraction, tuple[int, ...]]:
    dens = [dot(bc, ray) + b for ray, b in zip(t.rays, t.offsets)]
    if any(d <= 0 for d in dens):
        raise InvalidPolarization(
            "a facet pairing is nonpositive; the data does not polarize"
        )
    top = max(dens)
    return 1 / top, tuple(i for i, d in enumerate(dens) if d == top)


def delta_k(t: ToricData, k: int) -> tuple[Fraction, tuple[int, ...]]:
    """k-th threshold with the set of rays attaining it."""
    if k < 1:
        raise InvalidInput("threshold index must be positive")
    return _threshold(t, quantized_barycenter(t.polytope, k).value)


def delta(t: ToricData) -> tuple[Fraction, tuple[int, ...]]:
    """Limit threshold from the classical barycenter."""
    return _threshold(t, measure(t.polytope).barycenter)


def _facet_numerators(t: ToricData) -> tuple[list[Polynomial], Polynomial]:
    """Numerators of <Bc_k, v_i> + b_i over the counting polynomial."""
    bf = barycenter_function(t.polytope)
    den = bf.denominator
    nums = [bf.pairing_numerator(ray) + den * b for ray, b in zip(t.rays, t.offsets)]
    return nums, den


def _root_bound(poly: Polynomial) -> int:
    """Cauchy bound: all real roots have absolute value below the result."""
    lead = abs(poly.leading)
    bound = 1 + max(abs(c) / lead for c in poly.coefficients)
    return int(bound) + 1


def delta_sequence(t: ToricData, ks: Sequence[int], order: int = 2) -> DeltaSequence:
    """Per-k thresholds, the dominant rational function with its validity
    threshold k0, and the asymptotic expansion.

    The dominant facet maximizes the Laurent expansion of its pairing
    lexicographically; expansions that agree to high order are compared as
    exact rational functions, and exact ties are reported together.  k0 is
    one past the largest dilation at which any strictly smaller facet still
    ties or wins, located by scanning up to an exact root bound.
    """
    if order < 2:
        raise InvalidInput("expansion order must be at least 2")
    nums, den = _facet_numerators(t)
    n = t.polytope.dim
    depth = max(order, n + 2)
    series = [laurent_expand(RationalFunction.of(num, den), depth) for num in nums]
    best = max(range(len(nums)), key=lambda i: series[i].coefficients)
    dominant_rays = tuple(i for i in range(len(nums)) if nums[i] == nums[best])

    k0 = 1
    for i, num in enumerate(nums):
        if num == nums[best]:
            continue
        diff = nums[best] - num
        if diff.leading <= 0:
            raise InternalInconsistency("dominant facet does not dominate")
        for k in range(_root_bound(diff), 0, -1):
            if diff(k) <= 0:
                k0 = max(k0, k + 1)
                break

    dominant = RationalFunction.of(den, nums[best])
    asym = laurent_expand(dominant, order)

    limit, limit_argmin = delta(t)
    if asym.coefficient(0) != limit:
        raise InternalInconsistency("expansion constant term differs from delta")
    geo = measure(t.polytope)
    boundary = facet_data(t.polytope)
    drift = tuple(
        bb - b for bb, b in zip(boundary.boundary_barycenter, geo.barycenter)
    )
    closed_a1 = (
        -(boundary.boundary_normalized_volume / (2 * geo.volume))
        * max(dot(drift, t.rays[i]) for i in limit_argmin)
        * limit
        * limit
    )
    if asym.coefficient(1) != closed_a1:
        raise InternalInconsistency("first-order term differs from its closed form")

    values = tuple(DeltaValue(k, *delta_k(t, k)) for k in ks)
    return DeltaSequence(values, limit, limit_argmin, dominant, dominant_rays, k0, asym)


def del_pezzo_closed_form(t: ToricData, k: int) -> Fraction:
    """Threshold of a smooth reflexive polygon in closed form.

    With ``K = boundary normalized volume`` the value is
    ``1 / (1 + (k+1)(2k+1)K / (4 + 2k(k+1)K) * (1/delta - 1))``; asserted
    equal to the directly enumerated threshold.
    """
    p = t.polytope
    cls = classify(p)
    if p.dim != 2 or not cls.reflexive or not cls.delzant:
        raise Unsupported("closed form requires a smooth reflexive polygon")
    if k < 1:
        raise InvalidInput("threshold index must be positive")
    ksq = facet_data(p).boundary_normalized_volume
    lim = delta(t)[0]
    ratio = Fraction((k + 1) * (2 * k + 1) * ksq, 4 + 2 * k * (k + 1) * ksq)
    value = 1 / (1 + ratio * (1 / lim - 1))
    if value != delta_k(t, k)[0]:
        raise InternalInconsistency("del Pezzo closed form disagrees with enumeration")
    return value


def expected_vanishing_order(t: ToricData, direction: Sequence[int], k: int) -> Fraction:
    """``<Bc_k, direction> - psi(direction)`` with psi the support function."""
    v = tuple(int(x) for x in direction)
    bc = quantized_barycenter(t.polytope, k).value
    return dot(bc, v) - support_value(t.polytope, v)


def log_discrepancy(t: ToricData, direction: Sequence[int]) -> Fraction:
    """Sum of the barycentric coordinates of the direction in a containing
    simplicial vertex cone of the normal fan; each ray has discrepancy 1.

    Vertex cones with more than dim rays are skipped; if no simplicial cone
    contains the direction the computation is unsupported.
    """
    p = t.polytope
    v = tuple(int(x) for x in direction)
    n = p.dim
    saw_nonsimplicial = False
    for vid in range(len(p.vertices)):
        incident = [i for i, ids in enumerate(p.incidence) if vid in ids]
        if len(incident) != n:
            saw_nonsimplicial = True
            continue
        rays = [p.facets[i].normal for i in incident]
        matrix = [[rays[j][i] for j in range(n)] for i in range(n)]
        try:
            coords = solve(matrix, v)
        except InvalidInput:
            saw_nonsimplicial = True
            continue
        if all(c >= 0 for c in coords):
            return sum(coords, Fraction(0))
    detail = " (a non-simplicial vertex cone was skipped)" if saw_nonsimplicial else ""
    raise Unsupported(f"no simplicial vertex cone contains {v}{detail}")
