"""Quantized barycenters, their exact rational-function form, and the full
asymptotic expansion in the dilation parameter.

The k-th quantized barycenter of a lattice polytope P is the average of the
lattice points of kP divided by k.  Coordinate i of the sequence equals
``Q_i(k) / E(k)`` where E is the counting polynomial of P and Q_i a
polynomial of degree at most dim P, obtained from the counting polynomial of
the rooftop polytope over P in direction e_i: the rooftop's fibers over kP
have ``<u, e_i> + C_i k + 1`` lattice points each, so its count is
``(C_i k + 1) E(k) + (coordinate sums over kP)``.  Subtracting the prism
count ``(C_i k + 1) E(k)`` leaves a polynomial with zero constant term whose
quotient by k is Q_i; both the cancellation and the exactness of that
division are asserted at runtime.

Laurent-expanding Q_i / E at infinity yields the expansion coefficients
a_0, a_1, ...; a_0 is the barycenter and a_1 has the closed form
``(boundary_vol / (2 vol)) * (boundary_barycenter - barycenter)`` in terms of
the lattice-normalized boundary measure, both of which are asserted against
the independently computed geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .ehrhart import ehrhart_polynomial, lattice_point_stats
from .errors import (
    InsufficientSamples,
    InternalInconsistency,
    InvalidInput,
    PreconditionViolation,
    Unsupported,
)
from .exactnum import LaurentSeries, Polynomial, RationalFunction, Vector, laurent_expand, poly_fit
from .linalg import dot
from .polytope import (
    DIMENSION_CAP,
    Polytope,
    classify,
    facet_data,
    hull_from_vertices,
    measure,
    support_value,
)


@dataclass(frozen=True)
class QuantizedBarycenter:
    k: int
    value: Vector


@dataclass(frozen=True)
class BarycenterFunction:
    """Per-coordinate rational functions Q_i / E of the barycenter sequence.

    ``numerators[i]`` has degree at most dim P and ``denominator`` is the
    counting polynomial of P; evaluation at any positive integer reproduces
    the enumerated quantized barycenter.
    """

    numerators: tuple[Polynomial, ...]
    denominator: Polynomial

    def coordinate(self, i: int) -> RationalFunction:
        return RationalFunction.of(self.numerators[i], self.denominator)

    def pairing_numerator(self, direction: Sequence[int]) -> Polynomial:
        """Numerator polynomial of ``<Bc_k, direction>`` over the denominator."""
        total = Polynomial.zero()
        for c, num in zip(direction, self.numerators):
            total = total + num * c
        return total

    def pairing(self, direction: Sequence[int]) -> RationalFunction:
        return RationalFunction.of(self.pairing_numerator(direction), self.denominator)

    def evaluate(self, k: int) -> Vector:
        den = self.denominator(k)
        return tuple(num(k) / den for num in self.numerators)


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Leading terms a_0, a_1, ... of the expansion of the barycenter sequence."""

    terms: tuple[Vector, ...]

    def __getitem__(self, i: int) -> Vector:
        return self.terms[i]

    def __len__(self) -> int:
        return len(self.terms)


def quantized_barycenter(p: Polytope, k: int) -> QuantizedBarycenter:
    """Average of the lattice points of ``k*P``, divided by ``k``."""
    if k < 1:
        raise InvalidInput("quantized barycenters need a positive dilation")
    count, sums = lattice_point_stats(p, k)
    value = tuple(Fraction(s, k * count) for s in sums)
    if not p.contains(value):
        raise InternalInconsistency("quantized barycenter escaped the polytope")
    return QuantizedBarycenter(k, value)


def rooftop(p: Polytope, direction: Sequence[int], q: int) -> Polytope:
    """The lattice polytope ``{(u, h) : u in P, 0 <= h <= <u, direction> + q}``.

    Lives one dimension up; requires ``<u, direction> + q > 0`` on P, i.e.
    ``q`` strictly above the negated support value.  Its facet normals are
    the lifted normals of P together with the floor ``(0, .., 0, 1)`` and the
    roof ``(direction, -1)``.
    """
    if q + support_value(p, direction) <= 0:
        raise PreconditionViolation(
            "rooftop offset too small: the roof must stay strictly above the floor"
        )
    return _rooftop_hull(p, tuple(direction), q)


def _rooftop_hull(p: Polytope, direction: tuple[int, ...], q: int) -> Polytope:
    verts = [v + (0,) for v in p.vertices]
    verts += [v + (dot(v, direction) + q,) for v in p.vertices]
    return hull_from_vertices(verts, dimension_cap=max(DIMENSION_CAP, p.dim + 1))


def coordinate_rooftop_offset(p: Polytope, i: int) -> int:
    """Canonical offset for the coordinate rooftop: the height
    ``u_i + C_i`` must be nonnegative (not necessarily positive) on P."""
    e_i = tuple(1 if j == i else 0 for j in range(p.dim))
    return max(0, -support_value(p, e_i))


@lru_cache(maxsize=None)
def barycenter_function(p: Polytope) -> BarycenterFunction:
    """Exact rational-function form of the quantized barycenter sequence."""
    n = p.dim
    ehr = ehrhart_polynomial(p).poly
    stats = {k: lattice_point_stats(p, k) for k in range(n + 4)}
    numerators = []
    for i in range(n):
        ci = coordinate_rooftop_offset(p, i)

        def roof_count(k: int) -> int:
            cnt, sums = stats[k]
            return (ci * k + 1) * cnt + sums[i]

        roof = poly_fit([(k, roof_count(k)) for k in range(n + 2)])
        for k in (n + 2, n + 3):
            if roof(k) != roof_count(k):
                raise InternalInconsistency(
                    f"rooftop counting polynomial fails validation at k={k}"
                )
        dividend = roof - Polynomial.of([1, ci]) * ehr
        if dividend.coefficient(0) != 0:
            raise InternalInconsistency(
                "rooftop-minus-prism count has a nonzero constant term"
            )
        numerator = dividend.shift_down()
        if numerator.degree > n:
            raise InternalInconsistency("barycenter numerator degree exceeds dim")
        numerators.append(numerator)
    bf = BarycenterFunction(tuple(numerators), ehr)
    for k in range(1, n + 2):
        if bf.evaluate(k) != quantized_barycenter(p, k).value:
            raise InternalInconsistency(
                f"rational form disagrees with enumeration at k={k}"
            )
    return bf


def a1_closed_form(p: Polytope) -> Vector:
    """First-order coefficient from the boundary geometry:
    ``(boundary_vol / (2 vol)) * (boundary_barycenter - barycenter)``."""
    geo = measure(p)
    boundary = facet_data(p)
    factor = boundary.boundary_normalized_volume / (2 * geo.volume)
    return tuple(
        factor * (bb - b) for bb, b in zip(boundary.boundary_barycenter, geo.barycenter)
    )


def asymptotic_coefficients(p: Polytope, order: int | None = None) -> ExpansionCoefficients:
    """Coefficients a_0..a_{order-1} of the barycenter expansion at infinity.

    Defaults to ``2 dim + 2`` terms.  a_0 is checked against the triangulated
    barycenter and a_1 against its boundary-measure closed form.
    """
    if order is None:
        order = 2 * p.dim + 2
    if order < 1:
        raise InvalidInput("expansion order must be at least 1")
    bf = barycenter_function(p)
    per_coord = [laurent_expand(bf.coordinate(i), order) for i in range(p.dim)]
    terms = tuple(
        tuple(series.coefficient(j) for series in per_coord) for j in range(order)
    )
    if terms[0] != measure(p).barycenter:
        raise InternalInconsistency("a_0 differs from the barycenter")
    if order >= 2 and terms[1] != a1_closed_form(p):
        raise InternalInconsistency("a_1 differs from its boundary closed form")
    return ExpansionCoefficients(terms)


def reflexive_polygon_bck(p: Polytope, k: int) -> Vector:
    """Closed-form quantized barycenter of a reflexive polygon:
    the barycenter scaled by ``(k+1)(2k+1)B / (4 + 2k(k+1)B)`` with ``B`` the
    normalized boundary length.  Must agree with direct enumeration."""
    if p.dim != 2 or not classify(p).reflexive:
        raise Unsupported("closed form requires a reflexive polygon")
    if k < 1:
        raise InvalidInput("dilation must be positive")
    b = facet_data(p).boundary_normalized_volume
    ratio = Fraction((k + 1) * (2 * k + 1) * b, 4 + 2 * k * (k + 1) * b)
    value = tuple(ratio * c for c in measure(p).barycenter)
    if value != quantized_barycenter(p, k).value:
        raise InternalInconsistency("polygon closed form disagrees with enumeration")
    return value


@dataclass(frozen=True)
class StabilizationVerdict:
    stabilizes: bool
    value: Vector | None
    witness: tuple[int, int] | None


def stabilization_check(p: Polytope, ks: Sequence[int]) -> StabilizationVerdict:
    """Decide whether the barycenter sequence is constant.

    Agreement at dim+1 distinct dilations forces the sequence to be constant
    for every k (the numerator minus the constant multiple of the
    denominator is a degree-dim polynomial with dim+1 roots); that polynomial
    identity is verified, not assumed.  Disagreement is reported with a
    witnessing pair of dilations.
    """
    ks = list(dict.fromkeys(int(k) for k in ks))
    if any(k < 1 for k in ks):
        raise InvalidInput("dilations must be positive")
    if len(ks) <= p.dim:
        raise InsufficientSamples(
            f"need at least {p.dim + 1} distinct dilations, got {len(ks)}"
        )
    values = {k: quantized_barycenter(p, k).value for k in ks}
    first = values[ks[0]]
    for k in ks[1:]:
        if values[k] != first:
            return StabilizationVerdict(False, None, (ks[0], k))
    bf = barycenter_function(p)
    for coord, num in enumerate(bf.numerators):
        if num != bf.denominator * first[coord]:
            raise InternalInconsistency(
                "constant samples but a nonconstant rational form"
            )
    if first != measure(p).barycenter:
        raise InternalInconsistency("constant value differs from the barycenter")
    return StabilizationVerdict(True, first, None)


def colinearity_check(vectors: Sequence[Sequence[Fraction]]) -> bool:
    """True when all vectors are pairwise parallel through the origin
    (every 2x2 minor of every pair vanishes)."""
    if len(vectors) < 2:
        raise InvalidInput("need at least two vectors")
    for a_idx in range(len(vectors)):
        for b_idx in range(a_idx + 1, len(vectors)):
            a, b = vectors[a_idx], vectors[b_idx]
            for i in range(len(a)):
                for j in range(i + 1, len(a)):
                    if a[i] * b[j] != a[j] * b[i]:
                        return False
    return True


def df_coefficients(p: Polytope, direction: Sequence[int], order: int) -> tuple[Fraction, ...]:
    """Donaldson-Futaki coefficients of the rooftop product configuration in
    the given direction: the Laurent coefficients of ``<Bc_k, direction>``.

    The zeroth and first coefficients are asserted against the pairings of
    the barycenter and of the first-order closed form.
    """
    if order < 1:
        raise InvalidInput("order must be at least 1")
    bf = barycenter_function(p)
    series = laurent_expand(bf.pairing(direction), order)
    if series.coefficient(0) != dot(measure(p).barycenter, direction):
        raise InternalInconsistency("DF_0 differs from the barycenter pairing")
    if order >= 2 and series.coefficient(1) != dot(a1_closed_form(p), direction):
        raise InternalInconsistency("DF_1 differs from the first-order pairing")
    return series.coefficients
