"""Virtual polytopes, mixed volumes, divisor polytopes, and the
Bernoulli-number coefficient formulas available for Delzant data.

A virtual polytope is a formal integer combination of (possibly degenerate)
lattice bodies; two combinations are identified when moving all negative
terms to the other side yields equal Minkowski sums (the Grothendieck
cancellation law).  Mixed volumes extend multilinearly to such combinations;
on actual bodies they are evaluated by inclusion-exclusion over Minkowski
sums of sub-multisets, with lower-dimensional sums contributing volume zero.

For Delzant data the counting polynomial's coefficients have a closed form:

    a_j = sum over (l_1..l_d), sum l_i = n - j, of
          n! B(l_1)..B(l_d) / (j! l_1!..l_d!) * V(P, j; P_1, l_1; ..; P_d, l_d)

with B the Bernoulli numbers normalized by B_1 = +1/2 and P_i the virtual
polytope of the i-th facet divisor.  ``hrr_coefficients`` evaluates this and
insists it reproduce the fitted counting polynomial exactly.  The analogous
degree-(n+1) formula on the rooftop data gives the numerator coefficients of
``<Bc_k, v>``; ``rooftop_coefficients`` computes those by the counting route
(with an asserted independence of the rooftop offset) and cross-checks the
mixed-volume formula whenever the rooftop is itself Delzant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .ehrhart import ehrhart_polynomial, lattice_point_stats
from .errors import (
    AmplenessShiftFailure,
    InternalInconsistency,
    InvalidInput,
    PreconditionViolation,
)
from .exactnum import Polynomial, bernoulli, poly_fit
from .expansion import rooftop
from .hull import volume_and_barycenter
from .lattice import primitive
from .linalg import IntVec, dot, rank, vec_add, vec_sub
from .polytope import (
    Body,
    Halfspace,
    Polytope,
    as_body,
    body_from_points,
    classify,
    dilate,
    measure,
    polytope_from_halfspaces,
    support_value,
)


@dataclass(frozen=True)
class VirtualPolytope:
    """Formal integer combination of lattice bodies in a common dimension."""

    dim: int
    terms: tuple[tuple[int, Body], ...]

    @staticmethod
    def of(obj: "Polytope | Body | VirtualPolytope") -> "VirtualPolytope":
        if isinstance(obj, VirtualPolytope):
            return obj
        b = as_body(obj)
        return VirtualPolytope(b.dim, ((1, b),))

    @staticmethod
    def combine(parts: Iterable[tuple[int, "Polytope | Body"]], dim: int) -> "VirtualPolytope":
        acc: dict[Body, int] = {}
        for coeff, obj in parts:
            b = as_body(obj)
            if b.dim != dim:
                raise InvalidInput("virtual terms of mixed ambient dimension")
            acc[b] = acc.get(b, 0) + coeff
        terms = tuple(
            (c, b) for b, c in sorted(acc.items(), key=lambda kv: kv[0].vertices) if c != 0
        )
        return VirtualPolytope(dim, terms)

    def __add__(self, other: "VirtualPolytope") -> "VirtualPolytope":
        if self.dim != other.dim:
            raise InvalidInput("virtual sum across dimensions")
        return VirtualPolytope.combine(self.terms + other.terms, self.dim)

    def scale(self, factor: int) -> "VirtualPolytope":
        return VirtualPolytope.combine(
            tuple((factor * c, b) for c, b in self.terms), self.dim
        )

    def __sub__(self, other: "VirtualPolytope") -> "VirtualPolytope":
        return self + other.scale(-1)

    def equivalent(self, other: "VirtualPolytope") -> bool:
        """Grothendieck relation: equality after clearing negative terms."""
        if self.dim != other.dim:
            return False
        left: list[Body] = []
        right: list[Body] = []
        for c, b in self.terms:
            (left if c > 0 else right).extend([b] * abs(c))
        for c, b in other.terms:
            (right if c > 0 else left).extend([b] * abs(c))
        return _sum_bodies(tuple(left), self.dim) == _sum_bodies(tuple(right), self.dim)


def _sum_bodies(bodies: tuple[Body, ...], dim: int) -> Body:
    total = Body(dim, ((0,) * dim,))
    for b in sorted(bodies, key=lambda x: x.vertices):
        pts = {vec_add(u, v) for u in total.vertices for v in b.vertices}
        total = body_from_points(pts)
    return total


@lru_cache(maxsize=None)
def _volume_of_sum(bodies: tuple[Body, ...]) -> Fraction:
    dim = bodies[0].dim
    total = _sum_bodies(bodies, dim)
    origin = total.vertices[0]
    if rank([vec_sub(p, origin) for p in total.vertices]) < dim:
        return Fraction(0)
    return volume_and_barycenter(total.vertices)[0]


@lru_cache(maxsize=None)
def _mixed_volume_bodies(items: tuple[tuple[Body, int], ...]) -> Fraction:
    """n! V(K_1, m_1; ..; K_r, m_r) by inclusion-exclusion, divided by n!.

    Uses dilations for repeated summands: choosing s_i copies of K_i
    contributes ``C(m_i, s_i)`` subsets whose Minkowski sum is ``s_i K_i``.
    """
    n = sum(m for _, m in items)
    total = Fraction(0)
    choices = [range(m + 1) for _, m in items]

    def rec(idx: int, chosen: list[int]) -> None:
        nonlocal total
        if idx == len(items):
            s = sum(chosen)
            if s == 0:
                return
            parts = tuple(
                as_body(dilate(body, c))
                for (body, _), c in zip(items, chosen)
                if c > 0
            )
            weight = 1
            for (_, m), c in zip(items, chosen):
                weight *= comb(m, c)
            total += (-1) ** (n - s) * weight * _volume_of_sum(tuple(sorted(parts, key=lambda b: b.vertices)))
            return
        for c in choices[idx]:
            rec(idx + 1, chosen + [c])

    rec(0, [])
    return total / factorial(n)


def mixed_volume(args: Sequence[tuple["VirtualPolytope | Polytope | Body", int]]) -> Fraction:
    """Mixed volume of virtual polytopes with multiplicities summing to dim.

    Normalized so that ``V(P, dim) = Vol(P)``; multilinear in each slot.
    """
    if not args:
        raise InvalidInput("mixed volume needs at least one argument")
    virtuals = [(VirtualPolytope.of(v), int(m)) for v, m in args]
    dim = virtuals[0][0].dim
    if any(v.dim != dim for v, _ in virtuals):
        raise InvalidInput("mixed volume across ambient dimensions")
    if any(m < 1 for _, m in virtuals):
        raise InvalidInput("multiplicities must be positive")
    if sum(m for _, m in virtuals) != dim:
        raise InvalidInput(f"multiplicities must sum to the dimension {dim}")

    total = Fraction(0)

    def rec(idx: int, acc_coeff: int, acc: dict[Body, int]) -> None:
        nonlocal total
        if idx == len(virtuals):
            items = tuple(sorted(acc.items(), key=lambda kv: kv[0].vertices))
            total += acc_coeff * _mixed_volume_bodies(items)
            return
        vp, mult = virtuals[idx]
        if not vp.terms:
            return  # the zero virtual polytope kills the product
        for assignment, weight in _term_assignments(vp.terms, mult):
            nxt = dict(acc)
            for b, m in assignment.items():
                nxt[b] = nxt.get(b, 0) + m
            rec(idx + 1, acc_coeff * weight, nxt)

    rec(0, 1, {})
    return total


def _term_assignments(terms: tuple[tuple[int, Body], ...], mult: int):
    """All ways to distribute ``mult`` identical slots over the terms.

    Yields ``(body -> multiplicity, weight)`` where the weight is the
    multinomial count times the product of term coefficients.
    """
    out: list[tuple[dict[Body, int], int]] = []

    def rec(idx: int, remaining: int, weight: int, chosen: dict[Body, int]) -> None:
        if idx == len(terms) - 1:
            c, b = terms[idx]
            w = weight * c**remaining
            if remaining:
                chosen = {**chosen, b: chosen.get(b, 0) + remaining}
            out.append((chosen, w))
            return
        c, b = terms[idx]
        for take in range(remaining + 1):
            w = weight * comb(remaining, take) * c**take
            nxt = {**chosen, b: chosen.get(b, 0) + take} if take else chosen
            rec(idx + 1, remaining - take, w, nxt)

    rec(0, mult, 1, {})
    return out


# ---------------------------------------------------------------------------
# toric data

@dataclass(frozen=True)
class ToricData:
    """Irredundant ray/offset data and its polytope, with smoothness flags."""

    rays: tuple[IntVec, ...]
    offsets: tuple[int, ...]
    polytope: Polytope
    reflexive: bool
    delzant: bool


def toric_data(rays: Sequence[Sequence[int]], offsets: Sequence[int]) -> ToricData:
    prims = tuple(primitive(tuple(int(x) for x in r)) for r in rays)
    offs = tuple(int(b) for b in offsets)
    if len(set(prims)) != len(prims):
        raise InvalidInput("duplicate rays")
    p = polytope_from_halfspaces(prims, offs)
    expected = {Halfspace(r, b) for r, b in zip(prims, offs)}
    if set(p.facets) != expected:
        raise InvalidInput("ray data contains redundant or non-facet inequalities")
    cls = classify(p)
    return ToricData(prims, offs, p, cls.reflexive, cls.delzant)


def toric_from_polytope(p: Polytope) -> ToricData:
    cls = classify(p)
    return ToricData(
        tuple(f.normal for f in p.facets),
        tuple(f.offset for f in p.facets),
        p,
        cls.reflexive,
        cls.delzant,
    )


@dataclass(frozen=True)
class RooftopFan:
    """Ray data of the one-dimension-up fan attached to a direction vector."""

    rays: tuple[IntVec, ...]
    q: int


def rooftop_fan(t: ToricData, direction: Sequence[int]) -> RooftopFan:
    """Rays ``(v_i, 0), (0,..,0,1), (direction, -1)`` with the canonical
    offset ``q = 1 - support_value(P, direction)``."""
    v = tuple(int(x) for x in direction)
    rays = tuple(r + (0,) for r in t.rays)
    rays += ((0,) * t.polytope.dim + (1,), v + (-1,))
    return RooftopFan(rays, 1 - support_value(t.polytope, v))


# ---------------------------------------------------------------------------
# divisor polytopes

AMPLE_SHIFT_CAP = 16


def _exact_facet_polytope(rays: tuple[IntVec, ...], offsets: Sequence[int]) -> Polytope | None:
    """The polytope of the given data when every inequality is a facet with
    exactly the given offset; None otherwise."""
    try:
        p = polytope_from_halfspaces(rays, offsets)
    except InvalidInput:
        return None
    if set(p.facets) == {Halfspace(r, int(b)) for r, b in zip(rays, offsets)}:
        return p
    return None


@lru_cache(maxsize=None)
def divisor_polytope(t: ToricData, coeffs: tuple[int, ...]) -> VirtualPolytope:
    """Virtual polytope of the divisor with the given ray coefficients.

    When the data (rays, coeffs) defines a polytope whose facets are exactly
    the rays the divisor is ample and the polytope itself is returned as a
    single term.  Otherwise the minimal shift ``m >= 1`` making
    (rays, m*offsets + coeffs) pass that test represents the divisor as the
    formal difference of two ample polytopes.  The zero divisor is the
    origin (the Minkowski-neutral body).
    """
    if not t.delzant:
        raise PreconditionViolation("divisor polytopes require Delzant data")
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != len(t.rays):
        raise InvalidInput("one coefficient per ray required")
    dim = t.polytope.dim
    if all(c == 0 for c in coeffs):
        return VirtualPolytope(dim, ((1, Body(dim, ((0,) * dim,))),))
    direct = _exact_facet_polytope(t.rays, coeffs)
    if direct is not None:
        return VirtualPolytope.of(direct)
    for m in range(1, AMPLE_SHIFT_CAP + 1):
        shifted = _exact_facet_polytope(
            t.rays, tuple(m * b + c for b, c in zip(t.offsets, coeffs))
        )
        if shifted is None:
            continue
        base = _exact_facet_polytope(t.rays, tuple(m * b for b in t.offsets))
        if base is None:
            raise InternalInconsistency("dilation of the polarization lost a facet")
        return VirtualPolytope.combine(((1, shifted), (-1, base)), dim)
    raise AmplenessShiftFailure(
        f"no ample shift up to {AMPLE_SHIFT_CAP} represents the divisor"
    )


# ---------------------------------------------------------------------------
# coefficient formulas

def _compositions(total: int, slots: int):
    """Weak compositions of ``total`` skipping parts with a vanishing
    Bernoulli factor (odd parts >= 3)."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        if first >= 3 and first % 2 == 1:
            continue
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def hrr_coefficients(t: ToricData) -> tuple[Fraction, ...]:
    """Counting-polynomial coefficients a_0..a_n from the Bernoulli/mixed-
    volume formula; asserted equal to the fitted counting polynomial."""
    if not t.delzant:
        raise PreconditionViolation("the coefficient formula requires Delzant data")
    p = t.polytope
    n = p.dim
    d = len(t.rays)
    unit = [divisor_polytope(t, tuple(1 if j == i else 0 for j in range(d))) for i in range(d)]
    coeffs: list[Fraction] = []
    for j in range(n + 1):
        total = Fraction(0)
        for comp in _compositions(n - j, d):
            bprod = Fraction(1)
            fact = factorial(j)
            for li in comp:
                bprod *= bernoulli(li)
                fact *= factorial(li)
            if bprod == 0:
                continue
            args: list[tuple[VirtualPolytope | Polytope, int]] = []
            if j > 0:
                args.append((p, j))
            args += [(unit[i], li) for i, li in enumerate(comp) if li > 0]
            total += Fraction(factorial(n)) * bprod / fact * mixed_volume(args)
        coeffs.append(total)

    fitted = ehrhart_polynomial(p).poly
    if Polynomial.of(coeffs) != fitted:
        raise InternalInconsistency(
            "Bernoulli/mixed-volume coefficients disagree with the counting fit"
        )
    anticanonical = divisor_polytope(t, (1,) * d)
    if coeffs[n] != measure(p).volume:
        raise InternalInconsistency("leading coefficient is not the volume")
    sub_args: list[tuple[VirtualPolytope | Polytope, int]] = []
    if n - 1 > 0:
        sub_args.append((p, n - 1))
    sub_args.append((anticanonical, 1))
    if coeffs[n - 1] != Fraction(n, 2) * mixed_volume(sub_args):
        raise InternalInconsistency(
            "subleading coefficient disagrees with the anticanonical pairing"
        )
    return tuple(coeffs)


@dataclass(frozen=True)
class RooftopCoefficients:
    """Numerator coefficients c'_1..c'_{n+1} of ``<Bc_k, v>`` over E(k)."""

    values: tuple[Fraction, ...]
    q: int
    formula_available: bool
    formula_values: tuple[Fraction, ...] | None


def rooftop_coefficients(t: ToricData, direction: Sequence[int], cross_check: bool | None = None) -> RooftopCoefficients:
    """c'_j from the rooftop counting route, independent of the offset.

    Fits the rooftop counting polynomial at two offsets q and q+1 and checks
    the recovered c'_j agree.  When the rooftop polytope is itself Delzant
    (and ``cross_check`` is not disabled) the degree-(n+1) Bernoulli/mixed-
    volume formula is evaluated as well and must coincide.
    """
    if not t.delzant:
        raise PreconditionViolation("rooftop coefficients require Delzant data")
    p = t.polytope
    v = tuple(int(x) for x in direction)
    n = p.dim
    q0 = 1 - support_value(p, v)
    first = _cprime_by_counting(p, v, q0)
    second = _cprime_by_counting(p, v, q0 + 1)
    if first != second:
        raise InternalInconsistency("rooftop coefficients depend on the offset")

    formula_values = None
    formula_available = False
    if cross_check is None:
        cross_check = True
    if cross_check:
        roof = rooftop(p, v, q0)
        if classify(roof).delzant:
            formula_available = True
            formula_values = _cprime_by_formula(t, v, q0, roof)
            if formula_values != first:
                raise InternalInconsistency(
                    "mixed-volume rooftop coefficients disagree with counting"
                )
    return RooftopCoefficients(first, q0, formula_available, formula_values)


def _cprime_by_counting(p: Polytope, v: tuple[int, ...], q: int) -> tuple[Fraction, ...]:
    n = p.dim
    a = ehrhart_polynomial(p).poly

    def roof_count(k: int) -> int:
        cnt, sums = lattice_point_stats(p, k)
        return (q * k + 1) * cnt + dot(sums, v)

    fit = poly_fit([(k, roof_count(k)) for k in range(n + 2)])
    for k in (n + 2, n + 3):
        if fit(k) != roof_count(k):
            raise InternalInconsistency("rooftop counting fit fails validation")
    cprime = [
        fit.coefficient(j) - q * a.coefficient(j - 1) - a.coefficient(j)
        for j in range(n + 2)
    ]
    if cprime[0] != 0:
        raise InternalInconsistency("c'_0 must vanish")
    return tuple(cprime[1:])


def _cprime_by_formula(t: ToricData, v: tuple[int, ...], q: int, roof: Polytope) -> tuple[Fraction, ...]:
    n = t.polytope.dim
    d = len(t.rays)
    lifted_rays = tuple(r + (0,) for r in t.rays) + ((0,) * n + (1,), v + (-1,))
    lifted_offsets = t.offsets + (0, q)
    tbar = toric_data(lifted_rays, lifted_offsets)
    if tbar.polytope != roof:
        raise InternalInconsistency("rooftop fan data disagrees with the hull")
    dtot = d + 2
    side = [
        divisor_polytope(tbar, tuple(1 if j == i else 0 for j in range(dtot)))
        for i in range(d)
    ]
    roof_divisor = divisor_polytope(
        tbar, tuple(1 if j == dtot - 1 else 0 for j in range(dtot))
    )
    relative = VirtualPolytope.of(roof) + roof_divisor.scale(-q)
    out = []
    for j in range(1, n + 2):
        total = Fraction(0)
        for comp in _compositions(n + 1 - j, d):
            bprod = Fraction(1)
            fact = factorial(j)
            for li in comp:
                bprod *= bernoulli(li)
                fact *= factorial(li)
            if bprod == 0:
                continue
            args: list[tuple[VirtualPolytope, int]] = [(relative, j)]
            args += [(side[i], li) for i, li in enumerate(comp) if li > 0]
            total += Fraction(factorial(n + 1)) * bprod / fact * mixed_volume(args)
        out.append(total)
    return tuple(out)
