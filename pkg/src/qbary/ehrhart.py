"""Lattice-point counting in dilations and Ehrhart polynomials.

Counting scans the integer bounding box of the dilated polytope, but the
innermost coordinate is never looped over: for each prefix of fixed leading
coordinates the feasible range of the last coordinate is solved from the
facet inequalities directly, and counts and coordinate sums are accumulated
in closed form.  Everything is plain integer arithmetic.

The Ehrhart polynomial is fitted on the minimal sample set k = 0..dim and
then validated twice over: exactly at the held-out points k = dim+1..2dim+1,
and against the classical coefficient identities (leading coefficient =
volume, subleading = half the lattice-normalized boundary volume, constant
term = 1).  Any mismatch raises ``InternalInconsistency`` since counting is
exact and polynomiality is a theorem, not a modeling assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Literal

from .errors import InternalInconsistency, InvalidInput, Unsupported
from .exactnum import Polynomial, poly_fit
from .linalg import IntVec
from .polytope import Polytope, classify, facet_data, measure


@lru_cache(maxsize=None)
def lattice_point_stats(p: Polytope, k: int, strict: bool = False) -> tuple[int, IntVec]:
    """Count and coordinate-wise sum of the lattice points of ``k*P``.

    With ``strict=True`` only interior points (all inequalities strict) are
    collected.  ``k = 0`` gives the single point at the origin.
    """
    if k < 0:
        raise InvalidInput("dilation factor must be nonnegative")
    if k == 0:
        if strict:
            raise InvalidInput("the zero dilation has no interior")
        return 1, (0,) * p.dim
    n = p.dim
    los = [k * min(v[i] for v in p.vertices) for i in range(n)]
    his = [k * max(v[i] for v in p.vertices) for i in range(n)]
    constraints = [(f.normal[:-1], f.normal[-1], -k * f.offset) for f in p.facets]

    count = 0
    sums = [0] * n
    for prefix in product(*(range(lo, hi + 1) for lo, hi in zip(los[:-1], his[:-1]))):
        zlo, zhi = los[-1], his[-1]
        feasible = True
        for head, c, base in constraints:
            t = base - sum(a * x for a, x in zip(head, prefix))
            if c > 0:
                bound = (t // c) + 1 if strict else -((-t) // c)
                if bound > zlo:
                    zlo = bound
            elif c < 0:
                bound = -((-t) // c) - 1 if strict else t // c
                if bound < zhi:
                    zhi = bound
            else:
                if (t >= 0) if strict else (t > 0):
                    feasible = False
                    break
        if not feasible or zlo > zhi:
            continue
        m = zhi - zlo + 1
        count += m
        for i, x in enumerate(prefix):
            sums[i] += x * m
        sums[n - 1] += (zlo + zhi) * m // 2
    return count, tuple(sums)


def count_points(p: Polytope, k: int) -> int:
    """Number of lattice points of ``k*P`` for ``k >= 0``."""
    if k < 0:
        raise InvalidInput("negative dilation: use interior_count via reciprocity")
    return lattice_point_stats(p, k)[0]


def interior_count(p: Polytope, k: int) -> int:
    """Number of lattice points strictly inside ``k*P`` for ``k >= 1``."""
    if k < 1:
        raise InvalidInput("interior counts need a positive dilation")
    return lattice_point_stats(p, k, strict=True)[0]


@dataclass(frozen=True)
class EhrhartPolynomial:
    poly: Polynomial
    source: Literal["fitted", "reflexive_closed_form"]


@lru_cache(maxsize=None)
def ehrhart_polynomial(p: Polytope) -> EhrhartPolynomial:
    """Fitted counting polynomial with held-out and coefficient validation."""
    n = p.dim
    fit = poly_fit([(k, count_points(p, k)) for k in range(n + 1)])
    for k in range(n + 1, 2 * n + 2):
        if fit(k) != count_points(p, k):
            raise InternalInconsistency(
                f"counting polynomial fails held-out validation at k={k}"
            )
    if fit.coefficient(n) != measure(p).volume:
        raise InternalInconsistency("leading coefficient is not the volume")
    if fit.coefficient(n - 1) != facet_data(p).boundary_normalized_volume / 2:
        raise InternalInconsistency(
            "subleading coefficient is not half the normalized boundary volume"
        )
    if fit.coefficient(0) != 1:
        raise InternalInconsistency("constant term is not 1")
    return EhrhartPolynomial(fit, "fitted")


@dataclass(frozen=True)
class ReciprocityEntry:
    k: int
    general_ok: bool
    reflexive_ok: bool | None


@dataclass(frozen=True)
class ReciprocityReport:
    entries: tuple[ReciprocityEntry, ...]

    @property
    def all_passed(self) -> bool:
        return all(
            e.general_ok and e.reflexive_ok is not False for e in self.entries
        )


def reciprocity_check(p: Polytope, k_max: int) -> ReciprocityReport:
    """Evaluate the counting polynomial at negative integers against interior
    counts, and for reflexive polytopes against the shifted positive values.

    Failures are reported per dilation, never raised.
    """
    if k_max < 1:
        raise InvalidInput("k_max must be at least 1")
    ehr = ehrhart_polynomial(p).poly
    sign = (-1) ** p.dim
    reflexive = classify(p).reflexive
    entries = []
    for k in range(1, k_max + 1):
        at_neg = ehr(-k)
        general_ok = at_neg == sign * interior_count(p, k)
        reflexive_ok = (at_neg == sign * count_points(p, k - 1)) if reflexive else None
        entries.append(ReciprocityEntry(k, general_ok, reflexive_ok))
    return ReciprocityReport(tuple(entries))


def reflexive_closed_form(p: Polytope) -> EhrhartPolynomial:
    """Closed-form counting polynomial of a reflexive polytope, dim 2 or 3.

    In dimension 2 the polynomial is ``V k^2 + V k + 1`` and in dimension 3
    ``V k^3 + (3V/2) k^2 + (V/2 + 2) k + 1`` with ``V`` the volume; the result
    must coincide with the fitted polynomial.
    """
    if not classify(p).reflexive:
        raise Unsupported("closed form requires a reflexive polytope")
    vol = measure(p).volume
    if p.dim == 2:
        closed = Polynomial.of([1, vol, vol])
    elif p.dim == 3:
        closed = Polynomial.of([1, vol / 2 + 2, Fraction(3, 2) * vol, vol])
    else:
        raise Unsupported(f"no closed form implemented for dimension {p.dim}")
    if closed != ehrhart_polynomial(p).poly:
        raise InternalInconsistency("reflexive closed form disagrees with the fit")
    return EhrhartPolynomial(closed, "reflexive_closed_form")
