"""Cohomology jump loci of a free complex.

Two independent routes to the same locus are kept side by side:

  * ideal route: the coordinate-saturated jumping ideal of each degree, on
    which containment, codimension and emptiness are decided by Groebner
    computations;
  * pointwise route: specialize every differential at a torsion point and
    read off the cohomology rank by exact linear algebra over the
    cyclotomic-rational field,
        dim H^i = rank(i) - rank d^i(rho) - rank d^(i-1)(rho).

The membership test at a point is the definition of the locus, so the two
routes must agree everywhere; the test suite enforces the agreement on
sampled points, and nothing in this module collapses the redundancy.

Propagation (nested loci in negative degrees, reverse-nested in nonnegative
ones) is checked ideal-theoretically through radical membership; when minor
enumeration hits the size cap the check can fall back to a declared sample
of points, and the result is then labeled "sampled" instead of "exact".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclotomic import field_rank
from .errors import InputError, ResourceError
from .groebner import LaurentIdeal, variety_containment
from .complexes import FreeComplex
from .laurent import TorsionPoint


def jump_locus_ideal(complex_: FreeComplex, degree: int) -> LaurentIdeal:
    """The jumping ideal of the degree; its vanishing locus inside the
    character torus is the degree's jump locus.  The returned ideal carries
    the coordinate-saturated Groebner cache used by all decisions."""
    return complex_.jumping_ideal(degree)


def membership_at_point(
    complex_: FreeComplex, degree: int, point: TorsionPoint
) -> tuple[bool, int]:
    """(rho in V^degree, dim H^degree at rho), by exact specialization."""
    complex_.ensure_valid()
    if point.context != complex_.context:
        raise InputError("ring context mismatch")
    r = complex_.rank(degree)
    if r == 0:
        return False, 0
    out_rank = field_rank(complex_.differential(degree).evaluate(point))
    in_rank = field_rank(complex_.differential(degree - 1).evaluate(point))
    dim = r - out_rank - in_rank
    return dim > 0, dim


def euler_characteristic(complex_: FreeComplex) -> int:
    """Alternating sum of ranks; equals the alternating sum of specialized
    cohomology dimensions at every point."""
    return complex_.euler_characteristic()


def is_whole_space(ideal: LaurentIdeal) -> bool:
    """The locus is the whole torus iff every generator is the zero
    polynomial: a nonzero Laurent polynomial cannot vanish identically."""
    return all(g.is_zero() for g in ideal.generators)


@dataclass
class PropagationResult:
    ok: bool
    provenance: str  # "exact" | "sampled"
    first_violation: tuple[int, int] | None = None
    checked_pairs: list[tuple[int, int, bool]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def propagation_check(
    complex_: FreeComplex,
    sample_points: Sequence[TorsionPoint] | None = None,
) -> PropagationResult:
    """Verify the nesting chain of jump loci: V^i <= V^(i+1) for i < 0 and
    V^i >= V^(i+1) for i >= 0, degree by degree.

    Requires the complex (and its dual) to have no negative-degree
    cohomology; that hypothesis is what makes the chain a theorem, so the
    check refuses to run when the hypothesis is decided false.  Containments
    are decided exactly via radical membership; if the minor-size cap is
    hit (in the hypothesis gate or in an ideal) and sample points were
    supplied, the verdict degrades to pointwise checks on the declared
    sample, labeled "sampled"."""
    complex_.ensure_valid()
    lo, hi = complex_.k_min, complex_.k_max
    pairs = [(i, i + 1) for i in range(lo, 0)] + [(i, i + 1) for i in range(0, hi)]
    try:
        if not complex_.check_assumption():
            raise InputError(
                "propagation requires vanishing negative-degree cohomology of "
                "the complex and its dual"
            )
        ideals = {d: complex_.jumping_ideal(d) for d in range(lo, hi + 1)}
        checked = []
        first = None
        for i, j in pairs:
            if i < 0:
                holds = variety_containment(ideals[i], ideals[j])
            else:
                holds = variety_containment(ideals[j], ideals[i])
            checked.append((i, j, holds))
            if not holds and first is None:
                first = (i, j)
        return PropagationResult(first is None, "exact", first, checked)
    except ResourceError:
        if not sample_points:
            raise
    checked = []
    first = None
    memberships = {
        d: [membership_at_point(complex_, d, p)[0] for p in sample_points]
        for d in range(lo, hi + 1)
    }
    for i, j in pairs:
        inner, outer = (i, j) if i < 0 else (j, i)
        holds = all(
            (not a) or b for a, b in zip(memberships[inner], memberships[outer])
        )
        checked.append((i, j, holds))
        if not holds and first is None:
            first = (i, j)
    return PropagationResult(first is None, "sampled", first, checked)


def radical_equality_pairs(complex_: FreeComplex) -> list[tuple[int, bool]]:
    """For every in-range degree i != 0, whether the Fitting and jumping
    ideals have equal radicals (mutual radical membership of generators)."""
    complex_.ensure_valid()
    out = []
    for i in complex_.degrees():
        if i == 0:
            continue
        fit, jump = complex_.fitting_and_jumping_ideals(i)
        equal = all(jump.radical_contains(g) for g in fit.generators) and all(
            fit.radical_contains(g) for g in jump.generators
        )
        out.append((i, equal))
    return out


def depth_bounds(complex_: FreeComplex) -> list[tuple[int, object, int, bool]]:
    """Per degree: (degree, codim of jumping ideal, required bound |degree|,
    bound holds).  In the ambient ring depth of an ideal equals its
    codimension, so this is the depth lower-bound check."""
    complex_.ensure_valid()
    rows = []
    for i in complex_.degrees():
        codim = complex_.jumping_ideal(i).codimension()
        rows.append((i, codim, abs(i), codim >= abs(i)))
    return rows
