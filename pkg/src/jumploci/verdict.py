"""The perversity verdict engine over declared linear loci.

A LociProfile assigns to each degree a finite union of translated subtori
(absent degrees mean the empty locus).  The verdict tests the two half
conditions

    (a) abelian codimension of V^i >= i for every i >= 0, and
    (b) semi-abelian codimension of V^i >= -i for every i <= 0,

and reports perverse / upper-only / lower-only / neither accordingly, along
with the auxiliary consequences that hold for genuinely perverse objects:
the propagation chain of the loci, the support interval
[-m-g, g], the survival interval of each degree-zero component, and the
signed Euler characteristic clause (chi >= 0, with chi = 0 exactly when the
degree-zero locus is a proper subset).

The verdict consumes declared loci rather than attempting to decompose
computed ideals: linearity of jump loci is a structural fact about the
geometric situation the inputs are drawn from, not something the checker
can certify for an arbitrary complex.  When a profile is accompanied by its
source complex, declared and computed memberships are spot-checked on a
seeded sample of torsion points and any mismatch rejects the profile with a
witness point.

Torus (g = 0) and abelian (m = 0) specializations are re-derived through
independent code paths (plain lattice ranks, no shared codimension
helpers) so the general verdict can be cross-validated against them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .complexes import FreeComplex
from .errors import InputError
from .lattices import CodimStats, LinearComponent, LinearUnion
from .laurent import RingContext, TorsionPoint
from .loci import membership_at_point
from .sampling import sample_points


class LociProfile:
    """Per-degree declared loci, with an optional source complex and an
    optional Euler characteristic."""

    __slots__ = ("context", "loci", "source", "euler")

    def __init__(
        self,
        context: RingContext,
        loci: Mapping[int, LinearUnion],
        source: FreeComplex | None = None,
        euler: int | None = None,
    ):
        clean = {}
        for deg, union in loci.items():
            if union.context != context:
                raise InputError("ring context mismatch")
            if not union.is_empty():
                clean[int(deg)] = union
        if source is not None:
            if source.context != context:
                raise InputError("ring context mismatch")
            if euler is None:
                euler = source.euler_characteristic()
        self.context = context
        self.loci = clean
        self.source = source
        self.euler = euler

    def locus(self, degree: int) -> LinearUnion:
        return self.loci.get(degree, LinearUnion.empty(self.context))

    def degrees(self) -> list[int]:
        return sorted(self.loci)

    def nonempty_span(self) -> tuple[int, int] | None:
        degs = self.degrees()
        if not degs:
            return None
        return degs[0], degs[-1]

    def shift(self, s: int) -> "LociProfile":
        """Profile of the complex moved s steps right: degree i holds what
        degree i - s held."""
        return LociProfile(
            self.context,
            {deg + s: union for deg, union in self.loci.items()},
            source=None,
            euler=self.euler if s % 2 == 0 else (-self.euler if self.euler is not None else None),
        )

    def with_source(self, source: FreeComplex) -> "LociProfile":
        return LociProfile(self.context, self.loci, source=source, euler=self.euler)

    def union_with(self, other: "LociProfile") -> "LociProfile":
        if other.context != self.context:
            raise InputError("ring context mismatch")
        degs = set(self.loci) | set(other.loci)
        merged = {d: self.locus(d).union_with(other.locus(d)) for d in degs}
        euler = (
            self.euler + other.euler
            if self.euler is not None and other.euler is not None
            else None
        )
        return LociProfile(self.context, merged, euler=euler)


@dataclass
class ConditionRow:
    degree: int
    condition: str  # "abelian-codim" | "semiabelian-codim"
    required: int
    actual: object  # int or math.inf
    ok: bool


@dataclass
class PerversityReport:
    verdict: str  # "perverse" | "upper-only" | "lower-only" | "neither"
    upper_rows: list[ConditionRow]
    lower_rows: list[ConditionRow]
    violations: list[ConditionRow]
    propagation_ok: bool
    propagation_first_violation: tuple[int, int] | None
    support_ok: bool
    support_offenders: list[int]
    euler_status: str  # "pass" | "fail" | "skipped (euler unknown)"
    euler_detail: str
    provenance: dict[str, str] = field(default_factory=dict)

    def is_perverse(self) -> bool:
        return self.verdict == "perverse"


def check_upper(profile: LociProfile) -> list[ConditionRow]:
    """Condition (a): abelian codimension at least i in each degree i >= 0."""
    rows = []
    top = max([d for d in profile.degrees() if d >= 0], default=-1)
    for i in range(0, top + 1):
        stats = profile.locus(i).codim_stats()
        rows.append(
            ConditionRow(i, "abelian-codim", i, stats.codim_a, stats.codim_a >= i)
        )
    return rows


def check_lower(profile: LociProfile) -> list[ConditionRow]:
    """Condition (b): semi-abelian codimension at least -i in each i <= 0."""
    rows = []
    bottom = min([d for d in profile.degrees() if d <= 0], default=1)
    for i in range(bottom, 1):
        stats = profile.locus(i).codim_stats()
        rows.append(
            ConditionRow(i, "semiabelian-codim", -i, stats.codim_sa, stats.codim_sa >= -i)
        )
    return rows


def profile_propagation(profile: LociProfile):
    """Nesting chain on declared loci via exhaustive component containment."""
    span = profile.nonempty_span()
    if span is None:
        return True, None
    lo = min(span[0], 0)
    hi = max(span[1], 0)
    first = None
    for i in range(lo, 0):
        if not profile.locus(i + 1).contains(profile.locus(i)):
            first = (i, i + 1)
            break
    if first is None:
        for i in range(0, hi):
            if not profile.locus(i).contains(profile.locus(i + 1)):
                first = (i, i + 1)
                break
    return first is None, first


def support_interval_check(profile: LociProfile):
    """Loci must vanish outside [-m-g, g]."""
    m, g = profile.context.torus_rank, profile.context.abelian_rank
    offenders = [d for d in profile.degrees() if not (-m - g <= d <= g)]
    return not offenders, offenders


def spot_check_profile(
    profile: LociProfile,
    samples: int = 40,
    seed: int = 0,
) -> dict[str, str]:
    """Compare declared membership with computed membership at sampled
    points; raises InputError with a witness on the first disagreement."""
    source = profile.source
    if source is None:
        raise InputError("spot check requires a source complex")
    rng = random.Random(seed)
    pts = sample_points(
        profile.context, rng, samples, loci=list(profile.loci.values())
    )
    lo = min([source.k_min] + profile.degrees())
    hi = max([source.k_max] + profile.degrees())
    for degree in range(lo - 1, hi + 2):
        declared_union = profile.locus(degree)
        for p in pts:
            declared = declared_union.contains_point(p)
            computed, dim = membership_at_point(source, degree, p)
            if declared != computed:
                raise InputError(
                    f"declared locus disagrees with the complex at degree "
                    f"{degree}, witness point {p!r}: declared={declared}, "
                    f"computed={computed} (dim H = {dim})"
                )
    return {"spot_check": f"sampled (seed={seed}, points={len(pts)})"}


def perversity_verdict(
    profile: LociProfile,
    samples: int = 40,
    seed: int = 0,
) -> PerversityReport:
    """Aggregate the two half conditions plus the auxiliary consequences."""
    provenance = {"conditions": "exact", "propagation": "exact", "support": "exact"}
    if profile.source is not None:
        provenance.update(spot_check_profile(profile, samples=samples, seed=seed))

    upper_rows = check_upper(profile)
    lower_rows = check_lower(profile)
    upper_ok = all(r.ok for r in upper_rows)
    lower_ok = all(r.ok for r in lower_rows)
    if upper_ok and lower_ok:
        verdict = "perverse"
    elif upper_ok:
        verdict = "upper-only"
    elif lower_ok:
        verdict = "lower-only"
    else:
        verdict = "neither"
    violations = [r for r in upper_rows + lower_rows if not r.ok]

    prop_ok, prop_first = profile_propagation(profile)
    support_ok, offenders = support_interval_check(profile)

    if profile.euler is None:
        euler_status = "skipped (euler unknown)"
        euler_detail = "no Euler characteristic on the profile"
    else:
        chi = profile.euler
        whole = profile.locus(0).is_whole_space()
        nonneg = chi >= 0
        equivalence = (chi == 0) == (not whole)
        euler_status = "pass" if (nonneg and equivalence) else "fail"
        euler_detail = (
            f"chi={chi}, degree-0 locus {'is' if whole else 'is not'} the whole space"
        )

    return PerversityReport(
        verdict=verdict,
        upper_rows=upper_rows,
        lower_rows=lower_rows,
        violations=violations,
        propagation_ok=prop_ok,
        propagation_first_violation=prop_first,
        support_ok=support_ok,
        support_offenders=offenders,
        euler_status=euler_status,
        euler_detail=euler_detail,
        provenance=provenance,
    )


@dataclass
class SurvivalResult:
    kernel_torus_rank: int  # m''
    kernel_abelian_rank: int  # g''
    predicted: tuple[int, int]  # [-m''-g'', g'']
    observed: list[int]
    matches: bool


def survival_interval(profile: LociProfile, component: LinearComponent) -> SurvivalResult:
    """Predicted degree interval in which a degree-zero component persists,
    from its annihilator lattice, compared against the observed degrees."""
    if not profile.locus(0).has_component(component):
        raise InputError("component is not a component of the degree-0 locus")
    d, g2, _ = component.codims()
    m2 = d - 2 * g2
    predicted = (-m2 - g2, g2)
    observed = [deg for deg in profile.degrees() if profile.locus(deg).has_component(component)]
    expected = list(range(predicted[0], predicted[1] + 1))
    return SurvivalResult(m2, g2, predicted, observed, observed == expected)


# -- independent specializations (cross-validation code paths) ----------------


def torus_specialization_verdict(profile: LociProfile) -> bool:
    """Pure-torus re-derivation: loci empty in positive degrees and plain
    codimension (annihilator rank) at least -i in nonpositive degrees.
    Deliberately avoids the codim_stats helpers."""
    if profile.context.abelian_rank != 0:
        raise InputError("torus specialization applies to g = 0 profiles only")
    for deg, union in profile.loci.items():
        if deg > 0 and union.components:
            return False
        if deg <= 0:
            plain = min((c.rank for c in union.components), default=math.inf)
            if plain < -deg:
                return False
    return True


def abelian_specialization_verdict(profile: LociProfile) -> bool:
    """Pure-abelian re-derivation of the codimension bound: plain
    codimension of V^i at least |2i| for every i."""
    if profile.context.torus_rank != 0:
        raise InputError("abelian specialization applies to m = 0 profiles only")
    for deg, union in profile.loci.items():
        plain = min((c.rank for c in union.components), default=math.inf)
        if plain < 2 * abs(deg):
            return False
    return True
