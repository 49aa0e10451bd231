"""Deterministic sampling of torsion points for spot checks.

All sampling is driven by an explicit random.Random instance seeded by the
caller, so reports built from sampled verdicts are reproducible
byte-for-byte given the seed.  Samples mix plain rational points (cheap
exact arithmetic), low-order torsion points (angles with denominator
dividing 12), and points lying on declared loci, since random points almost
never hit a proper closed subset.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .lattices import LinearComponent, LinearUnion, subtorus_point
from .laurent import RingContext, TorsionPoint

_ANGLES = [
    Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3),
    Fraction(1, 4), Fraction(3, 4), Fraction(1, 6), Fraction(5, 6),
    Fraction(1, 12), Fraction(5, 12), Fraction(7, 12), Fraction(11, 12),
]


def _random_radial(rng: random.Random) -> Fraction:
    num = rng.choice([n for n in range(-12, 13) if n])
    den = rng.randint(1, 12)
    return Fraction(num, den)


def random_rational_point(context: RingContext, rng: random.Random) -> TorsionPoint:
    return context.rational_point([_random_radial(rng) for _ in range(context.num_vars)])


def random_torsion_point(context: RingContext, rng: random.Random) -> TorsionPoint:
    coords = [
        (_random_radial(rng), rng.choice(_ANGLES)) for _ in range(context.num_vars)
    ]
    return TorsionPoint(context, coords)


def component_points(
    component: LinearComponent, rng: random.Random, count: int
) -> list[TorsionPoint]:
    """Points guaranteed to lie on the component: the translate itself plus
    random rational points of the subtorus through it."""
    ctx = component.context
    free_rank = ctx.num_vars - component.rank
    pts = [component.translate]
    for _ in range(max(0, count - 1)):
        weights = [abs(_random_radial(rng)) for _ in range(free_rank)]
        pts.append(subtorus_point(component, weights))
    return pts


def sample_points(
    context: RingContext,
    rng: random.Random,
    count: int,
    loci: list[LinearUnion] | None = None,
    torsion_share: float = 0.25,
) -> list[TorsionPoint]:
    """A deterministic sample of at least ``count`` distinct points: points
    on every declared component first, then random rational and low-order
    torsion points, with a deterministic integer tail in the unlikely event
    the random pool repeats too often."""
    seen: set[TorsionPoint] = set()
    unique: list[TorsionPoint] = []

    def push(p: TorsionPoint):
        if p not in seen:
            seen.add(p)
            unique.append(p)

    push(context.identity_point())
    if loci:
        for union in loci:
            for comp in union.components:
                for p in component_points(comp, rng, 3):
                    push(p)
    attempts = 0
    while len(unique) < count and attempts < 60 * count:
        attempts += 1
        if rng.random() < torsion_share:
            push(random_torsion_point(context, rng))
        else:
            push(random_rational_point(context, rng))
    filler = 2
    while len(unique) < count:
        push(context.rational_point([filler + i for i in range(context.num_vars)]))
        filler += 1
    return unique
