"""Constructors for test objects with known loci and expected verdicts.

The base object is the Koszul complex on (t_1 - 1, ..., t_m - 1) placed in
degrees [-m, 0]: the module-side model of the constant rank-one object on
an m-torus, whose jump loci are the identity point in every degree of
[-m, 0] and empty elsewhere.  Derived fixtures transform both the complex
and its declared loci in lockstep:

  * twist by nonzero rationals    -> loci translate by the inverse point;
  * external tensor               -> loci combine by the Kunneth rule;
  * induction along a cover t^n   -> each point component fans out into its
                                     orbit under the n-torsion translates;
  * direct sum                    -> loci unions, Euler numbers add;
  * shift                         -> loci move degree-for-degree.

Every fixture carries its expected verdict as metadata, so test suites can
iterate over a fixture list and compare outcomes without re-deriving them.
Deliberate mutations (degree shifts, entry edits that break the complex
identity) are provided for negative tests; mutants that no longer square to
zero are flagged invalid and must be rejected by validation gates.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .complexes import FreeComplex, Matrix
from .errors import InputError
from .lattices import LinearComponent, LinearUnion
from .laurent import LaurentPoly, RingContext, TorsionPoint
from .verdict import LociProfile


@dataclass
class Fixture:
    name: str
    complex: FreeComplex
    profile: LociProfile
    expected_verdict: str  # "perverse" | "upper-only" | "lower-only" | "neither"

    def with_name(self, name: str) -> "Fixture":
        return replace(self, name=name)


def koszul(generators: Sequence[LaurentPoly], top: int = 0) -> FreeComplex:
    """Koszul complex on the given elements, in degrees [top - len, top].

    The degree -(p - top) module has the p-subsets of generators as basis;
    the differential sends a subset basis vector to the signed sum of its
    facets scaled by the removed generator."""
    gens = list(generators)
    if not gens:
        raise InputError("Koszul complex needs at least one generator")
    ctx = gens[0].context
    for g in gens:
        if g.context != ctx:
            raise InputError("ring context mismatch")
    m = len(gens)
    zero = ctx.zero()
    bases = [list(combinations(range(m), p)) for p in range(m + 1)]
    diffs = {}
    for p in range(m, 0, -1):
        src = bases[p]
        dst = bases[p - 1]
        dst_index = {s: k for k, s in enumerate(dst)}
        entries = [[zero] * len(src) for _ in range(len(dst))]
        for col, subset in enumerate(src):
            for pos, j in enumerate(subset):
                facet = subset[:pos] + subset[pos + 1 :]
                row = dst_index[facet]
                term = gens[j] if pos % 2 == 0 else -gens[j]
                entries[row][col] = entries[row][col] + term
        diffs[-p] = Matrix(ctx, len(dst), len(src), entries)
    ranks = [len(bases[p]) for p in range(m, -1, -1)]
    complex_ = FreeComplex(ctx, -m, 0, ranks, diffs)
    return complex_.shift(top) if top else complex_


def _identity_component(ctx: RingContext) -> LinearComponent:
    n = ctx.num_vars
    full = [[int(i == j) for j in range(n)] for i in range(n)]
    return LinearComponent(ctx, ctx.identity_point(), full, presaturated=True)


def _point_union(point: TorsionPoint) -> LinearUnion:
    return LinearUnion.single_point(point)


def mellin_constant_torus(m: int) -> Fixture:
    """The constant-object fixture on an m-torus: Koszul complex on the
    t_i - 1 with loci {identity} in degrees [-m, 0] and empty elsewhere."""
    if m < 1:
        raise InputError("torus rank must be at least 1")
    ctx = RingContext.torus(m)
    gens = [ctx.variable(i) - 1 for i in range(m)]
    cx = koszul(gens, top=0)
    ident = _point_union(ctx.identity_point())
    profile = LociProfile(
        ctx,
        {i: ident for i in range(-m, 1)},
        source=cx,
        euler=cx.euler_characteristic(),
    )
    return Fixture(f"mellin-torus-m{m}", cx, profile, "perverse")


def free_module_fixture(m: int, rank: int = 1) -> Fixture:
    """A free module concentrated in degree zero: jumps everywhere, positive
    Euler characteristic."""
    ctx = RingContext.torus(m)
    cx = FreeComplex(ctx, 0, 0, [rank], {})
    profile = LociProfile(
        ctx, {0: LinearUnion.whole_space(ctx)}, source=cx, euler=rank
    )
    return Fixture(f"free-module-m{m}-r{rank}", cx, profile, "perverse")


def twist_fixture(base: Fixture, scalars: Sequence, name: str | None = None) -> Fixture:
    """Twist the complex by t_i -> lam_i t_i; loci translate by the inverse
    rational point."""
    ctx = base.complex.context
    lams = [Fraction(v) for v in scalars]
    cx = base.complex.twist(lams)
    inv = ctx.rational_point([1 / v for v in lams])
    loci = {
        deg: LinearUnion(
            ctx,
            [
                LinearComponent(ctx, inv * c.translate, [list(r) for r in c.lattice], presaturated=True)
                for c in union.components
            ],
        )
        for deg, union in base.profile.loci.items()
    }
    profile = LociProfile(ctx, loci, source=cx, euler=base.profile.euler)
    label = name or f"{base.name}-twist({','.join(str(v) for v in lams)})"
    return Fixture(label, cx, profile, base.expected_verdict)


def tensor_fixture(a: Fixture, b: Fixture, name: str | None = None) -> Fixture:
    """External tensor; loci combine degreewise by the Kunneth rule."""
    cx = a.complex.external_tensor(b.complex)
    ctx = cx.context
    ctx_a, ctx_b = a.complex.context, b.complex.context
    map_a = _tensor_map(ctx_a, ctx_b, True)
    map_b = _tensor_map(ctx_a, ctx_b, False)
    loci: dict[int, LinearUnion] = {}
    for da, ua in a.profile.loci.items():
        for db, ub in b.profile.loci.items():
            combos = []
            for comp_a in ua.components:
                for comp_b in ub.components:
                    translate = comp_a.translate.embed(ctx, map_a) * comp_b.translate.embed(ctx, map_b)
                    rows = [_embed_row(r, map_a, ctx.num_vars) for r in comp_a.lattice]
                    rows += [_embed_row(r, map_b, ctx.num_vars) for r in comp_b.lattice]
                    combos.append(LinearComponent(ctx, translate, rows, presaturated=True))
            if combos:
                deg = da + db
                existing = loci.get(deg, LinearUnion.empty(ctx))
                loci[deg] = existing.union_with(LinearUnion(ctx, combos))
    euler = (
        a.profile.euler * b.profile.euler
        if a.profile.euler is not None and b.profile.euler is not None
        else None
    )
    profile = LociProfile(ctx, loci, source=cx, euler=euler)
    expected = "perverse" if (a.expected_verdict, b.expected_verdict) == ("perverse", "perverse") else "neither"
    return Fixture(name or f"({a.name})x({b.name})", cx, profile, expected)


def induce_fixture(base: Fixture, exponents: Sequence[int], name: str | None = None) -> Fixture:
    """Induction along the cover raising coordinate i to the n_i-th power.
    Point components fan out into all n-torsion translates; supporting only
    point components keeps the translate arithmetic inside the torsion-point
    class."""
    ctx = base.complex.context
    n = [int(x) for x in exponents]
    cx = base.complex.induce(n)
    size = 1
    for x in n:
        size *= x
    loci = {}
    for deg, union in base.profile.loci.items():
        comps = []
        for comp in union.components:
            if comp.rank != ctx.num_vars:
                raise InputError(
                    "induced fixtures support point components only"
                )
            for shifts in product(*(range(x) for x in n)):
                zeta = TorsionPoint(
                    ctx,
                    [(Fraction(1), Fraction(k, x)) for k, x in zip(shifts, n)],
                )
                comps.append(
                    LinearComponent(
                        ctx,
                        comp.translate * zeta,
                        [list(r) for r in comp.lattice],
                        presaturated=True,
                    )
                )
        loci[deg] = LinearUnion(ctx, comps)
    euler = base.profile.euler * size if base.profile.euler is not None else None
    profile = LociProfile(ctx, loci, source=cx, euler=euler)
    label = name or f"{base.name}-induce({','.join(map(str, n))})"
    return Fixture(label, cx, profile, base.expected_verdict)


def sum_fixture(a: Fixture, b: Fixture, name: str | None = None) -> Fixture:
    cx = a.complex.direct_sum(b.complex)
    profile = a.profile.union_with(b.profile).with_source(cx)
    expected = "perverse" if (a.expected_verdict, b.expected_verdict) == ("perverse", "perverse") else "neither"
    return Fixture(name or f"({a.name})+({b.name})", cx, profile, expected)


def shift_fixture(base: Fixture, s: int, name: str | None = None) -> Fixture:
    """Degree shift; for a perverse base with point loci through degree zero
    the expected verdict flips to one-sided."""
    cx = base.complex.shift(s)
    profile = base.profile.shift(s).with_source(cx)
    if s == 0:
        expected = base.expected_verdict
    elif s > 0:
        expected = "lower-only"
    else:
        expected = "upper-only"
    return Fixture(name or f"{base.name}-shift({s})", cx, profile, expected)


@dataclass
class Mutant:
    name: str
    complex: FreeComplex
    valid: bool  # False: must be rejected by validation gates
    note: str


def mutate_zero_entry(base: Fixture, degree: int, row: int, col: int) -> Mutant:
    """Zero out one differential entry; flags the result invalid when the
    complex identity breaks."""
    cx = base.complex
    mat = cx.differential(degree)
    entries = [list(r) for r in mat.entries]
    entries[row][col] = cx.context.zero()
    diffs = dict(cx.diffs)
    diffs[degree] = Matrix(cx.context, mat.nrows, mat.ncols, entries)
    mutated = FreeComplex(cx.context, cx.k_min, cx.k_max, cx.ranks, diffs)
    ok = mutated.validate().ok
    return Mutant(
        f"{base.name}-zero@{degree}[{row},{col}]",
        mutated,
        ok,
        "entry zeroed" + ("" if ok else "; breaks d.d = 0"),
    )


def mutate_scale_entry(base: Fixture, degree: int, row: int, col: int, factor) -> Mutant:
    cx = base.complex
    mat = cx.differential(degree)
    entries = [list(r) for r in mat.entries]
    entries[row][col] = entries[row][col] * Fraction(factor)
    diffs = dict(cx.diffs)
    diffs[degree] = Matrix(cx.context, mat.nrows, mat.ncols, entries)
    mutated = FreeComplex(cx.context, cx.k_min, cx.k_max, cx.ranks, diffs)
    ok = mutated.validate().ok
    return Mutant(
        f"{base.name}-scale@{degree}[{row},{col}]x{factor}",
        mutated,
        ok,
        "entry scaled" + ("" if ok else "; breaks d.d = 0"),
    )


def _tensor_map(ctx_a: RingContext, ctx_b: RingContext, first: bool) -> list[int]:
    ma, mb = ctx_a.torus_rank, ctx_b.torus_rank
    if first:
        return list(range(ma)) + [ma + mb + k for k in range(2 * ctx_a.abelian_rank)]
    return [ma + k for k in range(mb)] + [
        ma + mb + 2 * ctx_a.abelian_rank + k for k in range(2 * ctx_b.abelian_rank)
    ]


def _embed_row(row: Sequence[int], var_map: Sequence[int], width: int) -> list[int]:
    out = [0] * width
    for i, v in enumerate(row):
        out[var_map[i]] = v
    return out


def renamed_torus_fixture(m: int, offset: int) -> Fixture:
    """A torus fixture whose variables are renamed (t{offset+1}, ...) so it
    can appear as the second factor of an external tensor."""
    ctx = RingContext([f"t{offset + i + 1}" for i in range(m)], m, 0)
    gens = [ctx.variable(i) - 1 for i in range(m)]
    cx = koszul(gens, top=0)
    profile = LociProfile(
        ctx,
        {i: _point_union(ctx.identity_point()) for i in range(-m, 1)},
        source=cx,
        euler=0,
    )
    return Fixture(f"mellin-torus-m{m}@{offset}", cx, profile, "perverse")


def abelian_point_profile(g: int, span: int) -> LociProfile:
    """Declared profile on an abelian context (m = 0): the identity point in
    degrees [-span, span].  Valid (perverse) iff span <= g; the point has
    abelian and semi-abelian codimension g."""
    ctx = RingContext.abelian(g)
    ident = _point_union(ctx.identity_point())
    return LociProfile(ctx, {i: ident for i in range(-span, span + 1)}, euler=0)


def standard_fixture_suite() -> list[Fixture]:
    """The stock of assumption-passing fixtures used across test suites:
    Koszul complexes for small m, twists, external tensors, inductions and
    direct sums.  All carry expected verdict 'perverse'."""
    m1 = mellin_constant_torus(1)
    m2 = mellin_constant_torus(2)
    m3 = mellin_constant_torus(3)
    second1 = renamed_torus_fixture(1, 1)
    second2 = renamed_torus_fixture(2, 1)
    fixtures = [m1, m2, m3]
    for lam in (Fraction(2), Fraction(-1), Fraction(1, 3)):
        fixtures.append(twist_fixture(m1, [lam]))
        fixtures.append(twist_fixture(m2, [lam, lam]))
    fixtures.append(twist_fixture(m2, [Fraction(2), Fraction(1, 3)]))
    fixtures.append(twist_fixture(m3, [Fraction(2), Fraction(-1), Fraction(1, 3)]))
    fixtures.append(tensor_fixture(m1, second1))
    fixtures.append(tensor_fixture(m1, second2))
    fixtures.append(tensor_fixture(twist_fixture(m1, [Fraction(2)]), second1))
    fixtures.append(tensor_fixture(m1, twist_fixture(second1, [Fraction(-1)])))
    fixtures.append(induce_fixture(m1, [2]))
    fixtures.append(induce_fixture(m1, [3]))
    fixtures.append(induce_fixture(m2, [2, 1]))
    fixtures.append(induce_fixture(twist_fixture(m2, [Fraction(2), Fraction(1, 3)]), [2, 1]))
    fixtures.append(induce_fixture(twist_fixture(m1, [Fraction(2)]), [2]))
    fixtures.append(sum_fixture(m1, twist_fixture(m1, [Fraction(2)])))
    fixtures.append(sum_fixture(m2, twist_fixture(m2, [Fraction(-1), Fraction(2)])))
    fixtures.append(sum_fixture(m1, induce_fixture(m1, [2])))
    fixtures.append(sum_fixture(m2, m2))
    fixtures.append(sum_fixture(m1, free_module_fixture(1)))
    fixtures.append(free_module_fixture(1))
    fixtures.append(free_module_fixture(2, rank=3))
    return fixtures
