import math
import random
from fractions import Fraction

import pytest

from jumploci.errors import InputError
from jumploci.lattices import (
    LinearComponent,
    LinearUnion,
    hermite_normal_form,
    kernel_basis,
    lattice_contains,
    rational_rank,
    saturate_lattice,
    smith_normal_form,
    subtorus_point,
)
from jumploci.laurent import RingContext, TorsionPoint


def _matmul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def _det(M):
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return d


def test_smith_form_random_matrices():
    rng = random.Random(2024)
    for _ in range(150):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        A = [[rng.randint(-8, 8) for _ in range(cols)] for _ in range(rows)]
        U, D, V = smith_normal_form(A)
        assert _matmul(_matmul(U, A), V) == D
        assert abs(_det(U)) == 1 and abs(_det(V)) == 1
        diag = [D[i][i] for i in range(min(rows, cols))]
        assert all(
            D[i][j] == 0 for i in range(rows) for j in range(cols) if i != j
        )
        assert all(d >= 0 for d in diag)
        nonzero = [d for d in diag if d]
        assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_saturation_examples():
    assert saturate_lattice([[2, 0]], 2) == [[1, 0]]
    # index-2 sublattice saturates to the full lattice
    assert saturate_lattice([[1, 1], [1, -1]], 2) == [[1, 0], [0, 1]]
    assert saturate_lattice([], 2) == []


def test_saturation_idempotent_and_contains_input():
    rng = random.Random(3)
    for _ in range(120):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(rng.randint(0, n + 1))]
        sat = saturate_lattice(rows, n)
        assert sat == saturate_lattice(sat, n)
        assert len(sat) == rational_rank(rows)
        for r in rows:
            assert not any(r) or lattice_contains(sat, r)


def test_kernel_basis_orthogonality():
    rng = random.Random(4)
    for _ in range(120):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(rng.randint(0, 3))]
        ker = kernel_basis(rows, n)
        assert len(ker) == n - rational_rank(rows)
        for v in ker:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_hermite_form_is_canonical():
    # different bases of the same lattice produce identical normal forms
    base = [[1, 2, 0], [0, 0, 3]]
    other = [[1, 2, 3], [0, 0, 3], [1, 2, -3]]
    assert hermite_normal_form(base, 3) == hermite_normal_form(other, 3)


def test_component_codims_examples():
    ab = RingContext.abelian(1)
    point = LinearComponent(ab, ab.identity_point(), [[1, 0], [0, 1]])
    assert point.codims() == (2, 1, 1)  # abelian point: d even, g'' = d/2
    torus = RingContext.torus(1)
    assert LinearComponent(torus, torus.identity_point(), [[1]]).codims() == (1, 0, 1)
    mixed = RingContext.mixed(1, 1)
    assert LinearComponent(mixed, mixed.identity_point(), [[1, 0, 0]]).codims() == (1, 0, 1)


def test_component_rejects_odd_abelian_projection():
    ab = RingContext.abelian(1)
    with pytest.raises(InputError):
        LinearComponent(ab, ab.identity_point(), [[1, 0]])
    mixed = RingContext.mixed(1, 1)
    with pytest.raises(InputError):
        LinearComponent(mixed, mixed.identity_point(), [[0, 1, 0]])


def test_codims_decomposition_random():
    # d = m'' + 2 g'' with both parts nonnegative, on random valid lattices
    rng = random.Random(9)
    cases = [(1, 0), (0, 1), (1, 1), (2, 1)]
    built = 0
    for m, g in cases:
        ctx = RingContext.mixed(m, g)
        n = ctx.num_vars
        while built % 60 or built // 60 <= cases.index((m, g)):
            rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(rng.randint(0, n))]
            try:
                comp = LinearComponent(ctx, ctx.identity_point(), rows)
            except InputError:
                built += 1
                continue
            d, g2, sa = comp.codims()
            m2 = comp.kernel_torus_rank()
            assert d == m2 + 2 * g2 and m2 >= 0 and g2 >= 0
            assert sa == m2 + g2
            assert g2 <= g and sa <= m + g
            built += 1


def test_abelian_specialization():
    # m = 0: every valid component has codim_a = codim_sa = d / 2
    rng = random.Random(10)
    ctx = RingContext.abelian(2)
    produced = 0
    while produced < 50:
        rows = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(rng.randint(0, 4))]
        try:
            comp = LinearComponent(ctx, ctx.identity_point(), rows)
        except InputError:
            continue
        d, g2, sa = comp.codims()
        assert d % 2 == 0 and g2 == d // 2 and sa == d // 2
        produced += 1


def test_torus_specialization():
    rng = random.Random(11)
    ctx = RingContext.torus(3)
    for _ in range(50):
        rows = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(rng.randint(0, 3))]
        comp = LinearComponent(ctx, ctx.identity_point(), rows)
        d, g2, sa = comp.codims()
        assert g2 == 0 and sa == d


def test_containment_examples():
    ctx = RingContext.torus(2)
    point = LinearComponent(ctx, ctx.identity_point(), [[1, 0], [0, 1]])
    curve = LinearComponent(ctx, ctx.identity_point(), [[1, 0]])
    assert curve.contains(point)
    assert not point.contains(curve)
    off_point = LinearComponent(ctx, ctx.rational_point([2, 1]), [[1, 0], [0, 1]])
    assert not curve.contains(off_point)
    assert point.contains(point)


def test_containment_translate_mod_subtorus():
    ctx = RingContext.torus(2)
    a = LinearComponent(ctx, ctx.rational_point([1, 3]), [[1, 0]])
    b = LinearComponent(ctx, ctx.rational_point([1, 7]), [[1, 0]])
    assert a.same_component(b)  # translates differ by a subtorus point


def test_containment_partial_order_random():
    rng = random.Random(12)
    ctx = RingContext.torus(3)
    lattices = [
        [[1, 0, 0]],
        [[0, 1, 0]],
        [[1, 0, 0], [0, 1, 0]],
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 1, 0]],
        [],
    ]
    translates = [
        ctx.identity_point(),
        ctx.rational_point([2, 1, 1]),
        ctx.rational_point([1, 1, 3]),
    ]
    comps = [
        LinearComponent(ctx, t, rows)
        for t in translates
        for rows in lattices
    ]
    for _ in range(200):
        a, b, c = (rng.choice(comps) for _ in range(3))
        assert a.contains(a)
        if a.contains(b) and b.contains(a):
            assert a.same_component(b)
        if a.contains(b) and b.contains(c):
            assert a.contains(c)


def test_union_normalization_and_stats():
    ctx = RingContext.torus(2)
    point = LinearComponent(ctx, ctx.identity_point(), [[1, 0], [0, 1]])
    curve = LinearComponent(ctx, ctx.identity_point(), [[1, 0]])
    union = LinearUnion(ctx, [point, curve])
    assert len(union.components) == 1  # the point is swallowed
    stats = union.codim_stats()
    assert stats.codim_sa == 1 and stats.codim_a == 0 and stats.dim_sa == 1
    far = LinearComponent(ctx, ctx.rational_point([5, 5]), [[1, 0], [0, 1]])
    union2 = LinearUnion(ctx, [point, curve, far])
    assert len(union2.components) == 2
    assert union2.codim_stats().codim_sa == 1


def test_union_min_rule():
    ctx = RingContext.torus(2)
    point = LinearComponent(ctx, ctx.rational_point([2, 2]), [[1, 0], [0, 1]])
    curve = LinearComponent(ctx, ctx.identity_point(), [[1, 0]])
    union = LinearUnion(ctx, [point, curve])
    assert union.codim_stats().codim_sa == min(2, 1)


def test_empty_and_whole_conventions():
    ctx = RingContext.torus(2)
    empty = LinearUnion.empty(ctx)
    stats = empty.codim_stats()
    assert stats.codim_a == math.inf and stats.codim_sa == math.inf
    assert stats.dim_a == -math.inf and stats.dim_sa == -math.inf
    whole = LinearUnion.whole_space(ctx)
    assert whole.is_whole_space()
    assert whole.codim_stats().codim_sa == 0
    assert whole.contains(empty)
    assert whole.contains(LinearUnion.single_point(ctx.rational_point([7, 9])))


def test_subtorus_points_lie_on_component():
    rng = random.Random(13)
    ctx = RingContext.torus(3)
    comp = LinearComponent(ctx, ctx.rational_point([2, 1, 1]), [[1, 1, 0]])
    for _ in range(30):
        weights = [Fraction(rng.randint(1, 7), rng.randint(1, 4)) for _ in range(2)]
        p = subtorus_point(comp, weights)
        assert comp.contains_point(p)


def test_point_membership():
    ctx = RingContext.torus(2)
    curve = LinearComponent(ctx, ctx.rational_point([2, 1]), [[1, 0]])
    assert curve.contains_point(ctx.rational_point([2, 9]))
    assert not curve.contains_point(ctx.rational_point([3, 9]))
    torsion = TorsionPoint(ctx, [(Fraction(2), Fraction(0)), (Fraction(1), Fraction(1, 3))])
    assert curve.contains_point(torsion)
