"""Bounded complexes of finitely generated free modules over a Laurent ring.

A FreeComplex stores a degree range [k_min, k_max], one rank per degree and
one differential matrix per adjacent pair, with the convention that the
matrix of d^i : F^i -> F^(i+1) has rank(i+1) rows and rank(i) columns and
acts on coordinate columns.  Degrees outside the range are zero modules;
requesting their differentials yields empty matrices of the right shape, so
edge cases in ideal formulas need no special casing.

The module computes the two ideal families attached to a complex:

  * the Fitting ideal of degree i: minors of d^i at its generic rank;
  * the jumping ideal of degree i: minors of size rank(i) of
    d^(i-1) (+) d^i, expanded as the sum over j of
    I_j(d^(i-1)) * I_(rank(i)-j)(d^i)
    (block matrices have only block-diagonal products of minors), with the
    conventions I_0 = (1) and I_k = (0) once k exceeds a matrix dimension;

plus generic ranks over the fraction field (fraction-free Bareiss
elimination with exact Laurent pivots), the dual complex, the standard
constructors (shift, direct sum, external tensor with the Koszul sign rule,
twist by a rational character, induction along a finite cover), and the
rank/codimension exactness certificate in a degree range: a suffix of
negative degrees is exact iff ranks are additive and the Fitting ideal of
each degree i in the range has codimension at least -i.

Minor enumeration is capped at size 5; larger requests raise ResourceError.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .cyclotomic import Cyclotomic
from .errors import InputError, ResourceError
from .groebner import LaurentIdeal, laurent_to_poly
from .laurent import LaurentPoly, RingContext, TorsionPoint

MAX_MINOR_SIZE = 5


# -- matrices of Laurent polynomials ------------------------------------------


class Matrix:
    """Immutable matrix of Laurent polynomials with explicit shape, so that
    zero-row / zero-column matrices (boundary differentials) are first-class."""

    __slots__ = ("context", "nrows", "ncols", "entries")

    def __init__(self, context: RingContext, nrows: int, ncols: int, entries):
        rows = tuple(tuple(r) for r in entries)
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise InputError(
                f"matrix shape mismatch: declared {nrows}x{ncols}, "
                f"got {len(rows)} rows"
            )
        for r in rows:
            for e in r:
                if not isinstance(e, LaurentPoly):
                    raise InputError("matrix entries must be Laurent polynomials")
                if e.context != context:
                    raise InputError("ring context mismatch")
        self.context = context
        self.nrows = nrows
        self.ncols = ncols
        self.entries = rows

    @classmethod
    def zero(cls, context: RingContext, nrows: int, ncols: int) -> "Matrix":
        z = context.zero()
        return cls(context, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def from_rows(cls, context: RingContext, rows: Sequence[Sequence[LaurentPoly]]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(context, nrows, ncols, rows)

    def __getitem__(self, rc):
        return self.entries[rc[0]][rc[1]]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.context,
            self.ncols,
            self.nrows,
            [[self.entries[r][c] for r in range(self.nrows)] for c in range(self.ncols)],
        )

    def map_entries(self, fn) -> "Matrix":
        return Matrix(
            self.context,
            self.nrows,
            self.ncols,
            [[fn(e) for e in row] for row in self.entries],
        )

    def compose(self, other: "Matrix") -> "Matrix":
        """self * other (apply ``other`` first)."""
        if other.nrows != self.ncols:
            raise InputError("matrix shapes are not composable")
        zero = self.context.zero()
        out = []
        for r in range(self.nrows):
            row = []
            for c in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    acc = acc + self.entries[r][k] * other.entries[k][c]
                row.append(acc)
            out.append(row)
        return Matrix(self.context, self.nrows, other.ncols, out)

    def evaluate(self, point: TorsionPoint) -> list[list[Cyclotomic]]:
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.context == other.context
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.context, self.nrows, self.ncols, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"


def exact_divide(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Exact quotient p/d in the Laurent ring.

    Both arguments are normalized by monomial units to honest polynomials,
    the polynomial quotient is computed by leading-term cancellation, and the
    unit is reattached.  Raises if the division is not exact."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    ctx = p.context
    n = ctx.num_vars
    p_min = [min(e[i] for e in p.terms) for i in range(n)]
    d_min = [min(e[i] for e in d.terms) for i in range(n)]
    num = dict(laurent_to_poly(p))
    den = laurent_to_poly(d)
    den_lead = max(den)
    den_lc = den[den_lead]
    quot: dict = {}
    while num:
        lead = max(num)
        if not all(a >= b for a, b in zip(lead, den_lead)):
            raise ArithmeticError("inexact polynomial division")
        shift = tuple(a - b for a, b in zip(lead, den_lead))
        coeff = num[lead] / den_lc
        quot[shift] = coeff
        for exp, c in den.items():
            key = tuple(a + b for a, b in zip(exp, shift))
            s = num.get(key, Fraction(0)) - coeff * c
            if s:
                num[key] = s
            else:
                num.pop(key, None)
    unit = tuple(a - b for a, b in zip(p_min, d_min))
    return LaurentPoly(ctx, {tuple(a + b for a, b in zip(exp, unit)): c for exp, c in quot.items()})


def generic_rank(matrix: Matrix) -> int:
    """Rank over the fraction field via fraction-free Bareiss elimination
    with exact Laurent pivots and divisions."""
    m = [list(row) for row in matrix.entries]
    nrows, ncols = matrix.nrows, matrix.ncols
    if nrows == 0 or ncols == 0:
        return 0
    one = matrix.context.one()
    prev = one
    rank = 0
    for k in range(min(nrows, ncols)):
        # Sparsest nonzero pivot in the trailing block, deterministically.
        pivot = None
        for r in range(k, nrows):
            for c in range(k, ncols):
                if not m[r][c].is_zero():
                    if pivot is None or len(m[r][c].terms) < len(m[pivot[0]][pivot[1]].terms):
                        pivot = (r, c)
        if pivot is None:
            break
        pr, pc = pivot
        if pr != k:
            m[k], m[pr] = m[pr], m[k]
        if pc != k:
            for row in m:
                row[k], row[pc] = row[pc], row[k]
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev) if not num.is_zero() else num
            m[i][k] = matrix.context.zero()
        prev = m[k][k]
        rank += 1
    return rank


def _det(entries, rows: tuple, cols: tuple, memo: dict) -> LaurentPoly:
    """Determinant of the square submatrix entries[rows][cols] by Laplace
    expansion along the first row, memoized on (rows, cols)."""
    key = (rows, cols)
    if key in memo:
        return memo[key]
    if len(rows) == 1:
        memo[key] = entries[rows[0]][cols[0]]
        return memo[key]
    r0 = rows[0]
    rest = rows[1:]
    acc = None
    for pos, c in enumerate(cols):
        e = entries[r0][c]
        if e.is_zero():
            continue
        sub = _det(entries, rest, cols[:pos] + cols[pos + 1 :], memo)
        term = e * sub
        if pos % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        acc = entries[r0][cols[0]].context.zero()
    memo[key] = acc
    return acc


def minor_generators(matrix: Matrix, k: int) -> list[LaurentPoly] | None:
    """Generators of the k-th determinantal ideal as a list; None encodes the
    unit ideal (k = 0) and [] the zero ideal (k exceeds a dimension)."""
    if k < 0:
        raise InputError("minor size must be nonnegative")
    if k == 0:
        return None
    if k > min(matrix.nrows, matrix.ncols):
        return []
    if k > MAX_MINOR_SIZE:
        raise ResourceError(
            f"minor size {k} exceeds the cap of {MAX_MINOR_SIZE}"
        )
    memo: dict = {}
    gens = []
    seen = set()
    for rows in combinations(range(matrix.nrows), k):
        for cols in combinations(range(matrix.ncols), k):
            d = _det(matrix.entries, rows, cols, memo)
            if d.is_zero():
                continue
            d = unit_normalize(d)
            if d not in seen:
                seen.add(d)
                gens.append(d)
    return gens


def determinantal_ideal(matrix: Matrix, k: int) -> LaurentIdeal:
    """The ideal of k x k minors, with the conventions that the 0-th
    determinantal ideal is the unit ideal and sizes beyond a dimension give
    the zero ideal."""
    gens = minor_generators(matrix, k)
    if gens is None:
        gens = [matrix.context.one()]
    return LaurentIdeal(matrix.context, gens)


def unit_normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of p up to units: monomial factors stripped,
    integer coprime coefficients, positive coefficient on the lex-leading
    term.  Used to deduplicate ideal generators."""
    if p.is_zero():
        return p
    poly = laurent_to_poly(p)
    import math as _math

    den = _math.lcm(*(c.denominator for c in poly.values()))
    num = _math.gcd(*(c.numerator for c in poly.values()))
    scale = Fraction(den, num)
    if poly[max(poly)] < 0:
        scale = -scale
    return LaurentPoly(p.context, {e: c * scale for e, c in poly.items()})


def _product_of_generator_lists(a, b, context) -> list[LaurentPoly] | None:
    """Ideal product on generator lists; None is the unit ideal, [] is zero."""
    if a == [] or b == []:
        return []
    if a is None and b is None:
        return None
    if a is None:
        return list(b)
    if b is None:
        return list(a)
    seen = set()
    out = []
    for f in a:
        for g in b:
            h = unit_normalize(f * g)
            if not h.is_zero() and h not in seen:
                seen.add(h)
                out.append(h)
    return out


# -- the complex ----------------------------------------------------------------


class ValidationReport:
    """Outcome of the d(d(x)) = 0 check, with the first failing entry."""

    __slots__ = ("ok", "failures")

    def __init__(self, ok: bool, failures: list):
        self.ok = ok
        self.failures = failures

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        deg, r, c, value = self.failures[0]
        return (
            f"composite differential d^{deg + 1} . d^{deg} is nonzero at "
            f"entry ({r},{c}): {value}"
        )


class FreeComplex:
    """Bounded complex of free modules with explicit differential matrices."""

    __slots__ = (
        "context",
        "k_min",
        "k_max",
        "ranks",
        "diffs",
        "_rank_cache",
        "_validated",
        "_fitting_cache",
        "_jumping_cache",
    )

    def __init__(
        self,
        context: RingContext,
        k_min: int,
        k_max: int,
        ranks: Sequence[int],
        differentials: dict[int, Matrix] | Iterable[tuple[int, Matrix]],
    ):
        if k_max < k_min:
            raise InputError("degree range is empty")
        ranks = tuple(int(r) for r in ranks)
        if len(ranks) != k_max - k_min + 1:
            raise InputError("rank list does not match the degree range")
        if any(r < 0 for r in ranks):
            raise InputError("ranks must be nonnegative")
        diffs = dict(differentials)
        for i in range(k_min, k_max):
            mat = diffs.get(i)
            expected = (ranks[i + 1 - k_min], ranks[i - k_min])
            if mat is None:
                mat = Matrix.zero(context, *expected)
                diffs[i] = mat
            if mat.context != context:
                raise InputError("ring context mismatch")
            if (mat.nrows, mat.ncols) != expected:
                raise InputError(
                    f"differential at degree {i} has shape "
                    f"{mat.nrows}x{mat.ncols}, expected {expected[0]}x{expected[1]}"
                )
        for i in diffs:
            if not k_min <= i < k_max:
                raise InputError(f"differential index {i} outside degree range")
        self.context = context
        self.k_min = k_min
        self.k_max = k_max
        self.ranks = ranks
        self.diffs = diffs
        self._rank_cache = {}
        self._validated = None
        self._fitting_cache = {}
        self._jumping_cache = {}

    # -- structure --------------------------------------------------------------

    def rank(self, i: int) -> int:
        if self.k_min <= i <= self.k_max:
            return self.ranks[i - self.k_min]
        return 0

    def degrees(self) -> range:
        return range(self.k_min, self.k_max + 1)

    def differential(self, i: int) -> Matrix:
        """d^i : F^i -> F^(i+1); empty-shaped outside the stored range."""
        if self.k_min <= i < self.k_max:
            return self.diffs[i]
        return Matrix.zero(self.context, self.rank(i + 1), self.rank(i))

    def validate(self) -> ValidationReport:
        """Check that consecutive differentials compose to zero."""
        if self._validated is not None:
            return self._validated
        failures = []
        for i in range(self.k_min, self.k_max - 1):
            comp = self.differential(i + 1).compose(self.differential(i))
            for r in range(comp.nrows):
                for c in range(comp.ncols):
                    if not comp.entries[r][c].is_zero():
                        failures.append((i, r, c, str(comp.entries[r][c])))
                        break
                if failures:
                    break
            if failures:
                break
        self._validated = ValidationReport(not failures, failures)
        return self._validated

    def ensure_valid(self):
        report = self.validate()
        if not report.ok:
            raise InputError(f"invalid complex: {report.describe()}")

    def rank_of_differential(self, i: int) -> int:
        if i not in self._rank_cache:
            self._rank_cache[i] = generic_rank(self.differential(i))
        return self._rank_cache[i]

    def euler_characteristic(self) -> int:
        return sum((-1 if i % 2 else 1) * self.rank(i) for i in self.degrees())

    # -- ideals -------------------------------------------------------------------

    def fitting_ideal(self, i: int) -> LaurentIdeal:
        """Minors of d^i at its generic rank; unit ideal outside the range.
        Cached per degree: the ideal object carries write-once Groebner data
        reused by every consumer."""
        if not self.k_min <= i <= self.k_max:
            return LaurentIdeal(self.context, [self.context.one()])
        if i in self._fitting_cache:
            return self._fitting_cache[i]
        d = self.differential(i)
        gens = minor_generators(d, self.rank_of_differential(i))
        if gens is None:
            gens = [self.context.one()]
        ideal = LaurentIdeal(self.context, gens)
        self._fitting_cache[i] = ideal
        return ideal

    def jumping_ideal(self, i: int) -> LaurentIdeal:
        """Minors of size rank(i) of d^(i-1) (+) d^i, via the sum-of-products
        expansion over block-diagonal minor splittings."""
        self.ensure_valid()
        if not self.k_min <= i <= self.k_max:
            return LaurentIdeal(self.context, [self.context.one()])
        if i in self._jumping_cache:
            return self._jumping_cache[i]
        r = self.rank(i)
        incoming = self.differential(i - 1)
        outgoing = self.differential(i)
        total: list[LaurentPoly] | None = []
        for j in range(r + 1):
            left = minor_generators(incoming, j)
            right = minor_generators(outgoing, r - j)
            prod = _product_of_generator_lists(left, right, self.context)
            if prod is None:
                total = None
                break
            if total is not None:
                seen = set(total)
                for g in prod:
                    if g not in seen:
                        seen.add(g)
                        total.append(g)
        if total is None:
            gens = [self.context.one()]
        else:
            gens = total
        ideal = LaurentIdeal(self.context, gens)
        self._jumping_cache[i] = ideal
        return ideal

    def fitting_and_jumping_ideals(self, i: int) -> tuple[LaurentIdeal, LaurentIdeal]:
        return self.fitting_ideal(i), self.jumping_ideal(i)

    # -- constructors ---------------------------------------------------------------

    def dual(self) -> "FreeComplex":
        """Hom(F, ring) with Hom(F^i) placed in degree -i; differentials are
        the transposes of the originals."""
        self.ensure_valid()
        k_min, k_max = -self.k_max, -self.k_min
        ranks = tuple(reversed(self.ranks))
        diffs = {}
        for j in range(k_min, k_max):
            diffs[j] = self.differential(-j - 1).transpose()
        return FreeComplex(self.context, k_min, k_max, ranks, diffs)

    def shift(self, s: int) -> "FreeComplex":
        """Move the complex s steps to the right: the new degree i module is
        the old degree i - s one, so loci in degree i come from degree i - s.
        Differentials carry the customary (-1)^s sign."""
        sign = -1 if s % 2 else 1
        diffs = {}
        for i in range(self.k_min, self.k_max):
            mat = self.diffs[i]
            diffs[i + s] = mat if sign == 1 else mat.map_entries(lambda e: -e)
        return FreeComplex(
            self.context, self.k_min + s, self.k_max + s, self.ranks, diffs
        )

    def direct_sum(self, other: "FreeComplex") -> "FreeComplex":
        if self.context != other.context:
            raise InputError("ring context mismatch")
        k_min = min(self.k_min, other.k_min)
        k_max = max(self.k_max, other.k_max)
        ranks = [self.rank(i) + other.rank(i) for i in range(k_min, k_max + 1)]
        zero = self.context.zero()
        diffs = {}
        for i in range(k_min, k_max):
            a = self.differential(i)
            b = other.differential(i)
            rows = a.nrows + b.nrows
            cols = a.ncols + b.ncols
            entries = [[zero] * cols for _ in range(rows)]
            for r in range(a.nrows):
                for c in range(a.ncols):
                    entries[r][c] = a.entries[r][c]
            for r in range(b.nrows):
                for c in range(b.ncols):
                    entries[a.nrows + r][a.ncols + c] = b.entries[r][c]
            diffs[i] = Matrix(self.context, rows, cols, entries)
        return FreeComplex(self.context, k_min, k_max, ranks, diffs)

    def twist(self, scalars) -> "FreeComplex":
        """Substitute t_i -> lam_i * t_i in every differential; lam_i are
        nonzero rationals (a rational point of the character torus), so the
        loci translate by the inverse point."""
        if isinstance(scalars, TorsionPoint):
            if not scalars.is_rational():
                raise InputError("twists must be by rational points")
            lams = [q for q, _ in scalars.coords]
        else:
            lams = [Fraction(v) for v in scalars]
        if len(lams) != self.context.num_vars:
            raise InputError("twist needs one scalar per variable")
        if any(l == 0 for l in lams):
            raise InputError("twist scalars must be nonzero")
        mapping = [(l, 1) for l in lams]
        diffs = {
            i: m.map_entries(lambda e: e.substitute(mapping))
            for i, m in self.diffs.items()
        }
        return FreeComplex(self.context, self.k_min, self.k_max, self.ranks, diffs)

    def external_tensor(self, other: "FreeComplex") -> "FreeComplex":
        """Total complex of the double complex, with the sign rule
        d(x (x) y) = dx (x) y + (-1)^deg(x) x (x) dy, over the combined ring.

        The two variable sets are disjoint by construction: torus variables
        of both factors come first, then abelian variables of both, and name
        collisions are rejected."""
        ctx_a, ctx_b = self.context, other.context
        if set(ctx_a.var_names) & set(ctx_b.var_names):
            raise InputError("external tensor factors must use disjoint variable names")
        m = ctx_a.torus_rank + ctx_b.torus_rank
        g = ctx_a.abelian_rank + ctx_b.abelian_rank
        names = (
            list(ctx_a.var_names[: ctx_a.torus_rank])
            + list(ctx_b.var_names[: ctx_b.torus_rank])
            + list(ctx_a.var_names[ctx_a.torus_rank :])
            + list(ctx_b.var_names[ctx_b.torus_rank :])
        )
        ctx = RingContext(names, m, g)
        map_a = _tensor_var_map(ctx_a, ctx_b, first_factor=True)
        map_b = _tensor_var_map(ctx_a, ctx_b, first_factor=False)

        def emb_a(p):
            return p.embed(ctx, map_a)

        def emb_b(p):
            return p.embed(ctx, map_b)

        k_min = self.k_min + other.k_min
        k_max = self.k_max + other.k_max
        pieces = {
            n: [
                (i, n - i)
                for i in range(self.k_min, self.k_max + 1)
                if other.k_min <= n - i <= other.k_max
            ]
            for n in range(k_min, k_max + 1)
        }
        ranks = [
            sum(self.rank(i) * other.rank(j) for i, j in pieces[n])
            for n in range(k_min, k_max + 1)
        ]
        zero = ctx.zero()
        diffs = {}
        for n in range(k_min, k_max):
            src = pieces[n]
            dst = pieces[n + 1]
            src_offsets = _block_offsets(src, self, other)
            dst_offsets = _block_offsets(dst, self, other)
            rows = sum(self.rank(i) * other.rank(j) for i, j in dst)
            cols = sum(self.rank(i) * other.rank(j) for i, j in src)
            entries = [[zero] * cols for _ in range(rows)]
            for (i, j) in src:
                co = src_offsets[(i, j)]
                ra, rb = self.rank(i), other.rank(j)
                # component d_F (x) id : (i, j) -> (i+1, j)
                if (i + 1, j) in dst_offsets:
                    ro = dst_offsets[(i + 1, j)]
                    df = self.differential(i)
                    for a2 in range(df.nrows):
                        for a1 in range(df.ncols):
                            e = df.entries[a2][a1]
                            if e.is_zero():
                                continue
                            ee = emb_a(e)
                            for b in range(rb):
                                entries[ro + a2 * rb + b][co + a1 * rb + b] = ee
                # component (-1)^i id (x) d_G : (i, j) -> (i, j+1)
                if (i, j + 1) in dst_offsets:
                    ro = dst_offsets[(i, j + 1)]
                    dg = other.differential(j)
                    sign = -1 if i % 2 else 1
                    for b2 in range(dg.nrows):
                        for b1 in range(dg.ncols):
                            e = dg.entries[b2][b1]
                            if e.is_zero():
                                continue
                            ee = emb_b(e if sign == 1 else -e)
                            for a in range(ra):
                                entries[ro + a * dg.nrows + b2][co + a * rb + b1] = ee
            diffs[n] = Matrix(ctx, rows, cols, entries)
        return FreeComplex(ctx, k_min, k_max, ranks, diffs)

    def induce(self, exponents: Sequence[int]) -> "FreeComplex":
        """Induction along the finite cover that raises coordinate i to the
        power n_i: every entry p becomes the multiplication-by-p matrix on
        the monomial basis t^e, 0 <= e_i < n_i, over the subring generated by
        the t_i^(n_i) (entries land in that subring, written in the same
        variables).  Pointwise, the induced complex at a point rho splits as
        the direct sum of the original complex at all mu with mu^n = rho^n,
        so loci become unions of torsion translates."""
        n = [int(x) for x in exponents]
        if len(n) != self.context.num_vars:
            raise InputError("induction needs one exponent per variable")
        if any(x < 1 for x in n):
            raise InputError("induction exponents must be positive")
        basis = _box_basis(n)
        index = {e: k for k, e in enumerate(basis)}
        size = len(basis)
        zero = self.context.zero()

        def blow_up(p: LaurentPoly) -> list[list[LaurentPoly]]:
            block = [[zero] * size for _ in range(size)]
            for col, e in enumerate(basis):
                for f, c in p.terms.items():
                    total = tuple(a + b for a, b in zip(f, e))
                    q = tuple(t // ni for t, ni in zip(total, n))
                    rem = tuple(t - qi * ni for t, qi, ni in zip(total, q, n))
                    row = index[rem]
                    mono = self.context.monomial(
                        tuple(qi * ni for qi, ni in zip(q, n)), c
                    )
                    block[row][col] = block[row][col] + mono
            return block

        diffs = {}
        for i in range(self.k_min, self.k_max):
            mat = self.diffs[i]
            rows = mat.nrows * size
            cols = mat.ncols * size
            entries = [[zero] * cols for _ in range(rows)]
            for r in range(mat.nrows):
                for c in range(mat.ncols):
                    e = mat.entries[r][c]
                    if e.is_zero():
                        continue
                    block = blow_up(e)
                    for br in range(size):
                        for bc in range(size):
                            if not block[br][bc].is_zero():
                                entries[r * size + br][c * size + bc] = block[br][bc]
            diffs[i] = Matrix(self.context, rows, cols, entries)
        ranks = [r * size for r in self.ranks]
        return FreeComplex(self.context, self.k_min, self.k_max, ranks, diffs)

    # -- exactness ---------------------------------------------------------------

    def is_exact_range(self, degrees: Iterable[int]):
        """Exactness certificate for a set of negative degrees (a suffix of
        the negative range): true iff rank additivity
        rank(i) = rank d^i + rank d^(i-1) and codim(Fitting ideal at i) >= -i
        hold throughout.  Returns (verdict, per-degree certificate rows)."""
        self.ensure_valid()
        degs = sorted(set(int(d) for d in degrees))
        if any(d >= 0 for d in degs):
            raise InputError("exactness ranges apply to negative degrees only")
        cert = []
        ok = True
        for i in degs:
            r = self.rank(i)
            r_out = self.rank_of_differential(i)
            r_in = self.rank_of_differential(i - 1)
            additive = r == r_out + r_in
            codim = self.fitting_ideal(i).codimension()
            deep_enough = codim >= -i
            cert.append(
                {
                    "degree": i,
                    "rank": r,
                    "rank_out": r_out,
                    "rank_in": r_in,
                    "rank_additivity": additive,
                    "fitting_codim": codim,
                    "codim_bound": -i,
                    "codim_ok": deep_enough,
                }
            )
            ok = ok and additive and deep_enough
        return ok, cert

    def check_assumption(self) -> bool:
        """Whether the complex and its dual both have vanishing cohomology in
        all negative degrees, certified through rank additivity and Fitting
        ideal codimension bounds."""
        self.ensure_valid()
        for cx in (self, self.dual()):
            negs = [i for i in cx.degrees() if i < 0]
            if negs and not cx.is_exact_range(negs)[0]:
                return False
        return True

    def __repr__(self) -> str:
        return (
            f"FreeComplex(degrees [{self.k_min}, {self.k_max}], "
            f"ranks {list(self.ranks)})"
        )


def _tensor_var_map(ctx_a: RingContext, ctx_b: RingContext, first_factor: bool):
    ma, mb = ctx_a.torus_rank, ctx_b.torus_rank
    if first_factor:
        torus = list(range(ma))
        abelian = [ma + mb + k for k in range(2 * ctx_a.abelian_rank)]
    else:
        torus = [ma + k for k in range(mb)]
        abelian = [
            ma + mb + 2 * ctx_a.abelian_rank + k for k in range(2 * ctx_b.abelian_rank)
        ]
    return torus + abelian


def _block_offsets(pieces, left: FreeComplex, right: FreeComplex) -> dict:
    offsets = {}
    acc = 0
    for (i, j) in pieces:
        offsets[(i, j)] = acc
        acc += left.rank(i) * right.rank(j)
    return offsets


def _box_basis(n: Sequence[int]) -> list[tuple[int, ...]]:
    basis = [()]
    for ni in n:
        basis = [e + (k,) for e in basis for k in range(ni)]
    return sorted(basis)
