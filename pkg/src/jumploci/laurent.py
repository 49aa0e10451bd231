"""Exact multivariate Laurent polynomial arithmetic over the rationals.

A Laurent polynomial is stored as a dictionary mapping exponent vectors
(tuples of ints, possibly negative) to nonzero Fraction coefficients:

    t1^2 * t2^-1 - 3/2   ->   {(2, -1): Fraction(1), (0, 0): Fraction(-3, 2)}

The zero polynomial is the empty dict.  Zero coefficients are never stored,
so two polynomials are equal iff their term dicts are equal; this makes
equality, hashing and zero-testing exact.

Every value is attached to a RingContext fixing the number of variables,
their print names, and the torus/abelian split (the first ``torus_rank``
variables are torus coordinates, the remaining ``2 * abelian_rank`` are
abelian coordinates).  Mixing values from different contexts raises
InputError.

Closed points of the character torus are modeled by TorsionPoint: one pair
(q, theta) per coordinate denoting the complex number q * e^(2*pi*i*theta),
with q a positive rational and theta a rational in [0, 1).  Negative radial
parts are folded into theta on construction, so representations are unique
and equality is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .cyclotomic import Cyclotomic
from .errors import InputError

Exponent = tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class RingContext:
    """Ambient Laurent ring data: variable names and the torus/abelian split."""

    __slots__ = ("num_vars", "var_names", "torus_rank", "abelian_rank")

    def __init__(self, var_names: Sequence[str], torus_rank: int, abelian_rank: int):
        names = tuple(var_names)
        if torus_rank < 0 or abelian_rank < 0:
            raise InputError("torus and abelian ranks must be nonnegative")
        if torus_rank + 2 * abelian_rank != len(names):
            raise InputError(
                f"need torus_rank + 2*abelian_rank == num_vars, got "
                f"{torus_rank} + 2*{abelian_rank} != {len(names)}"
            )
        if len(set(names)) != len(names):
            raise InputError("variable names must be pairwise distinct")
        for n in names:
            if not _NAME_RE.match(n):
                raise InputError(f"invalid variable name {n!r}")
        self.num_vars = len(names)
        self.var_names = names
        self.torus_rank = torus_rank
        self.abelian_rank = abelian_rank

    @classmethod
    def torus(cls, m: int) -> "RingContext":
        """Pure torus context with default names t1..tm."""
        return cls([f"t{i + 1}" for i in range(m)], m, 0)

    @classmethod
    def abelian(cls, g: int) -> "RingContext":
        """Pure abelian context with default names t1..t(2g)."""
        return cls([f"t{i + 1}" for i in range(2 * g)], 0, g)

    @classmethod
    def mixed(cls, m: int, g: int) -> "RingContext":
        return cls([f"t{i + 1}" for i in range(m + 2 * g)], m, g)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingContext)
            and self.var_names == other.var_names
            and self.torus_rank == other.torus_rank
            and self.abelian_rank == other.abelian_rank
        )

    def __hash__(self) -> int:
        return hash((self.var_names, self.torus_rank, self.abelian_rank))

    def __repr__(self) -> str:
        return (
            f"RingContext(vars={','.join(self.var_names)}, "
            f"m={self.torus_rank}, g={self.abelian_rank})"
        )

    # -- element constructors -------------------------------------------------

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return LaurentPoly(self, {(0,) * self.num_vars: c})

    def variable(self, i: int, power: int = 1) -> "LaurentPoly":
        """The monomial t_i^power (0-based index)."""
        if not 0 <= i < self.num_vars:
            raise InputError(f"variable index {i} out of range")
        exp = [0] * self.num_vars
        exp[i] = power
        return LaurentPoly(self, {tuple(exp): Fraction(1)})

    def monomial(self, exponent: Iterable[int], coeff=1) -> "LaurentPoly":
        exp = tuple(int(e) for e in exponent)
        if len(exp) != self.num_vars:
            raise InputError("exponent length does not match variable count")
        c = Fraction(coeff)
        return LaurentPoly(self, {exp: c} if c else {})

    def identity_point(self) -> "TorsionPoint":
        return TorsionPoint(self, [(Fraction(1), Fraction(0))] * self.num_vars)

    def rational_point(self, values: Iterable) -> "TorsionPoint":
        return TorsionPoint(self, [(Fraction(v), Fraction(0)) for v in values])

    def parse(self, text: str) -> "LaurentPoly":
        return parse_poly(self, text)


def _check_same_context(a: "LaurentPoly | TorsionPoint", b: "LaurentPoly | TorsionPoint"):
    if a.context != b.context:
        raise InputError("ring context mismatch")


class LaurentPoly:
    """Immutable Laurent polynomial in canonical form (no zero terms)."""

    __slots__ = ("context", "terms", "_hash")

    def __init__(self, context: RingContext, terms: Mapping[Exponent, Fraction]):
        clean = {}
        n = context.num_vars
        for exp, c in terms.items():
            if c == 0:
                continue
            if len(exp) != n:
                raise InputError("exponent length does not match variable count")
            clean[tuple(exp)] = Fraction(c)
        self.context = context
        self.terms = clean
        self._hash = None

    # -- basic predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        zero_exp = (0,) * self.context.num_vars
        return self.terms == {zero_exp: Fraction(1)}

    def is_constant(self) -> bool:
        zero_exp = (0,) * self.context.num_vars
        return not self.terms or set(self.terms) == {zero_exp}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- ring operations ------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPoly(self.context, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.context, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return LaurentPoly(self.context, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            if not self.is_monomial():
                raise InputError("only monomials are invertible in the Laurent ring")
            ((exp, c),) = self.terms.items()
            inv = LaurentPoly(self.context, {tuple(-e for e in exp): 1 / c})
            return inv ** (-k)
        result = self.context.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            _check_same_context(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.const(other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.context.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.context, tuple(sorted(self.terms.items()))))
        return self._hash

    # -- structure ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending lexicographic order of exponent vectors."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def exponent_span(self) -> tuple[tuple[int, int], ...]:
        """Per-variable (min, max) exponent over all terms; (0, 0) if zero."""
        n = self.context.num_vars
        if not self.terms:
            return ((0, 0),) * n
        lo = [min(e[i] for e in self.terms) for i in range(n)]
        hi = [max(e[i] for e in self.terms) for i in range(n)]
        return tuple(zip(lo, hi))

    # -- semantics ------------------------------------------------------------

    def evaluate(self, point: "TorsionPoint") -> Cyclotomic:
        """Exact value at a torsion point, in Q(zeta_L) for L = lcm of angle
        denominators.  A Laurent monomial is defined at every point since all
        radial parts are nonzero."""
        _check_same_context(self, point)
        L = point.angle_order()
        total = Cyclotomic.rational(L, 0)
        for exp, c in self.terms.items():
            radial = Fraction(1)
            angle = Fraction(0)
            for e, (q, theta) in zip(exp, point.coords):
                radial *= q**e
                angle += e * theta
            k = angle * L
            assert k.denominator == 1
            total = total + Cyclotomic.root_of_unity(L, int(k)).scale(c * radial)
        return total

    def substitute(self, mapping: Sequence[tuple[Fraction, int]]) -> "LaurentPoly":
        """Apply the ring homomorphism t_i -> lam_i * t_i^(n_i).

        ``mapping`` holds one (lam_i, n_i) pair per variable; every lam_i must
        be a nonzero rational and every n_i a nonzero integer, so units map to
        units.
        """
        if len(mapping) != self.context.num_vars:
            raise InputError("substitution must cover every variable")
        pairs = []
        for lam, n in mapping:
            lam = Fraction(lam)
            n = int(n)
            if lam == 0 or n == 0:
                raise InputError("substitution scalars and exponents must be nonzero")
            pairs.append((lam, n))
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            coeff = c
            new_exp = []
            for e, (lam, n) in zip(exp, pairs):
                coeff *= lam**e
                new_exp.append(e * n)
            key = tuple(new_exp)
            s = out.get(key, Fraction(0)) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly(self.context, out)

    def embed(self, target: RingContext, var_map: Sequence[int]) -> "LaurentPoly":
        """Reinterpret in ``target``, sending variable i to target variable
        var_map[i].  Used to combine disjoint rings for external tensors."""
        out = {}
        for exp, c in self.terms.items():
            new_exp = [0] * target.num_vars
            for i, e in enumerate(exp):
                new_exp[var_map[i]] = e
            out[tuple(new_exp)] = c
        return LaurentPoly(target, out)

    # -- printing -------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)})"


class TorsionPoint:
    """Closed point of the character torus with coordinates q * e^(2*pi*i*theta),
    q a positive rational and theta a rational in [0, 1).  Constructors accept
    negative q and fold the sign into theta, so equality is exact."""

    __slots__ = ("context", "coords")

    def __init__(self, context: RingContext, coords: Sequence[tuple[Fraction, Fraction]]):
        if len(coords) != context.num_vars:
            raise InputError("coordinate count does not match variable count")
        norm = []
        for q, theta in coords:
            q = Fraction(q)
            theta = Fraction(theta)
            if q == 0:
                raise InputError("radial part of a torsion point must be nonzero")
            if q < 0:
                q = -q
                theta += Fraction(1, 2)
            theta -= theta.numerator // theta.denominator  # reduce mod 1 into [0,1)
            norm.append((q, theta))
        self.context = context
        self.coords = tuple(norm)

    def angle_order(self) -> int:
        """Least L with all angles in (1/L)Z; 1 when the point is rational."""
        return lcm(*(theta.denominator for _, theta in self.coords), 1)

    def is_rational(self) -> bool:
        return all(theta == 0 for _, theta in self.coords)

    def is_identity(self) -> bool:
        return all(q == 1 and theta == 0 for q, theta in self.coords)

    def __mul__(self, other: "TorsionPoint") -> "TorsionPoint":
        _check_same_context(self, other)
        return TorsionPoint(
            self.context,
            [
                (q1 * q2, th1 + th2)
                for (q1, th1), (q2, th2) in zip(self.coords, other.coords)
            ],
        )

    def inverse(self) -> "TorsionPoint":
        return TorsionPoint(self.context, [(1 / q, -th) for q, th in self.coords])

    def power(self, exponents: Sequence[int]) -> "TorsionPoint":
        """Componentwise powers (q_i, theta_i) -> (q_i^e_i, e_i * theta_i)."""
        if len(exponents) != self.context.num_vars:
            raise InputError("exponent count does not match variable count")
        return TorsionPoint(
            self.context,
            [(q**e, e * th) for (q, th), e in zip(self.coords, exponents)],
        )

    def character_value(self, lattice_vector: Sequence[int]) -> Cyclotomic:
        """Value of the character t -> t^k at this point, k an integer vector."""
        L = self.angle_order()
        radial = Fraction(1)
        angle = Fraction(0)
        for (q, th), k in zip(self.coords, lattice_vector):
            radial *= q**k
            angle += k * th
        num = angle * L
        assert num.denominator == 1
        return Cyclotomic.root_of_unity(L, int(num)).scale(radial)

    def character_is_trivial(self, lattice_vector: Sequence[int]) -> bool:
        return self.character_value(lattice_vector).is_one()

    def embed(self, target: RingContext, var_map: Sequence[int]) -> "TorsionPoint":
        coords = [(Fraction(1), Fraction(0))] * target.num_vars
        for i, pair in enumerate(self.coords):
            coords[var_map[i]] = pair
        return TorsionPoint(target, coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorsionPoint)
            and self.context == other.context
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.context, self.coords))

    def __repr__(self) -> str:
        parts = ", ".join(f"({q},{th})" for q, th in self.coords)
        return f"TorsionPoint({parts})"


# -- text grammar ---------------------------------------------------------
#
# Signed sums of terms  c * v1^e1 * ... * vk^ek  with rational coefficients
# (p or p/q) and integer exponents; '*' separates factors, '^' introduces an
# exponent, whitespace is ignored.  A term may omit the coefficient (t1^2)
# or consist of a bare constant (-3/2).  parse(format(p)) == p.

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*^()])|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[str]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        if m.group("bad"):
            raise InputError(f"unexpected character {m.group('bad')!r} in polynomial")
        tokens.append(m.group("num") or m.group("name") or m.group("op"))
    return tokens


def parse_poly(context: RingContext, text: str) -> LaurentPoly:
    """Parse the polynomial grammar; inverse of format_poly on canonical forms."""
    tokens = _tokenize(text)
    if not tokens:
        raise InputError("empty polynomial text")
    var_index = {name: i for i, name in enumerate(context.var_names)}
    pos = 0
    result = context.zero()

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    while pos < len(tokens):
        sign = Fraction(1)
        while peek() in ("+", "-"):
            if tokens[pos] == "-":
                sign = -sign
            pos += 1
        if peek() is None:
            raise InputError("dangling sign in polynomial")
        coeff = sign
        exp = [0] * context.num_vars
        expect_factor = True
        saw_factor = False
        while expect_factor:
            tok = peek()
            if tok is None:
                break
            if re.fullmatch(r"\d+(/\d+)?", tok):
                coeff *= Fraction(tok)
                pos += 1
                saw_factor = True
            elif tok in var_index:
                vi = var_index[tok]
                pos += 1
                power = 1
                if peek() == "^":
                    pos += 1
                    psign = 1
                    if peek() == "-":
                        psign = -1
                        pos += 1
                    if peek() is None or not re.fullmatch(r"\d+", tokens[pos]):
                        raise InputError("expected integer exponent after '^'")
                    power = psign * int(tokens[pos])
                    pos += 1
                exp[vi] += power
                saw_factor = True
            elif re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok or ""):
                raise InputError(f"unknown variable {tok!r}")
            else:
                raise InputError(f"unexpected token {tok!r} in term")
            if peek() == "*":
                pos += 1
                expect_factor = True
            else:
                expect_factor = False
        if not saw_factor:
            raise InputError("empty term in polynomial")
        result = result + context.monomial(exp, coeff)
    return result


def format_poly(p: LaurentPoly) -> str:
    """Canonical rendering: terms in descending lex order of exponents,
    explicit rational coefficients, '*'-separated variable powers."""
    if p.is_zero():
        return "0"
    names = p.context.var_names
    chunks = []
    for idx, (exp, c) in enumerate(p.sorted_terms()):
        factors = [f"{names[i]}^{e}" if e != 1 else names[i] for i, e in enumerate(exp) if e]
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = "*".join([str(mag)] + factors)
        else:
            body = str(mag)
        if idx == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(chunks)
