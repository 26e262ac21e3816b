"""Sparse multivariate polynomials with exact coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
field elements.  Rings are tiny value objects holding variable names and the
coefficient field; two polynomials can only be combined when their rings are
equal.

The module also carries the chart machinery used on projective varieties:
splitting a polynomial into homogeneous pieces, moving a point to
``(1:0:...:0)`` and dehomogenizing, and restricting to a linear subspace.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .field import FieldSpec, QQ

NEG_INF = -math.inf
"""Degree of the zero polynomial."""

Monomial = tuple  # exponent vector, one nonnegative int per ring variable


# -- monomial orders ----------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic or lexicographic order.

    ``priority`` lists variable indices from most to least significant; the
    default is the natural order ``x0 > x1 > ...``.
    """

    kind: str = "grevlex"
    priority: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Monomial):
        """Sort key; larger key means larger monomial."""
        if self.priority is not None:
            e = tuple(e[i] for i in self.priority)
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-x for x in reversed(e)))

    def leading(self, terms):
        return max(terms, key=self.key)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


# -- rings --------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    names: tuple
    field: FieldSpec = QQ

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @classmethod
    def standard(cls, nvars: int, field: FieldSpec = QQ, prefix: str = "x", start: int = 0):
        return cls(tuple(f"{prefix}{i}" for i in range(start, start + nvars)), field)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.names.index(name))

    def from_terms(self, terms) -> "Polynomial":
        """Build from an iterable of ``(exponents, coefficient)`` pairs, summing repeats."""
        f = self.field
        out: dict = {}
        for e, c in terms:
            e = tuple(e)
            out[e] = out.get(e, 0) + f.convert(c)
        return Polynomial(self, {e: f.norm(c) for e, c in out.items() if f.norm(c) != 0})

    def linear_form(self, coeffs: Sequence) -> "Polynomial":
        terms = []
        for i, c in enumerate(coeffs):
            e = [0] * self.nvars
            e[i] = 1
            terms.append((e, c))
        return self.from_terms(terms)

    def parse(self, text: str) -> "Polynomial":
        return parse(text, self)

    def with_field(self, field: FieldSpec) -> "Ring":
        return Ring(self.names, field)


# -- polynomials --------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial.

    ``terms`` maps exponent tuples to nonzero coefficients.  Do not mutate it.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def coefficient(self, e: Monomial):
        return self.terms.get(tuple(e), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def variables(self) -> set:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return order.leading(self.terms)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    # arithmetic

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Polynomial(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f.convert(c) if not isinstance(c, int) or f.characteristic else c
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: f.norm(v * c) for e, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        norm = self.ring.field.norm
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, mono)): norm(v * c) for e, v in self.terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        norm = self.ring.field.norm
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: norm(c) for e, c in out.items() if norm(c) != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # calculus and evaluation

    def diff(self, i: int) -> "Polynomial":
        norm = self.ring.field.norm
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                v = norm(c * e[i])
                if v:
                    out[tuple(e2)] = v
        return Polynomial(self.ring, out)

    def evaluate(self, point: Sequence):
        f = self.ring.field
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total += t
        return f.norm(total)

    def substitute(self, images: Sequence["Polynomial"], ring: Ring | None = None) -> "Polynomial":
        """Compose with ``x_i -> images[i]``; the result lives in ``ring``."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if ring is None:
            ring = images[0].ring if images else self.ring
        powers: list = [dict() for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        result = ring.zero()
        for e, c in self.terms.items():
            t = ring.constant(c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def homogeneous_part(self, j: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == j})

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Reinterpret coefficients in ``ring`` (same number of variables)."""
        if ring.nvars != self.ring.nvars:
            raise ValueError("variable count mismatch")
        return ring.from_terms(self.terms.items())

    # printing

    def to_string(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        pieces = []
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append(("- " if neg else "+ ") + body)
        s = " ".join(pieces)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


# -- parsing ------------------------------------------------------------------


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def parse(text: str, ring: Ring) -> Polynomial:
    """Parse an expression in ``ring``'s variable names.

    Grammar: integers, ``p/q`` literals, ``+ - * ^`` (``**`` also accepted),
    parentheses and unary minus.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        pos += 1
        return tok

    def expr():
        result = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term():
        result = unary()
        while peek() == ("op", "*"):
            take()
            result = result * unary()
        return result

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            k = take("num")[1]
            return base**k
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            if peek() == ("op", "/"):
                take()
                den = take("num")[1]
                if den == 0:
                    raise ParseError("division by zero")
                return ring.constant(Fraction(val, den))
            return ring.constant(val)
        if kind == "name":
            take()
            if val not in ring.names:
                raise ParseError(f"unknown variable {val!r}")
            return ring.var(val)
        if (kind, val) == ("op", "("):
            take()
            inner = expr()
            take("op", ")")
            return inner
        raise ParseError(f"unexpected token {val!r}")

    try:
        result = expr()
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
    if pos != len(toks):
        raise ParseError(f"trailing input at token {toks[pos][1]!r}")
    return result


# -- graded pieces and charts -------------------------------------------------


def graded_parts(f: Polynomial) -> list:
    """``parts[j]`` is the degree-``j`` homogeneous piece; ``[]`` for zero."""
    if f.is_zero():
        return []
    return [f.homogeneous_part(j) for j in range(int(f.degree) + 1)]


def affine_ring(ring: Ring, prefix: str = "y") -> Ring:
    """The ring of ``N`` affine coordinates ``y1..yN`` for ``N+1`` projective ones."""
    return Ring.standard(ring.nvars - 1, ring.field, prefix=prefix, start=1)


def chart_pivot(point: Sequence) -> int:
    for i, x in enumerate(point):
        if x != 0:
            return i
    raise ValueError("the zero vector is not a projective point")


def chart_images(point: Sequence, ring: Ring, target: Ring) -> list:
    """Images of the projective coordinates in the affine chart centred at ``point``.

    With pivot ``k`` (first nonzero coordinate) and ``s`` the transposition
    ``(0 k)``: ``x_k -> p_k``, ``x_j -> p_j + y_{s(j)}`` for ``j != k``.
    """
    fld = ring.field
    pt = [fld.convert(v) for v in point]
    k = chart_pivot(pt)
    images = []
    for j in range(ring.nvars):
        c = target.constant(pt[j])
        if j == k:
            images.append(c)
        else:
            sj = k if j == 0 else j
            images.append(c + target.gen(sj - 1))
    return images


def translate_chart(f: Polynomial, point: Sequence, target: Ring | None = None) -> Polynomial:
    """Move ``point`` to ``(1:0:...:0)`` and dehomogenize.

    The constant term of the result is ``f(point)``.
    """
    if len(point) != f.ring.nvars:
        raise ValueError("point has the wrong number of coordinates")
    target = target or affine_ring(f.ring)
    return f.substitute(chart_images(point, f.ring, target), target)


def chart_direction(point: Sequence, y: Sequence, field: FieldSpec) -> tuple:
    """Ambient vector of the chart direction ``y`` (inverse of the shear's linear part)."""
    k = chart_pivot(point)
    v = []
    for j in range(len(point)):
        if j == k:
            v.append(0)
        else:
            sj = k if j == 0 else j
            v.append(field.norm(y[sj - 1]))
    return tuple(v)


def coefficient_matrix(polys: Sequence[Polynomial]):
    """Rows of coefficients over the sorted union of monomials."""
    monos = sorted({e for f in polys for e in f.terms}, key=GREVLEX.key, reverse=True)
    return [[f.terms.get(e, 0) for e in monos] for f in polys], monos


@dataclass
class LinearSubspace:
    """Common zero set of independent linear forms, parameterized by free variables.

    ``images[i]`` writes variable ``i`` as a linear form in the free variables,
    living in ``free_ring``.
    """

    ring: Ring
    constraints: list
    pivots: list
    free: list
    free_ring: Ring
    images: list = dc_field(repr=False)

    @classmethod
    def from_constraints(cls, constraints: Sequence[Polynomial], ring: Ring, independent: bool = True):
        fld = ring.field
        for g in constraints:
            if not g.is_zero() and (g.degree != 1 or not g.is_homogeneous()):
                raise ValueError("constraints must be homogeneous linear forms")
        rows = [[g.coefficient(_unit(i, ring.nvars)) for i in range(ring.nvars)] for g in constraints]
        rref, pivots = linalg.row_reduce(rows, fld)
        if independent and len(pivots) != len(constraints):
            raise ValueError("constraints are linearly dependent")
        free = [i for i in range(ring.nvars) if i not in pivots]
        free_ring = Ring(tuple(ring.names[i] for i in free), fld)
        images: list = [None] * ring.nvars
        for j, i in enumerate(free):
            images[i] = free_ring.gen(j)
        for row, pc in zip(rref, pivots):
            images[pc] = free_ring.linear_form([fld.norm(-row[i]) for i in free])
        return cls(ring, list(constraints), pivots, free, free_ring, images)

    @property
    def dim(self) -> int:
        return len(self.free)

    def restrict(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.images, self.free_ring)

    def lift(self, v: Sequence) -> tuple:
        """Full coordinate vector of the point with free coordinates ``v``."""
        return tuple(g.evaluate(v) for g in self.images)


def _unit(i, n):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def restrict_to_subspace(f: Polynomial, constraints: Sequence[Polynomial]) -> Polynomial:
    """Restrict ``f`` to the zero set of independent linear ``constraints``.

    Pivot variables are solved for and substituted; the result is in the
    remaining (free) variables, which keep their names.
    """
    return LinearSubspace.from_constraints(constraints, f.ring).restrict(f)


def linear_rank(forms: Iterable[Polynomial], quadratic: bool = False) -> int:
    """Rank of the coefficient matrix of linear (or, if flagged, quadratic) forms."""
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return 0
    want = 2 if quadratic else 1
    for f in forms:
        if f.degree != want or not f.is_homogeneous():
            raise ValueError(f"expected homogeneous forms of degree {want}")
    rows, _ = coefficient_matrix(forms)
    return linalg.rank(rows, forms[0].ring.field)


def independent_subset(forms: Sequence[Polynomial]) -> list:
    """A maximal linearly independent sublist, preserving input order."""
    chosen: list = []
    r = 0
    for f in forms:
        if f.is_zero():
            continue
        rows, _ = coefficient_matrix(chosen + [f])
        nr = linalg.rank(rows, f.ring.field)
        if nr > r:
            chosen.append(f)
            r = nr
    return chosen
