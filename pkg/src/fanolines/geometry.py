"""Pointwise geometry of a projective variety given by equations.

At a point ``x`` the equations are moved to ``(1:0:...:0)`` and split into
homogeneous pieces ``f = f^1 + f^2 + ...``.  The linear pieces cut out the
tangent space; the higher pieces restricted to it cut out the cone over the
lines through ``x``, and the quadratic pieces span the second fundamental
form.  Secant dimensions come from spans of pairs of tangent spaces.

:func:`brute_force_lines` is an independent check over a small prime field.
It never uses charts or Groebner bases: it tests ``f(x + t v) = 0`` directly
for every tangent direction ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from . import linalg
from .field import FieldSpec
from .groebner import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    GroebnerBasis,
    Ideal,
    buchberger,
    degree_one_part,
    ideal_dimension,
)
from .poly import (
    LinearSubspace,
    Polynomial,
    Ring,
    affine_ring,
    chart_direction,
    chart_images,
    chart_pivot,
    graded_parts,
    independent_subset,
)


class NotOnVariety(ValueError):
    pass


class SingularPoint(ValueError):
    pass


class DegenerateForm(ValueError):
    pass


@dataclass(frozen=True)
class ProjectiveVariety:
    """``X = V(generators)`` in ``P^N``, generators sorted by descending degree.

    ``dim`` is the declared dimension; when omitted it is computed with a
    Groebner basis the first time :attr:`n` is read.
    """

    ring: Ring
    generators: tuple
    dim: int | None = None
    name: str = ""

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator not in the variety's ring")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise ValueError(f"generator is not homogeneous: {g}")
            gens.append(g)
        gens.sort(key=lambda g: -g.degree)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def from_strings(cls, equations: Sequence[str], nvars: int, field: FieldSpec, dim=None, name="", names=None):
        ring = Ring(tuple(names), field) if names else Ring.standard(nvars, field)
        return cls(ring, tuple(ring.parse(s) for s in equations), dim, name)

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def N(self) -> int:
        return self.ring.nvars - 1

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def degrees(self) -> tuple:
        return tuple(int(g.degree) for g in self.generators)

    @cached_property
    def computed_dim(self) -> int:
        d = ideal_dimension(Ideal(self.ring, self.generators))
        return -1 if d == -np.inf else int(d) - 1

    @property
    def n(self) -> int:
        return self.dim if self.dim is not None else self.computed_dim

    @property
    def c(self) -> int:
        return self.N - self.n

    def validate_dimension(self) -> bool:
        return self.dim is None or self.dim == self.computed_dim

    def point(self, coords: Sequence) -> tuple:
        if len(coords) != self.ring.nvars:
            raise NotOnVariety(f"expected {self.ring.nvars} coordinates, got {len(coords)}")
        return tuple(self.field.convert(v) for v in coords)

    def contains(self, coords: Sequence) -> bool:
        x = self.point(coords)
        if all(v == 0 for v in x):
            return False
        return all(g.evaluate(x) == 0 for g in self.generators)

    def jacobian(self, coords: Sequence) -> list:
        x = self.point(coords)
        return [[g.diff(j).evaluate(x) for j in range(self.ring.nvars)] for g in self.generators]

    def tangent_basis(self, coords: Sequence) -> list:
        """Basis of the affine cone over the embedded tangent space at ``coords``."""
        return linalg.nullspace(self.jacobian(coords), self.ring.nvars, self.field)

    def is_smooth_at(self, coords: Sequence) -> bool:
        return linalg.rank(self.jacobian(coords), self.field) == self.c

    def linear_change(self, matrix: Sequence[Sequence]) -> "ProjectiveVariety":
        """The variety ``{z : M z in X}``."""
        R = self.ring
        images = [R.linear_form(row) for row in matrix]
        gens = tuple(g.substitute(images, R) for g in self.generators)
        return ProjectiveVariety(R, gens, self.dim, self.name)

    def with_field(self, field: FieldSpec) -> "ProjectiveVariety":
        R = self.ring.with_field(field)
        return ProjectiveVariety(R, tuple(g.change_ring(R) for g in self.generators), self.dim, self.name)


@dataclass
class PointedChart:
    variety: ProjectiveVariety
    point: tuple
    pivot: int
    affine_ring: Ring
    affine_generators: list
    parts: list
    tangent_constraints: list
    jacobian_rank: int
    subspace: LinearSubspace = dc_field(repr=False)

    @property
    def smooth(self) -> bool:
        return self.jacobian_rank == self.variety.c

    def restricted_parts(self, degree: int) -> list:
        """Degree-``degree`` pieces of all generators restricted to the tangent space."""
        out = []
        for ps in self.parts:
            if degree < len(ps):
                out.append(self.subspace.restrict(ps[degree]))
        return out

    def ambient_direction(self, free_coords: Sequence) -> tuple:
        """Ambient vector (normalised) of the tangent direction with given free coordinates."""
        y = self.subspace.lift(free_coords)
        return canonical_direction(chart_direction(self.point, y, self.variety.field), self.variety.field)


def pointed_chart(X: ProjectiveVariety, x: Sequence) -> PointedChart:
    pt = X.point(x)
    if not X.contains(pt):
        raise NotOnVariety(f"point {x} does not lie on the variety")
    A = affine_ring(X.ring)
    images = chart_images(pt, X.ring, A)
    gens = [g.substitute(images, A) for g in X.generators]
    parts = [graded_parts(g) for g in gens]
    linear = [ps[1] for ps in parts if len(ps) > 1 and not ps[1].is_zero()]
    constraints = independent_subset(linear)
    sub = LinearSubspace.from_constraints(constraints, A)
    chart = PointedChart(X, pt, chart_pivot(pt), A, gens, parts, constraints, len(constraints), sub)
    if chart.jacobian_rank > X.c:
        raise ValueError(
            f"Jacobian rank {chart.jacobian_rank} exceeds codimension {X.c}; declared dimension is wrong"
        )
    return chart


@dataclass
class LinesScheme:
    """Cone over the lines through the point, inside the tangent directions.

    ``a`` is the projective dimension (``-1`` when there are no lines).
    """

    chart: PointedChart
    ideal: Ideal
    basis: GroebnerBasis
    a: int
    nondegenerate: bool | None
    linear_part: list
    quadric_count: int | None
    rank_by_degree: dict

    @property
    def n(self) -> int:
        return self.chart.subspace.dim

    @property
    def empty(self) -> bool:
        return self.a < 0


def lines_through_point(chart: PointedChart, budget: int = DEFAULT_BUDGET) -> LinesScheme:
    """Equations of the lines through the chart's point.

    Every piece of degree >= 2 of every generator is restricted to the
    tangent space; the affine cone over the lines is their common zero set.
    """
    if not chart.smooth:
        raise SingularPoint(
            f"Jacobian rank {chart.jacobian_rank} < codimension {chart.variety.c} at {chart.point}"
        )
    sub = chart.subspace
    R = sub.free_ring
    top = max((len(ps) for ps in chart.parts), default=0)
    equations = []
    rank_by_degree = {}
    for j in range(2, top):
        rj = [f for f in chart.restricted_parts(j) if not f.is_zero()]
        rank_by_degree[j] = len(independent_subset(rj))
        equations.extend(rj)
    I = Ideal(R, equations)
    G = buchberger(I, budget=budget)
    k = ideal_dimension(G)
    a = -1 if k == -np.inf else int(k) - 1
    lin = degree_one_part(G)
    quadratic = all(d == 2 for d in chart.variety.degrees)
    qcount = rank_by_degree.get(2, 0) if quadratic else None
    return LinesScheme(chart, I, G, a, (not lin) if a >= 0 else None, lin, qcount, rank_by_degree)


@dataclass
class SecondFundamentalForm:
    quadrics: list
    base_locus: Ideal

    @property
    def dim(self) -> int:
        """Projective dimension of the linear system."""
        return len(self.quadrics) - 1

    def image_dimension(self, rng=None, trials: int = 4) -> int:
        """Dimension of the image of the rational map given by the quadrics.

        Generic rank of the Jacobian of ``v -> (q_1(v), ..., q_r(v))``, minus
        one; sampled at random points, maximum taken.
        """
        if not self.quadrics:
            return -1
        rng = rng if rng is not None else np.random.default_rng(0)
        R = self.base_locus.ring
        fld = R.field
        partials = [[q.diff(i) for i in range(R.nvars)] for q in self.quadrics]
        best = 0
        for _ in range(trials):
            v = [fld.random_element(rng, bound=50) for _ in range(R.nvars)]
            rows = [[d.evaluate(v) for d in row] for row in partials]
            best = max(best, linalg.rank(rows, fld))
        return best - 1


def second_fundamental_form(chart: PointedChart) -> SecondFundamentalForm:
    if not chart.smooth:
        raise SingularPoint(f"point {chart.point} is singular")
    qs = independent_subset([f for f in chart.restricted_parts(2) if not f.is_zero()])
    if not qs:
        raise DegenerateForm("all quadratic pieces vanish on the tangent space")
    return SecondFundamentalForm(qs, Ideal(chart.subspace.free_ring, qs))


# -- secant dimension ---------------------------------------------------------


def secant_dimension(X: ProjectiveVariety, x: Sequence, y: Sequence) -> int:
    """Projective dimension of the span of the tangent spaces at ``x`` and ``y``."""
    n = X.n
    bases = []
    for p in (x, y):
        if not X.contains(p):
            raise NotOnVariety(f"point {p} does not lie on the variety")
        B = X.tangent_basis(p)
        if len(B) != n + 1:
            raise SingularPoint(f"point {p} is singular")
        bases.extend(B)
    return linalg.rank(bases, X.field) - 1


@dataclass
class SecantEstimate:
    samples: list
    value: int
    sampled: bool = True

    @property
    def agree(self) -> bool:
        return len(set(self.samples)) == 1


def sample_secant_dimension(X: ProjectiveVariety, points: Sequence, pairs: int = 3) -> SecantEstimate:
    """Maximum of :func:`secant_dimension` over up to ``pairs`` pairs of distinct points."""
    pts = [X.point(p) for p in points]
    dims = []
    for p, q in combinations(range(len(pts)), 2):
        if len(dims) >= pairs:
            break
        if _proportional(pts[p], pts[q], X.field):
            continue
        dims.append(secant_dimension(X, pts[p], pts[q]))
    if not dims:
        raise ValueError("need at least two distinct points to sample the secant variety")
    return SecantEstimate(dims, max(dims))


def _proportional(u, v, field: FieldSpec) -> bool:
    return linalg.rank([list(u), list(v)], field) < 2


@dataclass
class Eq12Result:
    secant_dim: int
    image_dim: int
    n: int
    delta: int

    @property
    def rhs(self) -> int:
        return self.n + 1 + self.image_dim

    @property
    def consistent(self) -> bool:
        return self.secant_dim == self.rhs

    @property
    def image_matches_defect(self) -> bool:
        return self.image_dim == self.n - self.delta


def eq12_check(n: int, secant_dim: int, image_dim: int) -> Eq12Result:
    """Tangential-variety identity ``dim SX = n + 1 + dim(image of |II|)``.

    Only meaningful when the secant defect is positive (then the tangent and
    secant varieties coincide).
    """
    return Eq12Result(secant_dim, image_dim, n, 2 * n + 1 - secant_dim)


# -- finite-field oracle --------------------------------------------------------

ORACLE_MAX_P = 13
ORACLE_MAX_N = 6


def canonical_direction(v: Sequence, field: FieldSpec) -> tuple:
    for c in v:
        if c != 0:
            inv = field.inv(c)
            return tuple(field.norm(x * inv) for x in v)
    raise ValueError("zero direction")


def projective_point_chunks(nvars: int, p: int, chunk: int = 1 << 18):
    """Normalised representatives of ``P^{nvars-1}(F_p)`` in blocks of at most ``chunk`` rows."""
    for lead in range(nvars):
        tail = nvars - lead - 1
        total = p**tail
        powers = p ** np.arange(tail - 1, -1, -1, dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            block = np.zeros((idx.shape[0], nvars), dtype=np.int64)
            block[:, lead] = 1
            block[:, lead + 1 :] = (idx[:, None] // powers[None, :]) % p
            yield block


def projective_points(nvars: int, p: int) -> np.ndarray:
    """All normalised representatives of ``P^{nvars-1}(F_p)``, one per row."""
    blocks = list(projective_point_chunks(nvars, p, chunk=p ** max(nvars - 1, 0) or 1))
    return np.concatenate(blocks) if blocks else np.zeros((0, 0), dtype=np.int64)


def evaluate_many(f: Polynomial, pts: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` over GF(p) at every row of ``pts``."""
    p = f.ring.field.characteristic
    out = np.zeros(pts.shape[0], dtype=np.int64)
    for e, c in f.terms.items():
        t = np.full(pts.shape[0], c % p, dtype=np.int64)
        for i, k in enumerate(e):
            for _ in range(k):
                t = (t * pts[:, i]) % p
        out = (out + t) % p
    return out


def _require_oracle_field(field: FieldSpec):
    p = field.characteristic
    if p == 0:
        raise ValueError("the brute-force oracle needs a prime field")
    if p > ORACLE_MAX_P:
        raise BudgetExceeded(f"oracle limited to p <= {ORACLE_MAX_P}")
    return p


def brute_force_lines(X: ProjectiveVariety, x: Sequence, max_n: int = ORACLE_MAX_N) -> set:
    """Directions ``v`` of lines ``{x + t v}`` contained in ``X``, by enumeration.

    Returns canonical ambient representatives (coordinate at the first
    nonzero entry of ``x`` set to zero, first nonzero entry 1).
    """
    fld = X.field
    p = _require_oracle_field(fld)
    if max(X.degrees, default=0) >= p:
        raise ValueError("field too small: need p > max degree for the t-interpolation test")
    pt = X.point(x)
    if not X.contains(pt):
        raise NotOnVariety(f"point {x} does not lie on the variety")
    k = chart_pivot(pt)
    kernel = X.tangent_basis(pt)
    # complement of x inside the tangent cone: kill the pivot coordinate
    inv = fld.inv(pt[k])
    shifted = [[fld.norm(v[j] - v[k] * inv * pt[j]) for j in range(len(pt))] for v in kernel]
    rref, _ = linalg.row_reduce(shifted, fld)
    n = len(rref)
    if n != X.n:
        raise SingularPoint(f"point {x} is singular")
    if n > max_n:
        raise BudgetExceeded(f"oracle limited to n <= {max_n}, got n = {n}")
    B = np.array(rref, dtype=np.int64)
    X0 = np.array(pt, dtype=np.int64)
    out = set()
    for lam in projective_point_chunks(n, p):
        V = (lam @ B) % p
        alive = np.ones(V.shape[0], dtype=bool)
        for g in X.generators:
            for t in range(1, int(g.degree) + 1):
                idx = np.flatnonzero(alive)
                P = (X0[None, :] + t * V[idx]) % p
                alive[idx] = evaluate_many(g, P) == 0
        out.update(canonical_direction(tuple(int(c) for c in row), fld) for row in V[alive])
    return out


def lines_points(lines: LinesScheme, max_n: int = ORACLE_MAX_N) -> set:
    """GF(p)-points of the cone ideal, as canonical ambient directions."""
    chart = lines.chart
    p = _require_oracle_field(chart.variety.field)
    n = lines.n
    if n > max_n:
        raise BudgetExceeded(f"oracle limited to n <= {max_n}, got n = {n}")
    out = set()
    for pts in projective_point_chunks(n, p):
        alive = np.ones(pts.shape[0], dtype=bool)
        for f in lines.ideal.generators:
            idx = np.flatnonzero(alive)
            alive[idx] = evaluate_many(f, pts[idx]) == 0
        out.update(chart.ambient_direction([int(c) for c in row]) for row in pts[alive])
    return out


def line_components(directions: set, p: int) -> int:
    """Classes of directions under "the line joining them lies in the set".

    Counts irreducible components when the set is a disjoint union of linear
    spaces (e.g. a point and a line); a diagnostic only.
    """
    dirs = list(directions)
    index = {d: i for i, d in enumerate(dirs)}
    parent = list(range(len(dirs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    fld = FieldSpec(p)
    for i, j in combinations(range(len(dirs)), 2):
        if find(i) == find(j):
            continue
        u, w = dirs[i], dirs[j]
        on_line = all(
            canonical_direction([(a + t * b) % p for a, b in zip(u, w)], fld) in index for t in range(1, p)
        )
        if on_line:
            parent[find(i)] = find(j)
    return len({find(i) for i in range(len(dirs))})
