"""Built-in varieties with explicit equations and point samplers.

Every entry checks at construction time that sampled points of its
parameterization satisfy all equations.  The spinor tenfold's bilinear
equations are not written down by hand: their signs are recovered from the
parameterization and rejected unless a unique pattern fits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from pathlib import Path
from typing import Callable

import numpy as np

from .field import FieldSpec, GF, QQ
from .geometry import ProjectiveVariety
from .poly import Polynomial, Ring, independent_subset, parse

MAX_VARIABLES = 20
LOAD_SAMPLES = 8


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    variety: ProjectiveVariety
    base_point: tuple
    parameterization: Callable | None = None
    expected: dict = dc_field(default_factory=dict)
    note: str = ""

    @property
    def field(self) -> FieldSpec:
        return self.variety.field

    def sample_point(self, rng, tries: int = 200) -> tuple:
        """A random point of the variety (smooth, not proportional to the base point)."""
        X = self.variety
        if self.parameterization is None and X.field.characteristic:
            # rejection sampling hits a point with probability about p^-c
            tries = max(tries, min(20 * X.field.characteristic ** X.c, 100_000))
        for _ in range(tries):
            if self.parameterization is not None:
                pt = self.parameterization(rng)
            else:
                pt = tuple(X.field.random_element(rng) for _ in range(X.ring.nvars))
            if pt is None or all(v == 0 for v in pt) or not X.contains(pt):
                continue
            if X.is_smooth_at(pt):
                return X.point(pt)
        raise CatalogError(f"could not sample a smooth point of {self.name}")

    def points(self, k: int, seed: int = 0) -> list:
        """The base point followed by ``k - 1`` seeded samples."""
        rng = np.random.default_rng(seed)
        pts = [self.base_point]
        while len(pts) < k:
            pts.append(self.sample_point(rng))
        return pts

    def check(self, samples: int = LOAD_SAMPLES, seed: int = 12345):
        X = self.variety
        if not X.contains(self.base_point):
            raise CatalogError(f"{self.name}: base point is not on the variety")
        if self.parameterization is None:
            return
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            pt = self.parameterization(rng)
            if pt is None or all(v == 0 for v in pt):
                continue
            if not X.contains(pt):
                raise CatalogError(f"{self.name}: parameterized point {pt} fails the equations")


def _finish(entry: CatalogEntry) -> CatalogEntry:
    if entry.variety.ring.nvars > MAX_VARIABLES:
        raise CatalogError(f"{entry.name} needs more than {MAX_VARIABLES} variables")
    entry.check()
    return entry


def _rand(field, rng, k):
    return [field.random_element(rng) for _ in range(k)]


# -- quadrics -----------------------------------------------------------------


def quadric(n: int, field: FieldSpec = QQ) -> CatalogEntry:
    """Smooth quadric ``x0*x_{N} + x1*x_{N-1} + ... (+ middle^2)`` of dimension ``n``."""
    if n < 1:
        raise CatalogError("quadric dimension must be >= 1")
    N = n + 1
    R = Ring.standard(N + 1, field)
    x = R.gens()
    q = R.zero()
    for i in range((N + 1) // 2):
        q = q + x[i] * x[N - i]
    if N % 2 == 0:
        q = q + x[N // 2] * x[N // 2]
    X = ProjectiveVariety(R, (q,), n, f"quadric{n}")

    def param(rng):
        v = _rand(field, rng, N)
        if v[0] == 0:
            return None
        rest = q.evaluate(v + [0])
        return tuple(v) + (field.div(-rest, v[0]),)

    base = (1,) + (0,) * N
    expected = dict(n=n, c=1, a=n - 2, delta=n, dim_ii=0, complete_intersection=True)
    return _finish(CatalogEntry(f"quadric{n}", X, X.point(base), param, expected, "smooth quadric hypersurface"))


# -- Segre and Veronese ---------------------------------------------------------


def _minor(M, r, s):
    return M[r[0]][s[0]] * M[r[1]][s[1]] - M[r[0]][s[1]] * M[r[1]][s[0]]


def segre(a: int, b: int, field: FieldSpec = QQ) -> CatalogEntry:
    """``P^a x P^b`` as the 2x2 minors of an ``(a+1) x (b+1)`` matrix."""
    names = [f"z{i}{j}" for i in range(a + 1) for j in range(b + 1)]
    R = Ring(tuple(names), field)
    M = [[R.var(f"z{i}{j}") for j in range(b + 1)] for i in range(a + 1)]
    gens = [_minor(M, r, s) for r in combinations(range(a + 1), 2) for s in combinations(range(b + 1), 2)]
    X = ProjectiveVariety(R, tuple(gens), a + b, f"segre{a}_{b}")

    def param(rng):
        u, v = _rand(field, rng, a + 1), _rand(field, rng, b + 1)
        return tuple(field.norm(ui * vj) for ui in u for vj in v)

    base = (1,) + (0,) * (len(names) - 1)
    n = a + b
    c = (a + 1) * (b + 1) - 1 - n
    expected = dict(n=n, c=c, a=max(a, b) - 1, delta=2, dim_ii=c - 1)
    return _finish(CatalogEntry(f"segre{a}_{b}", X, X.point(base), param, expected, "Segre embedding, 2x2 minors"))


def veronese2(n: int, field: FieldSpec = QQ) -> CatalogEntry:
    """Quadratic Veronese ``v_2(P^n)``: 2x2 minors of the symmetric catalecticant."""
    idx = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    R = Ring(tuple(f"z{i}{j}" for i, j in idx), field)
    S = [[R.var(f"z{min(i, j)}{max(i, j)}") for j in range(n + 1)] for i in range(n + 1)]
    minors = [_minor(S, r, s) for r in combinations(range(n + 1), 2) for s in combinations(range(n + 1), 2)]
    gens = independent_subset(minors)
    name = "veronese2" if n == 2 else f"veronese2_{n}"
    X = ProjectiveVariety(R, tuple(gens), n, name)

    def param(rng):
        u = _rand(field, rng, n + 1)
        return tuple(field.norm(u[i] * u[j]) for i, j in idx)

    base = (1,) + (0,) * (len(idx) - 1)
    c = len(idx) - 1 - n
    expected = dict(n=n, c=c, a=-1, delta=1, dim_ii=c - 1)
    return _finish(CatalogEntry(name, X, X.point(base), param, expected, "quadratic Veronese embedding"))


# -- Grassmannian and spinor variety ------------------------------------------


def _pf4(p, a, b, c, d):
    """Pfaffian of the 4x4 skew matrix on indices a<b<c<d, entries ``p(i, j)``."""
    return p(a, b) * p(c, d) - p(a, c) * p(b, d) + p(a, d) * p(b, c)


def _sub_pfaffians(p, idx):
    """Pfaffians of the 4x4 principal minors, one per deleted index."""
    return [_pf4(p, *[j for j in idx if j != k]) for k in idx]


def grassmannian_g14(field: FieldSpec = QQ) -> CatalogEntry:
    """``G(1,4)`` in ``P^9``: the five 4x4 sub-Pfaffians of a 5x5 skew matrix."""
    pairs = list(combinations(range(5), 2))
    R = Ring(tuple(f"p{i}{j}" for i, j in pairs), field)
    gens = _sub_pfaffians(lambda i, j: R.var(f"p{i}{j}"), range(5))
    X = ProjectiveVariety(R, tuple(gens), 6, "g14")

    def param(rng):
        m = [_rand(field, rng, 5), _rand(field, rng, 5)]
        return tuple(field.norm(m[0][i] * m[1][j] - m[0][j] * m[1][i]) for i, j in pairs)

    base = (1,) + (0,) * 9
    expected = dict(n=6, c=3, a=3, delta=4, index=5, dim_ii=2, complete_intersection=False,
                    classification="case (a): G(1,4) in P^9")
    return _finish(CatalogEntry("g14", X, X.point(base), param, expected, "Plucker embedding of G(1,4)"))


_S10_PAIRS = list(combinations(range(1, 6), 2))


def _skew_point(field, rng):
    a = {pr: field.random_element(rng) for pr in _S10_PAIRS}
    pf = _sub_pfaffians(lambda i, j: a[(i, j)], range(1, 6))
    return (1,) + tuple(a[pr] for pr in _S10_PAIRS) + tuple(field.norm(v) for v in pf)


@lru_cache(maxsize=None)
def spinor_signs(samples: int = 50, seed: int = 7) -> tuple:
    """Signs ``s[i][j]`` with ``sum_j s_ij x_ij y_j = 0`` on the spinor parameterization.

    Found by testing every sign pattern (first sign fixed to +1) against
    ``samples`` random points over GF(7); exactly one pattern must survive.
    """
    F = GF(7)
    rng = np.random.default_rng(seed)
    pts = [_skew_point(F, rng) for _ in range(samples)]
    pos = {pr: 1 + k for k, pr in enumerate(_S10_PAIRS)}
    result = []
    for i in range(1, 6):
        others = [j for j in range(1, 6) if j != i]
        fits = []
        for bits in range(8):
            s = [1] + [(-1) ** ((bits >> t) & 1) for t in range(3)]
            ok = all(
                sum(sj * pt[pos[(min(i, j), max(i, j))]] * pt[10 + j] for sj, j in zip(s, others)) % 7 == 0
                for pt in pts
            )
            if ok:
                fits.append(tuple(s))
        if len(fits) != 1:
            raise CatalogError(f"spinor sign derivation failed for row {i}: {len(fits)} patterns fit")
        result.append(dict(zip(others, fits[0])))
    return tuple(tuple(sorted(r.items())) for r in result)


def spinor_s10(field: FieldSpec = QQ) -> CatalogEntry:
    """Spinor tenfold ``S^10`` in ``P^15``.

    Coordinates ``x0, x_ij (1 <= i < j <= 5), y1..y5``; equations
    ``x0*y_i - Pf_i(x)`` and the five bilinear relations ``sum_j +-x_ij*y_j``.
    """
    names = ["x0"] + [f"x{i}{j}" for i, j in _S10_PAIRS] + [f"y{i}" for i in range(1, 6)]
    R = Ring(tuple(names), field)
    xv = lambda i, j: R.var(f"x{i}{j}")  # noqa: E731
    pf = _sub_pfaffians(xv, range(1, 6))
    x0 = R.var("x0")
    gens = [x0 * R.var(f"y{i}") - pf[i - 1] for i in range(1, 6)]
    for i, row in enumerate(spinor_signs(), start=1):
        g = R.zero()
        for j, s in row:
            g = g + xv(min(i, j), max(i, j)) * R.var(f"y{j}") * s
        gens.append(g)
    X = ProjectiveVariety(R, tuple(gens), 10, "s10")
    base = (1,) + (0,) * 15
    expected = dict(n=10, c=5, a=6, delta=6, index=8, dim_ii=4, quadric_count=5, complete_intersection=False,
                    classification="case (b): S^10 in P^15")
    return _finish(CatalogEntry("s10", X, X.point(base), lambda rng: _skew_point(field, rng), expected,
                                "spinor tenfold, pure spinors parameterized by skew 5x5 matrices"))


# -- random complete intersections --------------------------------------------


def _monomials(nvars, d):
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def random_ci(degrees, N: int, field: FieldSpec, base_point=None, seed: int = 0, tries: int = 10) -> CatalogEntry:
    """Random forms of the given degrees through ``base_point``, smooth there."""
    degrees = tuple(sorted(degrees, reverse=True))
    if field.characteristic == 0:
        raise CatalogError("random complete intersections are generated over prime fields")
    c = len(degrees)
    n = N - c
    d = sum(di - 1 for di in degrees)
    R = Ring.standard(N + 1, field)
    pt = tuple(field.convert(v) for v in (base_point or (1,) + (0,) * N))
    k = next(i for i, v in enumerate(pt) if v != 0)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        gens = []
        for di in degrees:
            f = R.from_terms((e, field.random_element(rng)) for e in _monomials(N + 1, di))
            val = f.evaluate(pt)
            if val:
                corr = field.div(val, pow(pt[k], di, field.characteristic))
                f = f - R.gen(k) ** di * corr
            gens.append(f)
        X = ProjectiveVariety(R, tuple(gens), n, f"ci{''.join(map(str, degrees))}_P{N}")
        if X.is_smooth_at(pt):
            expected = dict(n=n, c=c, d=d, a=n - 1 - d, complete_intersection=True)
            return _finish(CatalogEntry(X.name, X, pt, None, expected, f"random complete intersection, seed {seed}"))
    raise CatalogError(f"no smooth random complete intersection of type {degrees} after {tries} tries")


# -- lookup -------------------------------------------------------------------

CATALOG_NAMES = ["quadric2", "quadric3", "quadric4", "segre1_1", "segre1_2", "segre1_3", "veronese2", "g14", "s10"]


def get(name: str, field: FieldSpec = QQ) -> CatalogEntry:
    """Resolve ``quadric<n>``, ``segre<a>_<b>``, ``veronese2[_<n>]``, ``g14`` or ``s10``."""
    name = name.removeprefix("catalog:")
    if name == "g14":
        return grassmannian_g14(field)
    if name == "s10":
        return spinor_s10(field)
    if name == "veronese2":
        return veronese2(2, field)
    m = re.fullmatch(r"quadric(\d+)", name)
    if m:
        return quadric(int(m.group(1)), field)
    m = re.fullmatch(r"segre(\d+)_(\d+)", name)
    if m:
        return segre(int(m.group(1)), int(m.group(2)), field)
    m = re.fullmatch(r"veronese2_(\d+)", name)
    if m:
        return veronese2(int(m.group(1)), field)
    raise CatalogError(f"unknown catalog entry {name!r}")


def entries(field: FieldSpec = QQ) -> list:
    return [get(n, field) for n in CATALOG_NAMES]


# -- ideal files --------------------------------------------------------------


def read_ideal_file(path, field: FieldSpec | None = None) -> ProjectiveVariety:
    """Read the line format ``ring N+1 q|fp:P`` followed by one generator per line.

    ``#`` starts a comment.  An optional ``dim n`` line declares the
    dimension.  ``field`` overrides the header's field when given.
    """
    path = Path(path)
    ring = None
    dim = None
    gens = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ring is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "ring":
                raise CatalogError(f"{path}:{lineno}: expected header 'ring N+1 q|fp:P'")
            fld = field or FieldSpec.parse(parts[2])
            ring = Ring.standard(int(parts[1]), fld)
            continue
        if line.startswith("dim "):
            dim = int(line.split()[1])
            continue
        try:
            f = parse(line, ring)
        except ValueError as exc:
            raise CatalogError(f"{path}:{lineno}: {exc}") from exc
        if not f.is_homogeneous():
            raise CatalogError(f"{path}:{lineno}: generator is not homogeneous")
        gens.append(f)
    if ring is None:
        raise CatalogError(f"{path}: missing ring header")
    return ProjectiveVariety(ring, tuple(gens), dim, path.stem)


def write_ideal_file(X: ProjectiveVariety, path):
    lines = [f"ring {X.ring.nvars} {X.field}"]
    if X.dim is not None:
        lines.append(f"dim {X.dim}")
    if X.ring.names != Ring.standard(X.ring.nvars).names:
        std = Ring.standard(X.ring.nvars, X.field)
        gens = [Polynomial(std, g.terms) for g in X.generators]
    else:
        gens = X.generators
    lines += [str(g) for g in gens]
    Path(path).write_text("\n".join(lines) + "\n")
