"""Buchberger's algorithm and the ideal-theoretic queries built on it."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .poly import (
    GREVLEX,
    LEX,
    NEG_INF,
    MonomialOrder,
    Polynomial,
    Ring,
    mono_div,
    mono_divides,
    mono_lcm,
)

__all__ = [
    "GREVLEX",
    "LEX",
    "MonomialOrder",
    "BudgetExceeded",
    "Ideal",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "s_polynomial",
    "ideal_dimension",
    "ideal_equal",
    "degree_one_part",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """Raised when Buchberger exceeds its S-pair reduction budget."""


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple

    def __init__(self, ring: Ring, generators: Sequence[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator not in the ideal's ring")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    order: MonomialOrder
    elements: tuple
    reduced: bool = True

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()


def _reduce(terms: dict, basis, order: MonomialOrder, field) -> dict:
    """Full reduction of a term dict by ``basis`` = [(lm, lc_inv, terms)]."""
    norm = field.norm
    key = order.key
    p = dict(terms)
    r: dict = {}
    while p:
        lm = max(p, key=key)
        lc = p[lm]
        for glm, ginv, gterms in basis:
            if mono_divides(glm, lm):
                q = mono_div(lm, glm)
                f = norm(lc * ginv)
                for e, c in gterms.items():
                    e2 = tuple(a + b for a, b in zip(e, q))
                    v = norm(p.get(e2, 0) - f * c)
                    if v:
                        p[e2] = v
                    else:
                        p.pop(e2, None)
                break
        else:
            r[lm] = lc
            del p[lm]
    return r


def _entry(g: Polynomial, order: MonomialOrder):
    lm = g.leading_monomial(order)
    return (lm, g.ring.field.inv(g.terms[lm]), g.terms)


def normal_form(f: Polynomial, G: GroebnerBasis | Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of multivariate division by ``G`` (fully reduced)."""
    if isinstance(G, GroebnerBasis):
        order = G.order
        elements = G.elements
    else:
        order = order or GREVLEX
        elements = [g for g in G if not g.is_zero()]
    basis = [_entry(g, order) for g in elements]
    return Polynomial(f.ring, _reduce(f.terms, basis, order, f.ring.field))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    fld = f.ring.field
    m = mono_lcm(lf, lg)
    a = f.mul_term(mono_div(m, lf), fld.inv(f.terms[lf]))
    b = g.mul_term(mono_div(m, lg), fld.inv(g.terms[lg]))
    return a - b


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``.

    Pairs are taken by the normal strategy (smallest lcm first) and pruned
    with Buchberger's product and chain criteria.  Passing ``seed`` picks
    pairs in a random order instead, which must not change the result.
    ``budget`` caps the number of S-pair reductions.
    """
    ring = ideal.ring
    fld = ring.field
    key = order.key
    rng = random.Random(seed) if seed is not None else None

    G: list = []  # entries (lm, lc_inv, terms)
    pairs: set = set()

    def add(terms):
        lm = max(terms, key=key)
        G.append((lm, fld.inv(terms[lm]), terms))
        j = len(G) - 1
        for i in range(j):
            pairs.add((i, j))

    for g in ideal.generators:
        r = _reduce(g.terms, G, order, fld)
        if r:
            add(r)
    if any(sum(e[0]) == 0 for e in G):
        return GroebnerBasis(ring, order, (ring.one(),), True)

    steps = 0
    while pairs:
        if rng is not None:
            pair = rng.choice(sorted(pairs))
        else:
            pair = min(pairs, key=lambda ij: (key(mono_lcm(G[ij[0]][0], G[ij[1]][0])), ij))
        pairs.discard(pair)
        i, j = pair
        li, lj = G[i][0], G[j][0]
        lcm = mono_lcm(li, lj)
        # product criterion: coprime leading monomials
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if mono_divides(G[k][0], lcm):
                if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                    skip = True
                    break
        if skip:
            continue
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"Groebner basis exceeded the budget of {budget} S-pair reductions")
        qi, qj = mono_div(lcm, li), mono_div(lcm, lj)
        s: dict = {}
        norm = fld.norm
        for e, c in G[i][2].items():
            e2 = tuple(a + b for a, b in zip(e, qi))
            s[e2] = norm(s.get(e2, 0) + c * G[i][1])
        for e, c in G[j][2].items():
            e2 = tuple(a + b for a, b in zip(e, qj))
            s[e2] = norm(s.get(e2, 0) - c * G[j][1])
        s = {e: c for e, c in s.items() if c}
        r = _reduce(s, G, order, fld)
        if r:
            if all(x == 0 for x in max(r, key=key)):
                return GroebnerBasis(ring, order, (ring.one(),), True)
            add(r)

    return _reduce_basis(ring, order, [Polynomial(ring, e[2]) for e in G])


def _reduce_basis(ring: Ring, order: MonomialOrder, polys: list) -> GroebnerBasis:
    lms = [p.leading_monomial(order) for p in polys]
    keep = []
    for i, p in enumerate(polys):
        redundant = False
        for j in range(len(polys)):
            if j == i:
                continue
            if mono_divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(p)
    out = []
    for i, p in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        # leading term is not divisible by another lm, so it survives reduction
        out.append(normal_form(p, others, order).monic(order))
    out.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    return GroebnerBasis(ring, order, tuple(out), True)


def _basis(I, order=GREVLEX, budget=DEFAULT_BUDGET) -> GroebnerBasis:
    if isinstance(I, GroebnerBasis):
        return I
    return buchberger(I, order, budget)


def ideal_dimension(I: Ideal | GroebnerBasis, budget: int = DEFAULT_BUDGET):
    """Krull dimension of ``V(I)`` in affine ``k``-space.

    Computed as the largest set of variables containing the support of no
    leading monomial.  Returns ``NEG_INF`` for the unit ideal.
    """
    G = _basis(I, GREVLEX, budget)
    k = G.ring.nvars
    if G.is_unit():
        return NEG_INF
    supports = set()
    for m in G.leading_monomials():
        supports.add(sum(1 << i for i, x in enumerate(m) if x))
    # drop supports that contain another support
    minimal = [s for s in supports if not any(t != s and t & s == t for t in supports)]
    for size in range(k, -1, -1):
        for subset in combinations(range(k), size):
            mask = sum(1 << i for i in subset)
            if all(s & mask != s for s in minimal):
                return size
    return 0


def ideal_equal(I: Ideal, J: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    GI, GJ = buchberger(I, budget=budget), buchberger(J, budget=budget)
    return all(GJ.contains(f) for f in I.generators) and all(GI.contains(f) for f in J.generators)


def degree_one_part(I: Ideal | GroebnerBasis, budget: int = DEFAULT_BUDGET) -> list:
    """Basis of the linear forms in a homogeneous ideal."""
    if isinstance(I, Ideal) and not I.is_homogeneous():
        raise ValueError("degree_one_part needs a homogeneous ideal")
    G = _basis(I, GREVLEX, budget)
    return [g for g in G.elements if g.degree == 1]
