from itertools import product

import numpy as np
import pytest
import sympy as sp

from fanolines.field import GF, QQ
from fanolines.groebner import (
    GREVLEX,
    LEX,
    BudgetExceeded,
    Ideal,
    buchberger,
    degree_one_part,
    ideal_dimension,
    ideal_equal,
    normal_form,
    s_polynomial,
)
from fanolines.poly import NEG_INF, MonomialOrder, Ring, parse

R2 = Ring(("x", "y"))
R4 = Ring.standard(4)


def ideal(ring, *texts):
    return Ideal(ring, [parse(t, ring) for t in texts])


def random_ideal(rng, nvars, field, ngens=3, max_deg=3, max_terms=3):
    R = Ring.standard(nvars, field)
    gens = []
    for _ in range(ngens):
        terms = []
        for _ in range(int(rng.integers(1, max_terms + 1))):
            d = int(rng.integers(1, max_deg + 1))
            e = [0] * nvars
            for _ in range(d):
                e[int(rng.integers(nvars))] += 1
            terms.append((e, int(rng.integers(1, 7))))
        gens.append(R.from_terms(terms))
    return Ideal(R, gens)


def to_sympy(f, syms):
    return sum(sp.Rational(c) * sp.prod([s**k for s, k in zip(syms, e)]) for e, c in f.terms.items())


# -- buchberger -------------------------------------------------------------------


def test_already_a_basis():
    G = buchberger(ideal(R2, "x^2", "x*y"))
    assert set(G.elements) == {parse("x^2", R2), parse("x*y", R2)}


def test_linear_reduction():
    G = buchberger(ideal(R2, "x - y", "x + y"))
    assert set(G.elements) == {parse("x", R2), parse("y", R2)}


def test_twisted_cubic_leading_terms():
    I = ideal(R4, "x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")
    G = buchberger(I)
    assert len(G.elements) == 3
    assert set(G.leading_monomials()) == {(0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)}


def test_twisted_cubic_matches_sympy():
    I = ideal(R4, "x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")
    syms = sp.symbols("x0:4")
    ref = sp.groebner([to_sympy(f, syms) for f in I.generators], *syms, order="grevlex", domain=sp.QQ)
    ours = {sp.expand(to_sympy(g, syms)) for g in buchberger(I).elements}
    assert ours == {sp.expand(g) for g in ref.exprs}


@pytest.mark.parametrize("order,sym_order", [(GREVLEX, "grevlex"), (LEX, "lex")])
@pytest.mark.parametrize("seed", range(15))
def test_matches_sympy_on_random_ideals(order, sym_order, seed):
    rng = np.random.default_rng(seed)
    I = random_ideal(rng, 3, QQ)
    syms = sp.symbols("x0:3")
    ref = sp.groebner([to_sympy(f, syms) for f in I.generators], *syms, order=sym_order, domain=sp.QQ)
    ours = {sp.expand(to_sympy(g, syms)) for g in buchberger(I, order).elements}
    assert ours == {sp.expand(g) for g in ref.exprs}


def test_unit_ideal():
    G = buchberger(ideal(R2, "x", "x + 1"))
    assert G.is_unit() and G.elements == (R2.one(),)
    assert ideal_dimension(G) == NEG_INF


def test_empty_ideal():
    G = buchberger(Ideal(R2, []))
    assert G.elements == ()


def test_budget_error():
    I = ideal(R4, "x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2")
    with pytest.raises(BudgetExceeded):
        buchberger(I, budget=0)


def test_order_priority_permutation():
    order = MonomialOrder("lex", priority=(1, 0))
    G = buchberger(ideal(R2, "x - y^2"), order)
    assert G.elements[0].leading_monomial(order) == (0, 2)


@pytest.mark.parametrize("seed", range(10))
def test_s_polynomials_reduce_to_zero(seed):
    I = random_ideal(np.random.default_rng(100 + seed), 4, GF(7))
    G = buchberger(I)
    for f in I.generators:
        assert G.contains(f)
    for f, g in product(G.elements, repeat=2):
        if f != g:
            assert normal_form(s_polynomial(f, g), G).is_zero()


@pytest.mark.parametrize("seed", range(10))
def test_reduced_basis_independent_of_pair_order(seed):
    I = random_ideal(np.random.default_rng(200 + seed), 4, GF(7))
    base = buchberger(I).elements
    for s in range(3):
        assert buchberger(I, seed=s).elements == base


# -- normal form ------------------------------------------------------------------


def test_normal_form_examples():
    I = ideal(R4, "x0*x2 - x1^2", "x1*x3 - x2^2")
    G = buchberger(I)
    for f in I.generators:
        assert normal_form(f, G).is_zero()
    assert normal_form(R4.one(), G) == R4.one()


@pytest.mark.parametrize("seed", range(10))
def test_normal_form_of_combination(seed):
    rng = np.random.default_rng(seed)
    I = random_ideal(rng, 3, GF(7))
    G = buchberger(I)
    R = I.ring
    f = R.zero()
    for g in G.elements:
        h = random_ideal(rng, 3, GF(7), ngens=1).generators[0].change_ring(R)
        f = f + h * g
    assert normal_form(f, G).is_zero()
    r = normal_form(f + R.gen(0) ** 5, G)
    assert normal_form(r, G) == r


# -- dimension --------------------------------------------------------------------


def test_dimension_examples():
    assert ideal_dimension(Ideal(R4, [])) == 4
    R3 = Ring.standard(3)
    assert ideal_dimension(ideal(R3, "x0", "x1")) == 1
    assert ideal_dimension(ideal(R3, "x0", "x1", "x2^2")) == 0


def _cone_points(ideal_, q):
    """Affine GF(q)-points of V(I) for a monomial ideal (membership only depends on supports)."""
    k = ideal_.ring.nvars
    count = 0
    supports = [[i for i, x in enumerate(next(iter(g.terms))) if x] for g in ideal_.generators]
    # a point with zero set Z satisfies a monomial iff its support meets Z
    for zero_mask in range(1 << k):
        Z = {i for i in range(k) if zero_mask >> i & 1}
        if all(any(i in Z for i in s) for s in supports):
            count += (q - 1) ** (k - len(Z))
    return count


@pytest.mark.parametrize("seed", range(12))
def test_dimension_of_monomial_ideals_by_point_growth(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 5))
    R = Ring.standard(k, GF(5))
    gens = []
    for _ in range(int(rng.integers(1, 4))):
        e = [int(v) for v in rng.integers(0, 3, size=k)]
        if sum(e) == 0:
            e[0] = 1
        gens.append(R.from_terms([(e, 1)]))
    I = Ideal(R, gens)
    dim = ideal_dimension(I)
    # point count over GF(5^e) grows like C * 5^(e*dim); read the exponent off e = 1..3
    counts = [_cone_points(I, 5**e) for e in (1, 2, 3)]
    growth = np.log(counts[2] / counts[1]) / np.log(5)
    assert round(growth) == dim


@pytest.mark.parametrize("seed", range(12))
def test_generic_complete_intersection_dimension(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(3, 7))
    c = int(rng.integers(1, min(3, k - 1) + 1))
    R = Ring.standard(k, GF(101))
    gens = []
    for _ in range(c):
        d = int(rng.integers(1, 3))
        terms = []
        for i in range(k):
            for j in range(i, k):
                e = [0] * k
                e[i] += 1
                if d == 2:
                    e[j] += 1
                elif j != i:
                    continue
                terms.append((e, int(rng.integers(1, 101))))
        gens.append(R.from_terms(terms))
    assert ideal_dimension(Ideal(R, gens)) == k - c


# -- equality and linear part ------------------------------------------------------


def test_ideal_equal_examples():
    assert ideal_equal(ideal(R2, "x^2", "x*y"), ideal(R2, "x*x", "x*y + x^2"))
    assert not ideal_equal(ideal(R2, "x"), ideal(R2, "x^2"))


def test_degree_one_part_examples():
    R3 = Ring.standard(3)
    lin = degree_one_part(ideal(R3, "x0 + x1", "x2^2"))
    assert len(lin) == 1 and lin[0] == parse("x0 + x1", R3)
    assert len(degree_one_part(ideal(R4, "x0 - x1", "x2 + x3 - x0"))) == 2
    with pytest.raises(ValueError):
        degree_one_part(ideal(R3, "x0 + 1"))


def test_degree_one_part_plucker_is_empty():
    from fanolines.catalog import grassmannian_g14

    X = grassmannian_g14().variety
    assert degree_one_part(Ideal(X.ring, X.generators)) == []


def test_lines_of_s10_equal_plucker_ideal():
    from fanolines.catalog import spinor_s10
    from fanolines.geometry import lines_through_point, pointed_chart

    e = spinor_s10()
    L = lines_through_point(pointed_chart(e.variety, e.base_point))
    R = L.ideal.ring
    # free variables follow x12, x13, ..., x45; build the Pluecker ideal from scratch
    pairs = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    var = {pr: R.gen(k) for k, pr in enumerate(pairs)}
    pf = []
    for k in range(1, 6):
        a, b, c, d = [i for i in range(1, 6) if i != k]
        pf.append(var[a, b] * var[c, d] - var[a, c] * var[b, d] + var[a, d] * var[b, c])
    assert ideal_equal(L.ideal, Ideal(R, pf))
