import json

import pytest
from hypothesis import given, strategies as st

from fanolines import catalog
from fanolines.criteria import (
    CASE_G14,
    CASE_S10,
    COMPLETE_INTERSECTION,
    CONTRADICTION_HC,
    CONTRADICTION_WINDOW,
    NO_CLASSIFICATION,
    SCHEMA_VERSION,
    Invariants,
    analyze,
    classify_hartshorne,
    degree_sum,
    predicate_suite,
)
from fanolines.field import GF, QQ
from fanolines.geometry import ProjectiveVariety
from fanolines.groebner import DEFAULT_BUDGET


def verdicts(inv):
    return {v.name: v for v in predicate_suite(inv)}


# -- degree sum -----------------------------------------------------------------


def test_degree_sum_examples():
    assert degree_sum([2, 2, 2, 2, 2], 3) == 3
    assert degree_sum([3, 2], 2) == 3
    assert degree_sum([4, 3, 2], 1) == 3
    with pytest.raises(ValueError):
        degree_sum([2], 2)
    with pytest.raises(ValueError):
        degree_sum([2, 3], 2)


@given(st.lists(st.integers(1, 9), min_size=1, max_size=8), st.data())
def test_degree_sum_monotone(degrees, data):
    degrees = sorted(degrees, reverse=True)
    c = data.draw(st.integers(1, len(degrees)))
    d = degree_sum(degrees, c)
    assert d >= 0
    if c > 1:
        assert degree_sum(degrees, c - 1) <= d
    raised = [degrees[0] + 1] + degrees[1:]
    assert degree_sum(raised, c) == d + 1


@given(st.lists(st.integers(2, 6), min_size=1, max_size=8), st.data())
def test_degree_sum_equals_c_iff_quadrics(degrees, data):
    degrees = sorted(degrees, reverse=True)
    c = data.draw(st.integers(1, len(degrees)))
    assert (degree_sum(degrees, c) == c) == all(x == 2 for x in degrees[:c])


# -- predicates -----------------------------------------------------------------


def test_g14_predicates():
    inv = Invariants(n=6, c=3, degrees=(2,) * 5, a=3, delta=4, dim_ii=2, quadric_count=3,
                     nondegenerate=True, span_dim=5, image_dim=2, secant_dim=9)
    v = verdicts(inv)
    assert inv.d == 3 and inv.index == 5 and not inv.complete_intersection
    assert v["hartshorne_conjecture"].hypothesis is False
    assert v["covered_by_lines"].verified is True
    assert v["quadratic_covered_by_lines"].verified is True
    assert v["lines_lower_bound"].verified is True
    assert v["ci_equivalence"].value is False
    assert v["netsvetaev_window"].hypothesis and v["netsvetaev_window"].verified
    assert v["index_from_lines"].value == 5
    assert v["mori_coverage_bound"].verified is True
    assert v["index_secant_bounds"].hypothesis is False  # 4i = 20 < 3(n + 1)
    assert v["full_second_fundamental_form"].verified is True
    assert v["tangential_dimension_identity"].verified is True
    assert v["conjecture_hcf"].conjectural


def test_quadric_predicates():
    inv = Invariants(n=4, c=1, degrees=(2,), a=2, delta=4, dim_ii=0, quadric_count=1,
                     nondegenerate=True, span_dim=3, image_dim=0, secant_dim=5)
    v = verdicts(inv)
    assert inv.complete_intersection and inv.lines_ci
    assert v["hartshorne_conjecture"].hypothesis and v["hartshorne_conjecture"].verified
    assert v["ci_equivalence"].value is True
    assert v["index_ci_bound"].hypothesis is False  # i = 4 < 13/3
    assert v["faltings_on_lines"].verified is True
    assert v["index_secant_bounds"].verified is True


def test_veronese_predicates():
    inv = Invariants(n=2, c=3, degrees=(2,) * 6, a=-1, delta=1, dim_ii=2, image_dim=1, secant_dim=4)
    v = verdicts(inv)
    assert v["covered_by_lines"].hypothesis is False
    assert v["lines_lower_bound"].hypothesis is False
    assert v["index_from_lines"].value is None
    assert v["full_second_fundamental_form"].verified is True
    assert classify_hartshorne(inv) == NO_CLASSIFICATION


def test_segre_index_not_claimed():
    # Segre P^1 x P^2 has Picard rank two: the index statements must stay silent
    inv = Invariants(n=3, c=2, degrees=(2, 2, 2), a=1, delta=2, dim_ii=1, quadric_count=2,
                     nondegenerate=True, span_dim=2, image_dim=1, secant_dim=5)
    v = verdicts(inv)
    assert v["index_from_lines"].hypothesis is False
    assert "index_secant_bounds" not in v
    assert all(x.verified is not False for x in v.values())


def test_unknown_delta_omits_secant_verdicts():
    inv = Invariants(n=4, c=1, degrees=(2,), a=2)
    v = verdicts(inv)
    assert "index_secant_bounds" not in v and "tangential_dimension_identity" not in v


# -- classification -------------------------------------------------------------


@pytest.mark.parametrize(
    "n,c,a,expected",
    [
        (6, 3, 3, CASE_G14),
        (10, 5, 6, CASE_S10),
        (8, 4, 5, CONTRADICTION_WINDOW),
        (6, 3, 2, COMPLETE_INTERSECTION),
        (6, 3, 4, CONTRADICTION_WINDOW),
        (7, 3, 5, CONTRADICTION_HC),
        (7, 3, 3, COMPLETE_INTERSECTION),
        (4, 3, 1, NO_CLASSIFICATION),
        (6, 3, -1, NO_CLASSIFICATION),
    ],
)
def test_classify_examples(n, c, a, expected):
    inv = Invariants(n=n, c=c, degrees=(2,) * c, a=a)
    assert classify_hartshorne(inv) == expected


@given(st.integers(1, 30), st.integers(1, 15), st.integers(-1, 30))
def test_named_case_only_inside_window(n, c, a):
    out = classify_hartshorne(Invariants(n=n, c=c, degrees=(2,) * c, a=a))
    if out in (CASE_G14, CASE_S10):
        assert n == 2 * c and 4 * a >= 3 * n - 6 and 4 * a < 3 * n - 5


def test_classify_needs_quadratic():
    assert classify_hartshorne(Invariants(n=6, c=3, degrees=(3, 2, 2), a=3)) == NO_CLASSIFICATION


@given(st.integers(2, 12), st.data())
def test_classify_grid(c, data):
    n = 2 * c
    a = data.draw(st.integers(0, n - 1))
    out = classify_hartshorne(Invariants(n=n, c=c, degrees=(2,) * c, a=a))
    if (n, a) == (6, 3):
        assert out == CASE_G14
    elif (n, a) == (10, 6):
        assert out == CASE_S10
    elif a == n - 1 - c:
        assert out == COMPLETE_INTERSECTION
    else:
        assert out == CONTRADICTION_WINDOW


# -- analysis driver -------------------------------------------------------------


@pytest.mark.parametrize(
    "name,a,delta,dim_ii,ci,classification",
    [
        ("quadric4", 2, 4, 0, True, COMPLETE_INTERSECTION),
        ("segre1_2", 1, 2, 1, False, NO_CLASSIFICATION),
        ("veronese2", -1, 1, 2, False, NO_CLASSIFICATION),
        ("g14", 3, 4, 2, False, CASE_G14),
        ("s10", 6, 6, 4, False, CASE_S10),
    ],
)
def test_analyze_catalog(name, a, delta, dim_ii, ci, classification):
    e = catalog.get(name)
    r = analyze(e.variety, e.points(2, seed=0), secant_points=e.points(4, seed=1), seed=0)
    assert r.ok and r.generality == "ok"
    inv = r.invariants
    assert (inv.a, inv.delta, inv.dim_ii, inv.complete_intersection) == (a, delta, dim_ii, ci)
    assert r.classification == classification
    for v in r.verdicts:
        assert v.verified is not False, v.name


def test_analyze_matches_expected_metadata():
    for e in catalog.entries():
        r = analyze(e.variety, e.points(2), secant_points=e.points(4, seed=5))
        for key, val in e.expected.items():
            if key == "classification":
                assert r.classification == val
            elif hasattr(r.invariants, key):
                assert getattr(r.invariants, key) == val, (e.name, key)
        # a true hypothesis with a computed conclusion is never contradicted
        for v in r.verdicts:
            if v.hypothesis and v.verified is not None:
                assert v.verified, (e.name, v.name)


def test_analyze_over_finite_field():
    e = catalog.get("g14", GF(101))
    r = analyze(e.variety, e.points(3), workers=3)
    assert r.ok and r.invariants.a == 3 and r.classification == CASE_G14


def test_analyze_single_point():
    e = catalog.quadric(3)
    r = analyze(e.variety, [e.base_point], secant_points=e.points(3))
    assert r.generality.startswith("unchecked") and r.complete


def test_generality_failure_on_reducible_variety():
    # a plane union a quadric surface; the two components carry different lines
    X = ProjectiveVariety.from_strings(["x3*(x0*x3 + x1*x2)"], 4, QQ, name="plane+quadric")
    r = analyze(X, [(1, 1, 1, 0), (1, 1, -1, 1)])
    assert r.generality == "failure" and not r.ok
    assert {p["a"] for p in r.diagnostics["per_point"]} == {0, 1}
    assert r.verdicts == []


def test_budget_reported():
    e = catalog.grassmannian_g14()
    r = analyze(e.variety, e.points(2), budget=0)
    assert r.diagnostics["budget"] and not r.complete


def test_report_serialization():
    e = catalog.grassmannian_g14()
    r = analyze(e.variety, e.points(2), secant_points=e.points(4, seed=1), seed=4)
    d = json.loads(json.dumps(r.to_dict(), default=str))
    assert d["schema"] == SCHEMA_VERSION
    assert set(d) >= {"variety", "field", "invariants", "verdicts", "classification", "generality", "seed", "timings"}
    assert d["invariants"]["index"] == 5 and d["seed"] == 4
    text = r.to_text()
    assert "classification: " + CASE_G14 in text
    assert DEFAULT_BUDGET == 10**6


def test_lines_ci_property():
    assert Invariants(n=4, c=1, degrees=(2,), a=2, quadric_count=1).lines_ci
    assert Invariants(n=6, c=3, degrees=(2,) * 5, a=3, quadric_count=3).lines_ci is False
    assert Invariants(n=2, c=3, degrees=(2,) * 6, a=-1, quadric_count=3).lines_ci is None
