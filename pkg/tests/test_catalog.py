import numpy as np
import pytest

from fanolines import catalog
from fanolines.catalog import CatalogError, read_ideal_file, write_ideal_file
from fanolines.field import GF, QQ


@pytest.mark.parametrize("name", catalog.CATALOG_NAMES)
@pytest.mark.parametrize("field", [QQ, GF(7), GF(101)])
def test_entries_load_and_sample(name, field):
    e = catalog.get(name, field)
    X = e.variety
    assert X.contains(e.base_point) and X.is_smooth_at(e.base_point)
    for pt in e.points(3, seed=11)[1:]:
        assert X.contains(pt) and X.is_smooth_at(pt)
    assert X.n == e.expected["n"] and X.c == e.expected["c"]


@pytest.mark.parametrize("name", ["quadric2", "segre1_2", "veronese2", "g14"])
def test_declared_dimension_matches_groebner(name):
    assert catalog.get(name).variety.validate_dimension()


@pytest.mark.parametrize(
    "name,count",
    [("segre1_1", 1), ("segre1_2", 3), ("segre1_3", 6), ("veronese2", 6), ("g14", 5), ("s10", 10)],
)
def test_equation_counts(name, count):
    assert catalog.get(name).variety.m == count


def test_veronese_minors_span_the_ideal():
    from fanolines.groebner import Ideal, ideal_equal

    e = catalog.veronese2(2)
    # every 2x2 minor of the symmetric matrix is in the ideal of the chosen subset
    X = e.variety
    R = X.ring
    z = {nm: R.var(nm) for nm in R.names}
    extra = z["z00"] * z["z12"] - z["z01"] * z["z02"]
    assert ideal_equal(Ideal(R, X.generators), Ideal(R, list(X.generators) + [extra]))


def test_g14_parameterization_over_f7():
    e = catalog.grassmannian_g14(GF(7))
    rng = np.random.default_rng(3)
    for _ in range(50):
        pt = e.parameterization(rng)
        assert all(v == 0 for v in pt) or e.variety.contains(pt)


def test_spinor_signs_unique_and_stable():
    signs = catalog.spinor_signs()
    assert len(signs) == 5 and all(len(row) == 4 for row in signs)
    assert catalog.spinor_signs(samples=80, seed=99) == signs


def test_spinor_equations_rank():
    X = catalog.spinor_s10().variety
    assert X.degrees == (2,) * 10
    assert len(X.tangent_basis(X.point((1,) + (0,) * 15))) == 11


def test_unknown_entry():
    with pytest.raises(CatalogError):
        catalog.get("nonsense")


def test_name_forms():
    assert catalog.get("catalog:quadric5").variety.n == 5
    assert catalog.get("segre2_2").variety.n == 4
    assert catalog.get("veronese2_3").variety.N == 9


@pytest.mark.parametrize("degrees,N", [((2,), 4), ((2, 2), 6), ((3,), 4), ((2, 3), 6)])
def test_random_ci(degrees, N):
    e = catalog.random_ci(degrees, N, GF(7), seed=3)
    X = e.variety
    assert X.degrees == tuple(sorted(degrees, reverse=True))
    assert X.contains(e.base_point) and X.is_smooth_at(e.base_point)
    assert e.expected["a"] == X.n - 1 - sum(d - 1 for d in degrees)


def test_random_ci_deterministic():
    a = catalog.random_ci((2, 2), 6, GF(7), seed=5).variety.generators
    b = catalog.random_ci((2, 2), 6, GF(7), seed=5).variety.generators
    assert a == b


def test_random_ci_needs_prime_field():
    with pytest.raises(CatalogError):
        catalog.random_ci((2,), 4, QQ)


def test_ideal_file_round_trip(tmp_path):
    for name in ["quadric3", "g14"]:
        X = catalog.get(name, GF(7)).variety
        path = tmp_path / f"{name}.ideal"
        write_ideal_file(X, path)
        Y = read_ideal_file(path)
        assert Y.field == GF(7) and Y.dim == X.dim
        assert [g.terms for g in Y.generators] == [g.terms for g in X.generators]


def test_ideal_file_comments_and_override(tmp_path):
    path = tmp_path / "q.ideal"
    path.write_text("# a quadric surface\nring 4 q\n\nx0*x3 - x1*x2  # the equation\n")
    X = read_ideal_file(path)
    assert X.n == 2 and X.field == QQ
    assert read_ideal_file(path, GF(5)).field == GF(5)


@pytest.mark.parametrize(
    "text",
    [
        "x0*x3 - x1*x2\n",
        "ring 4\nx0*x3\n",
        "ring 4 q\nx0^2 - x1\n",
        "ring 4 q\nx0 ** ** 2\n",
        "ring 4 fp:4\nx0*x1\n",
        "",
    ],
)
def test_bad_ideal_files(tmp_path, text):
    path = tmp_path / "bad.ideal"
    path.write_text(text)
    with pytest.raises(ValueError):
        read_ideal_file(path)
