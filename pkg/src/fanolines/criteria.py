"""Numerical criteria on the invariants of a variety, and the analysis driver.

Each predicate is reported as a :class:`Verdict`: whether its hypothesis
holds, the conclusion the theory asserts, and whether the computed
invariants confirm it (``None`` when nothing independent was computed).
Anchors are short statements of the result being checked.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .groebner import DEFAULT_BUDGET, BudgetExceeded
from .geometry import (
    DegenerateForm,
    ProjectiveVariety,
    eq12_check,
    lines_through_point,
    pointed_chart,
    sample_secant_dimension,
    second_fundamental_form,
)

SCHEMA_VERSION = 1

CASE_G14 = "case (a): G(1,4) in P^9"
CASE_S10 = "case (b): S^10 in P^15"
COMPLETE_INTERSECTION = "complete intersection"
CONTRADICTION_WINDOW = "contradiction: quadratic Hartshorne classification (n = 2c)"
CONTRADICTION_HC = "contradiction: Hartshorne conjecture for quadratic manifolds (n >= 2c + 1)"
NO_CLASSIFICATION = "no classification applies"


def degree_sum(degrees: Sequence[int], c: int) -> int:
    """``sum(d_i - 1)`` over the ``c`` largest degrees."""
    degrees = list(degrees)
    if len(degrees) < c:
        raise ValueError(f"need at least c = {c} degrees, got {len(degrees)}")
    if any(a < b for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be sorted in descending order")
    return sum(d - 1 for d in degrees[:c])


@dataclass
class Invariants:
    n: int
    c: int
    degrees: tuple
    a: int
    delta: int | None = None
    dim_ii: int | None = None
    quadric_count: int | None = None
    nondegenerate: bool | None = None
    span_dim: int | None = None
    image_dim: int | None = None
    secant_dim: int | None = None

    @property
    def N(self) -> int:
        return self.n + self.c

    @property
    def m(self) -> int:
        return len(self.degrees)

    @property
    def d(self) -> int:
        return degree_sum(self.degrees, self.c)

    @property
    def quadratic(self) -> bool:
        return bool(self.degrees) and self.degrees[0] == 2

    @property
    def index(self) -> int:
        return self.a + 2

    @property
    def complete_intersection(self) -> bool:
        """``a = n - 1 - d``: the dimension test for complete intersections."""
        return self.a == self.n - 1 - self.d

    @property
    def lines_ci(self) -> bool | None:
        """Whether the lines are cut out as a complete intersection by their quadrics."""
        if self.a < 0 or self.quadric_count is None:
            return None
        return self.n - 1 - self.a == self.quadric_count

    def as_dict(self) -> dict:
        out = asdict(self)
        out["degrees"] = list(self.degrees)
        out.update(N=self.N, m=self.m, d=self.d, quadratic=self.quadratic, index=self.index if self.a >= 0 else None,
                   complete_intersection=self.complete_intersection, lines_ci=self.lines_ci)
        return out


@dataclass
class Verdict:
    name: str
    anchor: str
    hypothesis: bool | None
    conclusion: str
    verified: bool | None = None
    value: object = None
    conjectural: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


def predicate_suite(inv: Invariants) -> list:
    n, c, a, d = inv.n, inv.c, inv.a, inv.d
    quad = inv.quadratic
    covered = a >= 0
    high_a = covered and 2 * a >= n - 1
    ci = inv.complete_intersection
    out = []

    hc = n >= 2 * c + 1
    out.append(Verdict(
        "hartshorne_conjecture",
        "if n >= 2c + 1 then X is a complete intersection (proved for quadratic X)",
        hc,
        "complete intersection",
        verified=(ci if hc and quad else None),
        conjectural=not quad,
    ))

    out.append(Verdict(
        "quadratic_fano",
        "quadratic X with n >= c is Fano",
        quad and n >= c,
        "Fano",
    ))

    cov_hyp = d <= n - 1
    out.append(Verdict(
        "covered_by_lines",
        "d <= n - 1 implies lines through a general point exist",
        cov_hyp,
        "a >= 0",
        verified=covered if cov_hyp else None,
    ))

    qhyp = quad and n >= c + 1
    out.append(Verdict(
        "quadratic_covered_by_lines",
        "quadratic X with n >= c + 1 is covered by lines cut out by c independent quadrics",
        qhyp,
        "a >= 0 and c independent quadrics",
        verified=(covered and inv.quadric_count == c) if qhyp else None,
        value=inv.quadric_count,
    ))

    out.append(Verdict(
        "lines_lower_bound",
        "nonempty lines through x satisfy a >= n - 1 - d",
        covered,
        f"a >= {n - 1 - d}",
        verified=(a >= n - 1 - d) if covered else None,
    ))

    out.append(Verdict(
        "quadratic_lines_equation_count",
        "for quadratic X the lines are cut out scheme-theoretically by at most c quadrics",
        quad and covered,
        f"at most {c} quadrics",
        verified=(inv.quadric_count <= c) if quad and covered and inv.quadric_count is not None else None,
    ))

    ci_hyp = cov_hyp and (not quad or n >= c + 2)
    out.append(Verdict(
        "ci_equivalence",
        "X is a complete intersection iff a = n - 1 - d",
        ci_hyp,
        "complete intersection iff a = n - 1 - d",
        value=ci if ci_hyp else None,
    ))

    ub_hyp = high_a and bool(inv.lines_ci)
    out.append(Verdict(
        "ci_lines_upper_bound",
        "a >= (n-1)/2 and complete-intersection lines imply a <= n - c - 1 and n >= 2c + 1",
        ub_hyp,
        "a <= n - c - 1 and n >= 2c + 1",
        verified=(a <= n - c - 1 and n >= 2 * c + 1) if ub_hyp else None,
    ))

    falt_hyp = quad and high_a and 2 * c <= n - 1
    out.append(Verdict(
        "faltings_on_lines",
        "lines cut out by c <= (n-1)/2 equations form a complete intersection",
        falt_hyp,
        "lines are a complete intersection",
        verified=inv.lines_ci if falt_hyp else None,
    ))

    win_hyp = quad and n == 2 * c and not ci and covered
    window = 4 * a >= 3 * n - 6 and 4 * a < 3 * n - 5
    out.append(Verdict(
        "netsvetaev_window",
        "(3n - 6)/4 <= a < (3n - 5)/4",
        win_hyp,
        "window holds",
        verified=window if win_hyp else None,
        value=window,
    ))

    # X has cyclic Picard group and index a + 2 under the coverage hypotheses
    index_known = ci_hyp and covered
    i = a + 2
    out.append(Verdict(
        "index_from_lines",
        "d <= n - 1 (n >= c + 2 if quadratic) gives Pic = Z and index i = a + 2",
        index_known,
        f"i = {i}",
        value=i if index_known else None,
    ))
    out.append(Verdict(
        "mori_coverage_bound",
        "i(X) > (n+1)/2 forces covering lines",
        index_known and 2 * i > n + 1,
        "covered by lines",
        verified=covered if index_known and 2 * i > n + 1 else None,
    ))
    strong = index_known and 3 * i >= 2 * n + 5
    out.append(Verdict(
        "index_ci_bound",
        "i(X) >= (2n + 5)/3 implies complete intersection",
        strong,
        "complete intersection",
        verified=ci if strong and quad else None,
        conjectural=not quad,
    ))
    if inv.delta is not None and index_known:
        lo = 4 * i >= 3 * (n + 1)
        out.append(Verdict(
            "index_secant_bounds",
            "3(n+1)/4 <= i(X) implies i(X) <= (n + delta)/2",
            lo,
            f"i <= {Fraction(n + inv.delta, 2)}",
            verified=(2 * i <= n + inv.delta) if lo else None,
        ))

    if inv.delta is not None and inv.dim_ii is not None:
        out.append(Verdict(
            "full_second_fundamental_form",
            "secant defective smooth X has dim |II| = c - 1",
            inv.delta >= 1,
            f"dim |II| = {c - 1}",
            verified=(inv.dim_ii == c - 1) if inv.delta >= 1 else None,
        ))
    if inv.delta is not None and inv.image_dim is not None and inv.secant_dim is not None:
        res = eq12_check(n, inv.secant_dim, inv.image_dim)
        out.append(Verdict(
            "tangential_dimension_identity",
            "dim TX = n + 1 + dim(image of |II|), with TX = SX when delta > 0",
            inv.delta >= 1,
            f"{inv.secant_dim} = {n} + 1 + {inv.image_dim}",
            verified=(res.consistent and res.image_matches_defect) if inv.delta >= 1 else None,
        ))

    # conjectures: hypothesis only
    fano = (quad and n >= c) or covered
    out.append(Verdict("conjecture_hcf", "n >= 2c + 1 and X Fano imply complete intersection",
                       hc and fano, "complete intersection", conjectural=True))
    span_codim = None
    if covered and inv.span_dim is not None:
        span_codim = inv.span_dim - a
    out.append(Verdict(
        "conjecture_hcl",
        "a >= (n-1)/2 and a > 2 codim(lines, span) imply the lines are a complete intersection",
        bool(high_a and span_codim is not None and a > 2 * span_codim),
        "lines are a complete intersection",
        conjectural=True,
    ))
    out.append(Verdict(
        "conjecture_lines_ci",
        "covered by lines with complete-intersection lines implies X complete intersection",
        bool(covered and inv.lines_ci),
        "complete intersection",
        conjectural=True,
    ))
    return out


def classify_hartshorne(inv: Invariants) -> str:
    n, c, a = inv.n, inv.c, inv.a
    if not inv.quadratic or a < 0:
        return NO_CLASSIFICATION
    if a == n - 1 - c:
        return COMPLETE_INTERSECTION
    if n == 2 * c:
        window = 4 * a >= 3 * n - 6 and 4 * a < 3 * n - 5
        if window and n % 4 == 2 and 4 * a == 3 * (n - 2):
            if n == 6:
                return CASE_G14
            if n == 10:
                return CASE_S10
        return CONTRADICTION_WINDOW
    if n >= 2 * c + 1:
        return CONTRADICTION_HC
    return NO_CLASSIFICATION


# -- orchestration ------------------------------------------------------------


@dataclass
class PointResult:
    point: tuple
    a: int
    dim_ii: int | None
    nondegenerate: bool | None
    quadric_count: int | None
    span_dim: int
    image_dim: int | None
    lines: object = field(repr=False, default=None)
    sff: object = field(repr=False, default=None)


@dataclass
class AnalysisReport:
    variety: str
    field: str
    invariants: Invariants | None
    verdicts: list
    classification: str | None
    generality: str
    seed: int | None
    timings: dict
    complete: bool
    diagnostics: dict = field(default_factory=dict)
    points: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.complete and self.generality != "failure"

    def verdict(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "variety": self.variety,
            "field": self.field,
            "invariants": self.invariants.as_dict() if self.invariants else None,
            "verdicts": [v.as_dict() for v in self.verdicts],
            "classification": self.classification,
            "generality": self.generality,
            "seed": self.seed,
            "timings": self.timings,
            "complete": self.complete,
            "diagnostics": self.diagnostics,
        }

    def to_text(self) -> str:
        lines = [f"variety: {self.variety} over {self.field}"]
        inv = self.invariants
        if inv is not None:
            lines.append(
                f"n={inv.n} c={inv.c} N={inv.N} m={inv.m} degrees={list(inv.degrees)} d={inv.d} a={inv.a}"
                f" i={inv.index if inv.a >= 0 else '-'}"
                f" delta={inv.delta if inv.delta is not None else 'unknown'}"
                f" dim|II|={inv.dim_ii if inv.dim_ii is not None else '-'}"
            )
            lines.append(
                f"quadratic={inv.quadratic} quadrics={inv.quadric_count} nondegenerate={inv.nondegenerate}"
                f" complete_intersection={inv.complete_intersection}"
            )
        lines.append(f"generality: {self.generality}")
        for v in self.verdicts:
            tag = " [conjectural]" if v.conjectural else ""
            lines.append(
                f"  {v.name:34s} hyp={_fmt(v.hypothesis):5s} verified={_fmt(v.verified):5s}"
                f" value={_fmt(v.value)}{tag}"
            )
        lines.append(f"classification: {self.classification}")
        if not self.complete:
            lines.append(f"INCOMPLETE: {self.diagnostics.get('error', '')}")
        return "\n".join(lines)


def _fmt(x) -> str:
    return "-" if x is None else str(x)


def analyze_point(X: ProjectiveVariety, x, budget: int = DEFAULT_BUDGET, seed: int = 0) -> PointResult:
    chart = pointed_chart(X, x)
    L = lines_through_point(chart, budget)
    try:
        S = second_fundamental_form(chart)
        dim_ii = S.dim
        image = S.image_dimension(np.random.default_rng(seed))
    except DegenerateForm:
        S, dim_ii, image = None, None, None
    span_dim = L.n - 1 - len(L.linear_part)
    return PointResult(chart.point, L.a, dim_ii, L.nondegenerate, L.quadric_count, span_dim, image, L, S)


def analyze(
    X: ProjectiveVariety,
    points: Sequence,
    secant_points: Sequence | None = None,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
    secant_pairs: int = 3,
    workers: int = 1,
) -> AnalysisReport:
    """Run the whole pipeline at each point and evaluate the criteria.

    Invariants must agree across ``points``; otherwise the report carries a
    generality failure and no verdicts.  ``secant_points`` (default: the
    analysis points) feed the secant-dimension sampling.
    """
    timings: dict = {}
    name = X.name or "variety"
    report = AnalysisReport(name, str(X.field), None, [], None, "unchecked", seed, timings, False)
    if not points:
        raise ValueError("need at least one point")

    t0 = time.perf_counter()
    try:
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            results = list(pool.map(lambda p: analyze_point(X, p, budget, seed or 0), points))
    except BudgetExceeded as exc:
        report.diagnostics["error"] = f"lines: {exc}"
        report.diagnostics["budget"] = True
        return report
    timings["lines"] = time.perf_counter() - t0
    report.points = results

    keys = {(r.a, r.dim_ii, r.nondegenerate) for r in results}
    if len(results) < 2:
        report.generality = "unchecked (single point)"
    elif len(keys) > 1:
        report.generality = "failure"
        report.diagnostics["per_point"] = [
            {"a": r.a, "dim_ii": r.dim_ii, "nondegenerate": r.nondegenerate} for r in results
        ]
        report.complete = True
        return report
    else:
        report.generality = "ok"

    r0 = results[0]
    inv = Invariants(
        n=X.n,
        c=X.c,
        degrees=X.degrees,
        a=r0.a,
        dim_ii=r0.dim_ii,
        quadric_count=r0.quadric_count,
        nondegenerate=r0.nondegenerate,
        span_dim=r0.span_dim,
        image_dim=r0.image_dim,
    )

    t0 = time.perf_counter()
    spts = list(secant_points) if secant_points is not None else list(points)
    try:
        est = sample_secant_dimension(X, spts, secant_pairs)
        inv.secant_dim = est.value
        inv.delta = 2 * inv.n + 1 - est.value
        report.diagnostics["secant_samples"] = est.samples
        report.diagnostics["secant_sampled"] = True
        report.diagnostics["secant_agree"] = est.agree
    except ValueError as exc:
        report.diagnostics["secant"] = f"unknown: {exc}"
    timings["secant"] = time.perf_counter() - t0

    report.invariants = inv
    report.verdicts = predicate_suite(inv)
    report.classification = classify_hartshorne(inv)
    report.diagnostics["lines_equations"] = [str(f) for f in r0.lines.ideal.generators]
    # quadric counts assume no generator is redundant; that is taken on trust
    report.diagnostics["generators_minimal"] = "not verified"
    report.diagnostics["lower_bound_holds"] = inv.a < 0 or inv.a >= inv.n - 1 - inv.d
    report.complete = True
    return report
