"""Command-line front end.

    fanolines analyze --variety catalog:g14 --format json
    fanolines lines --variety catalog:veronese2
    fanolines sff --variety file:my.ideal --point 1,0,0,0
    fanolines oracle --variety catalog:g14 --field fp:5
    fanolines catalog list

Exit codes: 0 success, 1 input or oracle error, 2 generality failure,
3 Groebner budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import catalog
from .criteria import analyze
from .field import FieldSpec, QQ
from .geometry import (
    DegenerateForm,
    NotOnVariety,
    SingularPoint,
    brute_force_lines,
    line_components,
    lines_points,
    lines_through_point,
    pointed_chart,
    second_fundamental_form,
)
from .groebner import DEFAULT_BUDGET, BudgetExceeded

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_GENERALITY = 2
EXIT_BUDGET = 3


class InputError(Exception):
    pass


def _load(args):
    """Return ``(entry, variety)``; ``entry`` is None for file input."""
    spec = args.variety
    field = FieldSpec.parse(args.field) if args.field else None
    try:
        if spec.startswith("catalog:"):
            entry = catalog.get(spec, field or QQ)
            return entry, entry.variety
        path = spec[len("file:"):] if spec.startswith("file:") else spec
        X = catalog.read_ideal_file(path, field)
        return None, X
    except (OSError, ValueError) as exc:
        raise InputError(f"variety: {exc}") from exc


def _parse_point(text, X):
    try:
        coords = [Fraction(t.strip()) for t in text.split(",")]
        pt = X.point(coords)
    except ValueError as exc:
        raise InputError(f"point: {exc}") from exc
    if not X.contains(pt):
        raise InputError(f"point: {text} does not lie on the variety")
    return pt


def _points(args, entry, X, k):
    """Analysis points: the explicit/base point followed by seeded samples."""
    sampler = entry
    if sampler is None and X.field.characteristic:
        sampler = catalog.CatalogEntry(X.name, X, None)
    if args.point == "auto":
        if entry is not None:
            return entry.points(k, args.seed)
        if sampler is None:
            raise InputError("point: --point auto needs a prime field for file varieties; pass coordinates")
        rng = np.random.default_rng(args.seed)
        return [sampler.sample_point(rng) for _ in range(k)]
    first = _parse_point(args.point, X)
    if sampler is None:
        return [first]
    rng = np.random.default_rng(args.seed)
    return [first] + [sampler.sample_point(rng) for _ in range(k - 1)]


def cmd_analyze(args) -> int:
    entry, X = _load(args)
    points = _points(args, entry, X, max(1, args.samples))
    secant = None
    if entry is not None:
        secant = entry.points(4, args.seed + 1)
    elif X.field.characteristic:
        secant = points + _points(argparse.Namespace(**{**vars(args), "point": "auto", "seed": args.seed + 1}),
                                  entry, X, 3)
    report = analyze(X, points, secant_points=secant, budget=args.budget, seed=args.seed, workers=len(points))
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2, default=str))
    else:
        print(report.to_text())
    if report.diagnostics.get("budget"):
        return EXIT_BUDGET
    if report.generality == "failure":
        return EXIT_GENERALITY
    return EXIT_OK if report.complete else EXIT_ERROR


def _first_point(args, entry, X):
    return _points(args, entry, X, 1)[0]


def cmd_lines(args) -> int:
    entry, X = _load(args)
    pt = _first_point(args, entry, X)
    L = lines_through_point(pointed_chart(X, pt), args.budget)
    print(f"point: {pt}")
    print(f"tangent directions: {', '.join(L.chart.subspace.free_ring.names)}")
    if L.empty:
        print("empty (a = -1)")
    else:
        print(f"a = {L.a}  nondegenerate = {L.nondegenerate}")
    for f in L.ideal.generators:
        print(f"  {f}")
    return EXIT_OK


def cmd_sff(args) -> int:
    entry, X = _load(args)
    pt = _first_point(args, entry, X)
    S = second_fundamental_form(pointed_chart(X, pt))
    print(f"point: {pt}")
    print(f"dim |II| = {S.dim}")
    for q in S.quadrics:
        print(f"  {q}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    entry, X = _load(args)
    if X.field.characteristic == 0:
        raise InputError("field: the oracle needs --field fp:P")
    mismatches = 0
    for pt in _points(args, entry, X, max(1, args.samples)):
        L = lines_through_point(pointed_chart(X, pt), args.budget)
        brute = brute_force_lines(X, pt)
        piped = lines_points(L)
        if brute != piped:
            mismatches += 1
            print(f"mismatch at {pt}: oracle {len(brute)} directions, pipeline {len(piped)}")
        else:
            comps = line_components(brute, X.field.characteristic) if len(brute) <= 200 else None
            extra = f", {comps} line-components" if comps is not None else ""
            print(f"match: {len(brute)} directions at {pt}{extra}")
    return EXIT_ERROR if mismatches else EXIT_OK


def cmd_catalog(args) -> int:
    for name in catalog.CATALOG_NAMES:
        e = catalog.get(name)
        exp = " ".join(f"{k}={v}" for k, v in e.expected.items())
        print(f"catalog:{name:10s} P^{e.variety.N:<3d} {exp}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fanolines", description="Lines through a point, second fundamental form "
                                "and complete-intersection criteria for projective varieties.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--variety", required=True, help="catalog:<name> or file:PATH")
        sp.add_argument("--point", default="auto", help="'auto' or comma-separated coordinates")
        sp.add_argument("--field", default=None, help="q or fp:P (overrides the file header)")
        sp.add_argument("--samples", type=int, default=2, help="number of points (default 2)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="S-pair reduction cap")

    a = sub.add_parser("analyze", help="full report")
    common(a)
    a.add_argument("--format", choices=["text", "json"], default="text")
    a.set_defaults(func=cmd_analyze)
    for name, fn, helptext in [
        ("lines", cmd_lines, "equations of the lines through the point"),
        ("sff", cmd_sff, "second fundamental form quadrics"),
        ("oracle", cmd_oracle, "compare with brute-force enumeration over a prime field"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.set_defaults(func=fn)
    c = sub.add_parser("catalog", help="catalog operations")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (NotOnVariety, SingularPoint, DegenerateForm, catalog.CatalogError, ValueError) as exc:
        print(f"error: {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
