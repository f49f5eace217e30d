"""Command-line front end: family, analyze, verify, census, export.

Every run emits a single JSON document on stdout unless a file format
(graph6 or edge list) was requested.  Exit codes: 0 success, 1 verification
failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import families
from .errors import (
    BudgetError,
    GraphParseError,
    InvariantViolation,
    NoLambdaError,
    ParameterError,
    PreconditionError,
)
from .graphs import Graph, format_edge_list, graph6_encode, graph_to_json_dict, parse_graph_text
from .metacyclic import make_group
from .permgroup import compose, invert, perm_power
from .symmetry import classify

_USAGE_ERRORS = (
    ParameterError,
    BudgetError,
    GraphParseError,
    NoLambdaError,
    PreconditionError,
    InvariantViolation,
    OverflowError,
)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_graph(graph: Graph, fmt: str, out_path: str | None) -> None:
    if fmt == "g6":
        _emit(graph6_encode(graph) + "\n", out_path)
    elif fmt == "edges":
        _emit(format_edge_list(graph), out_path)
    else:
        _emit(json.dumps(graph_to_json_dict(graph)) + "\n", out_path)


def _read_graph(path: str, fmt: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read(), fmt)


def _cmd_family(args: argparse.Namespace) -> int:
    spec = families.FamilySpec(kind=args.kind, t=args.t, m=args.m, n=args.n)
    bg = families.build_family(spec)
    _emit_graph(bg.graph, args.format, args.out)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    graph = _read_graph(args.infile, args.assume_format)
    report = classify(graph)
    _emit(report.to_json() + "\n", args.out)
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    graph = _read_graph(args.infile, args.assume_format)
    _emit_graph(graph, args.format, args.out)
    return 0


def _parse_group(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise ParameterError(f"expected p,m,n,r, got {text!r}")
    return make_group(*(int(x) for x in parts))


def _cmd_census(args: argparse.Namespace) -> int:
    group = _parse_group(args.group)
    result = families.census(group, connected_only=not args.include_disconnected)
    _emit(json.dumps(families.census_to_dict(result, group)) + "\n", args.out)
    return 0


def _verify_arithmetic(args: argparse.Namespace) -> dict:
    group = make_group(args.p, args.m, args.n, args.r)
    perms = group.regular_representation()
    perm_a, perm_b = perms.generators
    els = group.elements()
    rank = group.rank
    cache = {group.gen_a: perm_a, group.gen_b: perm_b}

    def perm_of(g):
        # right-multiplication permutation straight from the arithmetic
        p = cache.get(g)
        if p is None:
            p = tuple(rank(group.mul(h, g)) for h in els)
            cache[g] = p
        return p

    rng = random.Random(args.seed)
    failures = []
    for trial in range(args.trials):
        g = els[rng.randrange(len(els))]
        h = els[rng.randrange(len(els))]
        k = rng.randrange(-group.order, group.order + 1)
        pg, ph = perm_of(g), perm_of(h)
        if perm_of(group.mul(g, h)) != compose(pg, ph):
            failures.append({"check": "mul", "g": group.element_str(g), "h": group.element_str(h)})
        if perm_of(group.inv(g)) != invert(pg):
            failures.append({"check": "inv", "g": group.element_str(g)})
        if perm_of(group.pow(g, k)) != perm_power(pg, k):
            failures.append({"check": "pow", "g": group.element_str(g), "k": k})
        if len(failures) > 10:
            break
    return {
        "target": "arithmetic",
        "group": [args.p, args.m, args.n, args.r],
        "trials": args.trials,
        "seed": args.seed,
        "regular_representation_order": perms.order(),
        "order_matches": perms.order() == group.order,
        "failures": failures,
        "passed": not failures and perms.order() == group.order,
    }


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.target == "lemma51":
        report = families.verify_semisymmetric_family(args.t)
    elif args.target == "lemma52":
        report = families.verify_symmetric_family(args.t)
    else:
        report = _verify_arithmetic(args)
    _emit(json.dumps(report) + "\n", args.out)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicayley",
        description="Bi-Cayley graphs over metacyclic p-groups: build, analyze, verify, census.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_family = sub.add_parser("family", help="emit a named family member")
    p_family.add_argument("--kind", choices=["gamma", "sigma", "abelian"], required=True)
    p_family.add_argument("--t", type=int, default=None, help="parameter for gamma/sigma")
    p_family.add_argument("--m", type=int, default=None, help="abelian family m")
    p_family.add_argument("--n", type=int, default=None, help="abelian family n")
    p_family.add_argument("--format", choices=["g6", "edges", "json"], default="json")
    p_family.add_argument("--out", default=None)
    p_family.set_defaults(func=_cmd_family)

    p_analyze = sub.add_parser("analyze", help="symmetry report for a graph file")
    p_analyze.add_argument("--in", dest="infile", required=True)
    p_analyze.add_argument("--assume-format", choices=["auto", "g6", "edges"], default="auto")
    p_analyze.add_argument("--out", default=None)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_verify = sub.add_parser("verify", help="run a verification target")
    p_verify.add_argument("--target", choices=["lemma51", "lemma52", "arithmetic"], required=True)
    p_verify.add_argument("--t", type=int, default=1)
    p_verify.add_argument("--p", type=int, default=3)
    p_verify.add_argument("--m", type=int, default=2)
    p_verify.add_argument("--n", type=int, default=1)
    p_verify.add_argument("--r", type=int, default=1)
    p_verify.add_argument("--trials", type=int, default=10000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=_cmd_verify)

    p_census = sub.add_parser("census", help="edge-transitive census over a group")
    p_census.add_argument("--group", required=True, help="p,m,n,r")
    p_census.add_argument("--include-disconnected", action="store_true")
    p_census.add_argument("--out", default=None)
    p_census.set_defaults(func=_cmd_census)

    p_export = sub.add_parser("export", help="convert a graph file between formats")
    p_export.add_argument("--in", dest="infile", required=True)
    p_export.add_argument("--assume-format", choices=["auto", "g6", "edges"], default="auto")
    p_export.add_argument("--format", choices=["g6", "edges", "json"], required=True)
    p_export.add_argument("--out", default=None)
    p_export.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
