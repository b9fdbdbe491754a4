"""Command line front end: ``gallai build|extract|verify|sweep|stats|render``.

Exit status: 0 success (or witness valid), 1 verification failed,
2 usage error, 3 resource limit, 4 file format error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .coloring import loads_coloring
from .construction import (
    ResourceBudget,
    default_base,
    loads_base,
    recursion_stats,
    target_set,
)
from .errors import ColoringError, FormatError, ResourceLimit
from .geometry import dumps_pointset, loads_pointset
from .proof import extract_delta, extract_phi
from .render import render_svg
from .sweep import dumps_sweep, exhaustive_sweep, random_sweep
from .verify import check_delta_witness, check_phi_witness
from .witness import Witness, dumps_witness, loads_witness

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_RESOURCE, EXIT_FORMAT = range(5)

log = logging.getLogger("gallai")


class UsageError(Exception):
    pass


def resolve_base(choice: str, needed: int):
    if choice in ("moment", "fig1"):
        return default_base(max(needed, 3), preset=choice)
    path = Path(choice)
    if not path.exists():
        raise UsageError(f"base {choice!r} is neither a preset (moment, fig1) nor a file")
    return loads_base(path.read_text())


def budget_from(args) -> ResourceBudget:
    points = args.max_points
    if points is None and os.environ.get("GALLAI_BUDGET_POINTS"):
        try:
            points = int(os.environ["GALLAI_BUDGET_POINTS"])
        except ValueError:
            raise UsageError("GALLAI_BUDGET_POINTS must be an integer") from None
    defaults = ResourceBudget()
    try:
        return ResourceBudget(
            max_points=points or defaults.max_points,
            max_color_count=args.max_color_count or defaults.max_color_count,
            max_colorings=args.max_colorings or defaults.max_colorings,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_build(args):
    B = resolve_base(args.base, args.n)
    V = target_set(B, args.n, args.k, args.m, budget_from(args))
    _emit(dumps_pointset(V), args.out)
    return EXIT_OK


def cmd_extract(args):
    B = resolve_base(args.base, args.n)
    budget = budget_from(args)
    f = loads_coloring(_read(args.coloring))
    if f.arity != args.k:
        raise UsageError(f"coloring has arity {f.arity}, --k is {args.k}")
    V = target_set(B, args.n, args.k, args.m, budget)
    if args.m is None:
        w = extract_phi(args.n, args.k, f, B, budget)
        report = check_phi_witness(f, w, V, B)
    else:
        w = extract_delta(args.n, args.k, args.m, f, B, budget)
        report = check_delta_witness(f, w, V, B)
    if not report.valid:
        print(f"refusing to write invalid witness: {report.failures}", file=sys.stderr)
        return EXIT_INVALID
    _emit(dumps_witness(w), args.out)
    return EXIT_OK


def cmd_verify(args):
    w = loads_witness(_read(args.witness))
    f = loads_coloring(_read(args.coloring))
    V = loads_pointset(_read(args.set))
    B = resolve_base(args.base, w.n)
    if isinstance(w, Witness):
        report = check_phi_witness(f, w, V, B)
    else:
        report = check_delta_witness(f, w, V, B)
    if report.valid:
        print("valid")
        return EXIT_OK
    print("invalid")
    for where, tag in report.failures:
        print(f"  {tag}: {where}")
    return EXIT_INVALID


def cmd_sweep(args):
    B = resolve_base(args.base, args.n)
    budget = budget_from(args)
    V = target_set(B, args.n, args.k, args.m, budget)
    if args.exhaustive:
        r = exhaustive_sweep(V, args.k, args.n, args.strategy, B, m=args.m,
                             workers=args.workers, budget=budget)
    else:
        r = random_sweep(V, args.k, args.n, args.random, args.seed, B, m=args.m,
                         strategy=args.strategy, workers=args.workers, budget=budget)
    sys.stdout.write(dumps_sweep(r))
    log.info("sweep finished in %.3f s", r.elapsed)
    return EXIT_OK if r.valid else EXIT_INVALID


def cmd_stats(args):
    B = resolve_base(args.base, args.n)
    rows = recursion_stats(B, args.n, args.k, args.m, budget_from(args))
    for row in rows:
        if row.name == "ResourceLimit":
            print(f"resource limit: {row.note}")
            return EXIT_RESOURCE
        line = f"|{row.name}| = {row.size}"
        if row.homotheties is not None:
            line += f"  (homotheties into previous level: {row.homotheties})"
        if row.note:
            line += f"  [{row.note}]"
        print(line)
    return EXIT_OK


def cmd_render(args):
    V = loads_pointset(_read(args.set))
    w = loads_witness(_read(args.witness)) if args.witness else None
    B = resolve_base(args.base, w.n if w else 1) if w else None
    if args.out in (None, "-"):
        render_svg(V, sys.stdout, w, B)
    else:
        with open(args.out, "w") as fh:
            render_svg(V, fh, w, B)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gallai", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, nk=True, m=True):
        p.add_argument("--base", default="moment", help="preset (moment, fig1) or base file")
        p.add_argument("--max-points", type=int)
        p.add_argument("--max-color-count", type=int)
        p.add_argument("--max-colorings", type=int)
        if nk:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--k", type=int, required=True)
        if m:
            p.add_argument("--m", type=int)

    p = sub.add_parser("build", help="write Phi(n,k), or Delta(n,k,m) with --m")
    common(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("extract", help="extract a witness from a coloring file")
    common(p)
    p.add_argument("--coloring", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="check a witness against a coloring and a set")
    common(p, nk=False, m=False)
    p.add_argument("--witness", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="exhaustive or randomized coloring sweep")
    common(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", type=int, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=("extractor", "oracle", "both"), default="extractor")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stats", help="cardinalities of each recursion level")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("render", help="SVG scatter of a set, optionally with a witness")
    common(p, nk=False, m=False)
    p.add_argument("--set", required=True)
    p.add_argument("--witness")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        if isinstance(exc, FormatError):
            print(f"format error: {exc}", file=sys.stderr)
            return EXIT_FORMAT
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        if args.command == "sweep" and exc.quantity == "colorings":
            print("hint: use --random TRIALS for sets this large", file=sys.stderr)
        return EXIT_RESOURCE
    except (FormatError, ColoringError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
