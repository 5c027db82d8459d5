"""``starprism`` command line.

Exit codes: 0 success, 1 violations found / invalid labeling, 2 usage or
input-format error, 3 exact search ran out of budget.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import construction, solver
from .errors import InvalidParameterError, MalformedLabelingError, StarPrismError, UsageError
from .graphs import (
    all_pairs_distances, build_cycle, build_star, export_graph, parse_graph, prismatic_network,
)
from .labeling import labeling_from_dict, labeling_to_dict, verify, violations_csv
from .plot import render_svg, series_csv

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a..b range, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_seeds(text: str) -> tuple[int, ...]:
    try:
        seeds = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be a comma-separated integer list, got {text!r}")
    if not seeds:
        raise argparse.ArgumentTypeError("at least one seed is required")
    return seeds


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _single(value, flag):
    if value is None:
        return None
    lo, hi = value
    if lo != hi:
        raise UsageError(f"{flag} takes a single integer for this subcommand")
    return lo


def _write(path: str | None, data: str | bytes) -> None:
    if path is None:
        sys.stdout.write(data.decode() if isinstance(data, bytes) else data)
        return
    p = Path(path)
    if isinstance(data, bytes):
        p.write_bytes(data)
    else:
        p.write_text(data)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _require_nm(args) -> tuple[int, int]:
    n, m = _single(args.n, "--n"), _single(args.m, "--m")
    if n is None or m is None:
        raise UsageError("--n and --m are required")
    return n, m


def cmd_build(args) -> int:
    if args.input:
        g = parse_graph(_read(args.input))
    else:
        n, m = _single(args.n, "--n"), _single(args.m, "--m")
        if n is not None and m is not None:
            g = prismatic_network(n, m)
        elif n is not None:
            g = build_star(n)
        elif m is not None:
            g = build_cycle(m)
        else:
            raise UsageError("build needs --n and/or --m, or --input")
    fmt = "adjacency-json" if args.format == "json" else args.format
    _write(args.output, export_graph(g, fmt))
    if not g.in_paper_range:
        print("note: graph is outside the range covered by the closed forms", file=sys.stderr)
    return EXIT_OK


def cmd_label(args) -> int:
    n, m = _require_nm(args)
    dm = all_pairs_distances(prismatic_network(n, m))
    if args.method == "paper":
        report = construction.construct_paper(n, m, dm=dm)
    elif args.method == "heuristic":
        report = construction.construct_heuristic(n, m, args.variant, args.seeds, dm=dm)
    else:
        report = construction.construct_best(n, m, args.seeds, dm=dm)
    _write(args.output, report.to_json(dm))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        data = json.loads(_read(args.input))
    except json.JSONDecodeError as exc:
        raise UsageError(f"labeling JSON is not valid JSON: {exc}") from exc
    graph = parse_graph(_read(args.graph)) if args.graph else None
    try:
        graph, phi = labeling_from_dict(data, graph)
        dm = all_pairs_distances(graph)
        found = verify(dm, phi)
    except MalformedLabelingError as exc:
        print(f"invalid labeling: {exc}", file=sys.stderr)
        return EXIT_VIOLATIONS
    _write(args.output, violations_csv(graph, found))
    summary = (f"{len(found)} violation(s) among {graph.vertex_count} vertices; "
               f"span {max(phi.labels) - min(phi.labels)}; diameter {dm.diameter}")
    print(summary, file=sys.stderr if args.output is None else sys.stdout)
    return EXIT_VIOLATIONS if found else EXIT_OK


def cmd_exact(args) -> int:
    if args.input:
        g = parse_graph(_read(args.input))
    else:
        g = prismatic_network(*_require_nm(args))
    dm = all_pairs_distances(g)
    res = solver.exact_rn(dm, budget=args.budget, seeds=args.seeds)
    data = labeling_to_dict(dm, res.labeling)
    data.update(optimum=res.optimum, status=res.status, nodes_explored=res.nodes_explored,
                elapsed_ms=round(res.elapsed * 1000))
    if g.is_prismatic:
        try:
            data["formula_value"] = construction.closed_form_rn(g.n, g.m).value
        except InvalidParameterError:
            data["formula_value"] = None
    _write(args.output, json.dumps(data, indent=1) + "\n")
    return EXIT_OK if res.proven else EXIT_BUDGET


def cmd_sweep(args) -> int:
    if args.n is None or args.m is None:
        raise UsageError("sweep needs --n a..b and --m a..b")
    records = solver.sweep(args.n, args.m, jobs=args.jobs, exact_vertex_cap=args.exact_cap,
                           budget=args.budget, seeds=args.seeds)
    _write(args.output, solver.sweep_csv(records, timing=args.timing))
    return EXIT_OK


def cmd_plot(args) -> int:
    if not args.input:
        raise UsageError("plot needs --input SWEEP_CSV")
    records = solver.read_sweep_csv(_read(args.input))
    if not records:
        raise UsageError("sweep CSV has no rows")
    _write(args.output, render_svg(records))
    series_path = args.series
    if series_path is None and args.output is not None:
        series_path = str(Path(args.output).with_suffix(".csv"))
    if series_path is not None:
        _write(series_path, series_csv(records))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starprism",
        description="Radio labelings of strong prismatic networks S_n x C_m.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, nm=True, output=True):
        if nm:
            p.add_argument("--n", type=parse_range, help="star leaves (integer or a..b)")
            p.add_argument("--m", type=parse_range, help="cycle length (integer or a..b)")
        if output:
            p.add_argument("--output", help="output path (default stdout)")

    p = sub.add_parser("build", help="export a star, cycle or S_n x C_m")
    common(p)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--input", help="re-export a graph JSON file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("label", help="construct a labeling and report it as JSON")
    common(p)
    p.add_argument("--method", choices=("paper", "heuristic", "best"), default="best")
    p.add_argument("--variant", choices=construction.VARIANTS, default="antipodal")
    p.add_argument("--seeds", type=parse_seeds, default=construction.DEFAULT_SEEDS)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("verify", help="check a labeling JSON against the radio condition")
    common(p, nm=False)
    p.add_argument("--input", required=True, help="labeling JSON")
    p.add_argument("--graph", help="graph JSON for labelings of non-product graphs")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="exact radio number by branch and bound")
    common(p)
    p.add_argument("--input", help="graph JSON instead of --n/--m")
    p.add_argument("--budget", type=float, default=60.0, help="seconds")
    p.add_argument("--seeds", type=parse_seeds, default=construction.DEFAULT_SEEDS)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sweep", help="formula, construction and exact values over a grid")
    common(p)
    p.add_argument("--jobs", type=positive_int, default=1)
    p.add_argument("--budget", type=float, default=60.0, help="seconds per exact solve")
    p.add_argument("--seeds", type=parse_seeds, default=construction.DEFAULT_SEEDS)
    p.add_argument("--exact-cap", type=int, default=15,
                   help="solve exactly only when (n+1)*m is at most this")
    p.add_argument("--timing", action="store_true",
                   help="fill elapsed_ms (output is then no longer reproducible)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="SVG chart of formula_rn from a sweep CSV")
    common(p, nm=False)
    p.add_argument("--input", help="sweep CSV")
    p.add_argument("--series", help="tidy CSV of plotted points (default: OUTPUT with .csv)")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except MalformedLabelingError as exc:
        print(f"invalid labeling: {exc}", file=sys.stderr)
        return EXIT_VIOLATIONS
    except StarPrismError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
