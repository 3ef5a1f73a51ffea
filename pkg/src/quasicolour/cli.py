"""Command-line interface.

Graph arguments are file paths, ``-`` for stdin, or ``examples:NAME`` for a
bundled example.  Exit codes: 0 success, 1 verification failure, 2 argument
error, 3 resource or budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .colouring import colour_quotient, lift_colouring, pipeline
from .corpus import EXAMPLES, example
from .errors import ArgumentError, QuasiColourError
from .io import canonical_json, colouring_to_json, graph_from_json, parse_colouring, parse_periodic_graph, serialize
from .linegraph import check_edge_colouring, line_planarity_check, periodic_edge_colouring, periodic_orientation
from .reduction import reduce_to_3connected
from .render import render_figure, render_svg
from .surfaces import colour_budget, riemann_hurwitz_genus
from .verify import check_periodic, check_proper
from .voltage import build_patch, estimate_ends, patch_connectivity, validate_quotient


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise ArgumentError(f"cannot read {source}: {exc.strerror}", stage="io") from None


def load_graph(source: str, validate: bool = True):
    if source.startswith("examples:"):
        return example(source.split(":", 1)[1])
    text = _read_text(source)
    if validate:
        return parse_periodic_graph(text)
    try:
        return graph_from_json(json.loads(text), validate=False)
    except json.JSONDecodeError:
        return parse_periodic_graph(text)  # raises with line/column


def _emit(args, data: dict, text_keys=None) -> None:
    if args.format in (None, "json"):
        sys.stdout.write(canonical_json(data))
        return
    # tab-delimited key/value lines
    for key in text_keys or sorted(data):
        if key not in data:
            continue
        value = data[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, separators=(",", ":"))
        sys.stdout.write(f"{key}\t{value}\n")


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


def _colour(args, pg):
    kwargs = {}
    if pg.is_fuchsian:
        if args.budget is not None:
            kwargs["max_cosets"] = args.budget
        if args.strategy in ("dsatur", "unique"):
            kwargs["strategy"] = args.strategy
    else:
        if args.budget is not None:
            kwargs["node_budget"] = args.budget
        if getattr(args, "palette_mode", None):
            kwargs["palette_mode"] = args.palette_mode
    return pipeline(pg, **kwargs)


def cmd_validate(args) -> int:
    pg = load_graph(args.graph, validate=False)
    report = validate_quotient(pg)
    _emit(args, report.to_json(pg))
    return 0 if report.ok else 1


def cmd_ends(args) -> int:
    pg = load_graph(args.graph)
    R = args.outer if args.outer is not None else (args.radius or 8)
    ends = estimate_ends(pg, args.inner, R)
    _emit(args, {"ends": ends, "r": args.inner, "R": R})
    return 0


def cmd_reduce(args) -> int:
    pg = load_graph(args.graph)
    final, trace = reduce_to_3connected(pg)
    r0 = args.radius or 4
    kappa = patch_connectivity(build_patch(final, radius=r0), 3)
    data = {
        "steps": len(trace.steps),
        "orbit_counts": [pg.orbits] + [len(s.orbit_map) for s in trace.steps],
        "cases": [s.case for s in trace.steps],
        "final_connectivity": ">=3" if kappa >= 3 else kappa,
        "trace": trace.to_json(),
        "graph": json.loads(serialize(final)),
    }
    if args.output:
        _write(args.output, serialize(final))
    _emit(args, data, ["steps", "orbit_counts", "cases", "final_connectivity"])
    return 0


def cmd_colour(args) -> int:
    pg = load_graph(args.graph)
    pc, report = _colour(args, pg)
    if args.strategy == "unique" and not pg.is_fuchsian:
        q = pc.quotient
        pc = lift_colouring(colour_quotient(q, "unique"), q)
        report = dict(report, strategy="unique", palette=pc.palette)
    colouring = colouring_to_json(pc)
    if args.output:
        _write(args.output, canonical_json(colouring))
    if args.figure:
        render_figure(pg, args.figure, pc, args.radius or 3, f"palette {pc.palette}, index {report['index']}")
    _emit(args, report if args.format == "text" else {"report": report, "colouring": colouring})
    return 0


def cmd_edge_colour(args) -> int:
    pg = load_graph(args.graph)
    ec, report = periodic_edge_colouring(pg)
    bad = check_edge_colouring(ec, args.radius or 4)
    report = dict(report, incident_conflicts=len(bad))
    data = {"report": report, "line_colouring": colouring_to_json(ec.colouring)}
    if args.output:
        _write(args.output, canonical_json(data))
    _emit(args, report if args.format == "text" else data)
    return 1 if bad else 0


def cmd_orient(args) -> int:
    pg = load_graph(args.graph)
    if args.colouring:
        pc = parse_colouring(_read_text(args.colouring), pg)
    else:
        pc, _ = _colour(args, pg)
    orient = periodic_orientation(pc)
    data = {"subgroup": pc.subgroup.to_json(), "orientation": orient.to_json()}
    if args.output:
        _write(args.output, canonical_json(data))
    _emit(args, data)
    return 0


def cmd_verify(args) -> int:
    pg = load_graph(args.graph)
    pc = parse_colouring(_read_text(args.colouring), pg)
    proper = check_proper(pc, pg, args.radius or 3)
    periodic = check_periodic(pc, args.sample, args.seed)
    data = {"ok": proper.ok and periodic.ok, "proper": proper.to_json(), "periodic": periodic.to_json()}
    _emit(args, data, ["ok"])
    return 0 if data["ok"] else 1


def cmd_genus(args) -> int:
    try:
        parts = [int(x) for x in args.signature.split(",")]
    except ValueError:
        raise ArgumentError("signature must be comma-separated integers g,m1,...,mr") from None
    genus = riemann_hurwitz_genus((parts[0], parts[1:]), args.index)
    if args.format == "json":
        _emit(args, {"genus": genus, "index": args.index, "signature": parts})
    else:
        print(genus)
    return 0


def cmd_budget(args) -> int:
    colours, threshold = colour_budget(args.genus)
    if args.format == "json":
        _emit(args, {"genus": args.genus, "ringel_youngs": colours, "thomassen_threshold": threshold})
    else:
        print(colours, threshold)
    return 0


def cmd_render(args) -> int:
    pg = load_graph(args.graph)
    pc = None
    if args.colouring:
        pc = parse_colouring(_read_text(args.colouring), pg)
    elif args.colour:
        pc, _ = _colour(args, pg)
    r = args.radius if args.radius is not None else 3
    svg = render_svg(pg, pc, r)
    if args.output:
        _write(args.output, svg)
    else:
        sys.stdout.write(svg)
    if args.figure:
        render_figure(pg, args.figure, pc, r)
    return 0


def cmd_examples(args) -> int:
    if args.name is None:
        if args.extract:
            out = Path(args.extract)
            out.mkdir(parents=True, exist_ok=True)
            for name in EXAMPLES:
                (out / f"{name}.json").write_text(serialize(example(name)))
        _emit(args, {name: desc for name, (_, desc) in EXAMPLES.items()}, list(EXAMPLES))
        return 0
    text = serialize(example(args.name))
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_planarity(args) -> int:
    pg = load_graph(args.graph)
    report = line_planarity_check(pg, args.radius or 6)
    _emit(args, report.to_json())
    return 0 if report.ok else 1


def _common(parser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="seed for sampling checks")
    parser.add_argument("--budget", type=int, default=d(None), help="coset or search-node budget")
    parser.add_argument("--radius", type=int, default=d(None), help="patch radius")
    parser.add_argument("--output", default=d(None), help="write the main artifact here")
    parser.add_argument("--format", choices=("json", "text"), default=d(None), help="json (default) or text; genus and budget default to text")
    parser.add_argument("--figure", default=d(None), help="also write a PNG figure")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasicolour", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _common(parser, False)
    common = argparse.ArgumentParser(add_help=False)
    _common(common, True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check the voltage-graph invariants")
    p.add_argument("graph")
    p = add("ends", cmd_ends, "estimate the number of ends")
    p.add_argument("graph")
    p.add_argument("--inner", type=int, default=2, help="inner radius r")
    p.add_argument("--outer", type=int, default=None, help="outer radius R (default --radius or 8)")
    p = add("reduce", cmd_reduce, "reduce to a 3-connected graph and print the trace")
    p.add_argument("graph")
    p = add("colour", cmd_colour, "periodic vertex colouring")
    p.add_argument("graph")
    p.add_argument("--strategy", choices=("auto", "dsatur", "unique"), default="auto")
    p.add_argument("--palette-mode", choices=("reuse", "fresh"), default=None)
    p = add("edge-colour", cmd_edge_colour, "periodic edge colouring via the line graph")
    p.add_argument("graph")
    p = add("orient", cmd_orient, "periodic orientation from a colouring")
    p.add_argument("graph")
    p.add_argument("--colouring", default=None, help="colouring file (default: run the pipeline)")
    p.set_defaults(strategy="auto")
    p = add("verify", cmd_verify, "check a colouring for properness and periodicity")
    p.add_argument("graph")
    p.add_argument("colouring")
    p.add_argument("--sample", type=int, default=100)
    p = add("genus", cmd_genus, "genus of a torsion-free quotient")
    p.add_argument("--signature", required=True, help="g,m1,...,mr")
    p.add_argument("--index", type=int, required=True)
    p = add("budget", cmd_budget, "colour bound and girth threshold for a genus")
    p.add_argument("--genus", type=int, required=True)
    p = add("render", cmd_render, "SVG of a patch")
    p.add_argument("graph")
    p.add_argument("--colouring", default=None)
    p.add_argument("--colour", action="store_true", help="run the colouring pipeline first")
    p.set_defaults(strategy="auto")
    p = add("planarity", cmd_planarity, "line-graph planarity check")
    p.add_argument("graph")
    p = add("examples", cmd_examples, "list or print the bundled examples")
    p.add_argument("name", nargs="?")
    p.add_argument("--extract", default=None, help="write every example into this directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QuasiColourError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
