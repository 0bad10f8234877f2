"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 domain rejection
(not triangle-free, not realisable, universe too large), 3 a verification
check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from . import __version__
from .canonical import canonical_form
from .classifier import NotTriangleFreeError, OrderTooSmallError, classify, member
from .enumeration import FILTERS, OrientationUniverse, PartiteShape, UniverseTooLargeError, default_jobs, search
from .families import FAMILY_IDS, UnknownFamilyError, build_witness, is_parameterised
from .formats import FormatError, format_of, parse_text, to_digraph6, to_dot, to_edge_list, to_graph6
from .graphs import Digraph, Graph, GraphSizeError, competition_graph
from .patterns import describe

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: {message}", EXIT_USAGE)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}", EXIT_USAGE)


def _parse(text: str, want: type) -> Any:
    try:
        x = parse_text(text)
    except FormatError as e:
        raise CliError(f"parse error at {e}", EXIT_USAGE)
    except (GraphSizeError, ValueError) as e:
        raise CliError(f"parse error: {e}", EXIT_USAGE)
    if not isinstance(x, want):
        kind = "an undirected graph" if want is Graph else "a digraph"
        raise CliError(f"expected {kind}", EXIT_USAGE)
    return x


def _digraph_doc(d: Digraph, part_of: Optional[Sequence[int]] = None) -> dict:
    c = competition_graph(d)
    doc = {
        "digraph6": to_digraph6(d),
        "dot": to_dot(d, part_of, name="D"),
        "competition_graph": {"graph6": to_graph6(c), "pattern": describe(c)},
    }
    if part_of is not None:
        doc["parts"] = [[v for v in range(d.n) if part_of[v] == p] for p in sorted(set(part_of))]
    return doc


# --------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> tuple[dict, int]:
    g = _parse(_read_input(args.input), Graph)
    try:
        report = classify(g)
    except NotTriangleFreeError as e:
        raise CliError(f"not-triangle-free: {e}", EXIT_DOMAIN)
    except OrderTooSmallError as e:
        raise CliError(f"order-too-small: {e}", EXIT_DOMAIN)
    verdicts = {}
    for k, v in report.verdicts.items():
        entry: dict = {"member": v.member}
        if v.member:
            entry.update(family=v.family, source=v.source)
            if args.witness:
                entry["witness"] = _digraph_doc(v.witness, v.part_of)
        verdicts[str(k)] = entry
    doc = {
        "input_canonical": report.input_canonical.hex(),
        "results": {
            "graph": describe(g),
            "order": report.order,
            "connected": report.connected,
            "triangle_free": report.triangle_free,
            "member_k": report.members(),
            "verdicts": verdicts,
        },
    }
    return doc, EXIT_OK


def cmd_witness(args) -> tuple[dict, int]:
    if args.graph is not None:
        if args.family is not None or args.k is None:
            raise CliError("use either FAMILY or --graph PATH --k K", EXIT_USAGE)
        g = _parse(_read_input(args.graph), Graph)
        try:
            v = member(g, args.k)
        except (NotTriangleFreeError, OrderTooSmallError) as e:
            raise CliError(str(e), EXIT_DOMAIN)
        except ValueError as e:
            raise CliError(str(e), EXIT_USAGE)
        if not v.member:
            raise CliError(f"not-realizable: {describe(g)} is not C(D) of any {args.k}-partite tournament", EXIT_DOMAIN)
        results = {"graph": describe(g), "k": args.k, "family": v.family, "source": v.source}
        results.update(_digraph_doc(v.witness, v.part_of))
        return {"input_canonical": canonical_form(g).hex(), "results": results}, EXIT_OK
    if args.family is None:
        raise CliError("a family id or --graph is required", EXIT_USAGE)
    family = args.family.upper()
    if family not in FAMILY_IDS:
        raise CliError(f"unknown-family: {args.family!r}; known: {', '.join(FAMILY_IDS)}", EXIT_USAGE)
    if is_parameterised(family) and args.param is None:
        raise CliError(f"{family} needs --param K (K >= 1)", EXIT_USAGE)
    if not is_parameterised(family) and args.param is not None:
        raise CliError(f"{family} takes no parameter", EXIT_USAGE)
    try:
        w = build_witness(family, args.param)
    except (UnknownFamilyError, ValueError) as e:
        raise CliError(str(e), EXIT_USAGE)
    results = {
        "family": family,
        "param": args.param,
        "shape": str(w.spec.shape),
        "target": w.spec.target.label(w.spec.isolated),
        "repaired": w.repaired,
    }
    results.update(_digraph_doc(w.digraph, w.partition.part_of))
    return {"results": results}, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    from .verifier import REGISTRY, run_all

    if args.list:
        return {"results": {cid: c.description for cid, c in REGISTRY.items()}}, EXIT_OK
    ids = list(REGISTRY) if args.all else args.check_ids
    if not ids:
        raise CliError("give check ids or --all", EXIT_USAGE)
    unknown = [i for i in ids if i not in REGISTRY]
    if unknown:
        raise CliError(f"unknown-id: {', '.join(unknown)}", EXIT_USAGE)
    jobs = args.jobs or default_jobs()
    reports = run_all(parallel=jobs > 1, jobs=jobs, ids=ids)
    passed = all(r.passed for r in reports)
    doc = {"results": {"passed": passed, "checks": [r.to_dict(with_elapsed=not args.no_timing) for r in reports]}}
    return doc, EXIT_OK if passed else EXIT_VERIFY


def cmd_census(args) -> tuple[dict, int]:
    try:
        shape = PartiteShape.parse(args.shape)
    except ValueError as e:
        raise CliError(f"bad --shape: {e}", EXIT_USAGE)
    if args.filter not in FILTERS:
        raise CliError(f"unknown filter {args.filter!r}; choose from {', '.join(FILTERS)}", EXIT_USAGE)
    predicate = FILTERS[args.filter]
    prune = "indegree_le_2" if predicate.triangle_free else "none"
    try:
        c = search(OrientationUniverse(shape), predicate, prune=prune, jobs=args.jobs or default_jobs())
    except UniverseTooLargeError as e:
        raise CliError(f"universe-too-large: {e}", EXIT_DOMAIN)
    rows = [
        {"graph": describe(c.graphs[f]), "graph6": to_graph6(c.graphs[f]), "canonical": f.hex(), "count": n,
         "example": to_digraph6(c.example(f))}
        for f, n in c.counts.items()
    ]
    rows.sort(key=lambda r: (-r["count"], r["graph"], r["canonical"]))
    doc = {"results": {"shape": str(shape), "filter": args.filter, "universe_size": c.universe_size,
                       "accepted": c.total, "classes": len(rows), "rows": rows}}
    return doc, EXIT_OK


def cmd_convert(args) -> tuple[str, int]:
    x = _parse(_read_input(args.input), (Graph, Digraph))
    if args.to == "graph6":
        if not isinstance(x, Graph):
            raise CliError("graph6 holds undirected graphs only; use digraph6", EXIT_USAGE)
        return to_graph6(x) + "\n", EXIT_OK
    if args.to == "digraph6":
        if not isinstance(x, Digraph):
            raise CliError("digraph6 holds digraphs only; use graph6", EXIT_USAGE)
        return to_digraph6(x) + "\n", EXIT_OK
    if args.to == "auto6":
        return format_of(x) + "\n", EXIT_OK
    if args.to == "edges":
        return to_edge_list(x), EXIT_OK
    if args.to == "competition":
        if not isinstance(x, Digraph):
            raise CliError("competition graphs are taken of digraphs", EXIT_USAGE)
        return to_graph6(competition_graph(x)) + "\n", EXIT_OK
    return to_dot(x), EXIT_OK


# --------------------------------------------------------------------------
# rendering


def _human(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key in sorted(value):
            v = value[key]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{key}:")
                lines.extend(_human(v, indent + 1))
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{key}: |")
                lines.extend(f"{pad}  {ln}" for ln in v.rstrip("\n").split("\n"))
            else:
                lines.append(f"{pad}{key}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item:
                sub = _human(item, indent + 1)
                lines.append(f"{pad}- {sub[0].lstrip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def render(doc: dict, fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return "\n".join(_human(doc)) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "machine"], default="human")
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")

    p = _Parser(prog="compgraphs", description="Competition graphs of multipartite tournaments.")
    p.add_argument("--version", action="version", version=f"compgraphs {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="decide membership for k = 2..6")
    c.add_argument("input", nargs="?", default="-", help="graph6 or edge-list file ('-' for stdin)")
    c.add_argument("--witness", action="store_true", help="embed witness digraphs (digraph6 + DOT)")
    c.set_defaults(func=cmd_classify)

    w = sub.add_parser("witness", parents=[common], help="build a named witness or realise a graph for given k")
    w.add_argument("family", nargs="?", help="D1..D27, REG5, C6, P6 or C4C4")
    w.add_argument("--param", type=int, help="family parameter (number of isolated vertices)")
    w.add_argument("--graph", metavar="PATH", help="graph file to realise instead of a family")
    w.add_argument("--k", type=int, help="number of partite sets, with --graph")
    w.set_defaults(func=cmd_witness)

    v = sub.add_parser("verify", parents=[common], help="run exhaustive verification checks")
    v.add_argument("check_ids", nargs="*")
    v.add_argument("--all", action="store_true")
    v.add_argument("--list", action="store_true", help="list registered checks")
    v.add_argument("--jobs", type=int, default=None)
    v.add_argument("--no-timing", action="store_true", help="omit elapsed times for byte-stable output")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("census", parents=[common], help="histogram of competition graphs over one shape")
    s.add_argument("--shape", required=True, help="part sizes, e.g. 2,2,1")
    s.add_argument("--filter", default="triangle-free", help=", ".join(FILTERS))
    s.add_argument("--jobs", type=int, default=None)
    s.set_defaults(func=cmd_census)

    t = sub.add_parser("convert", parents=[common], help="convert between graph text formats")
    t.add_argument("input", nargs="?", default="-")
    t.add_argument("--to", choices=["graph6", "digraph6", "auto6", "edges", "dot", "competition"], default="auto6")
    t.set_defaults(func=cmd_convert)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result, code = args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    if isinstance(result, dict):
        doc = {"tool_version": __version__, "command": args.command}
        doc.update(result)
        text = render(doc, args.format)
    else:
        text = result
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
