"""Command line front end.

Usage:
    gia check FILE
    gia hereditary FILE [--closure v1,v2,...]
    gia ideals FILE [--dot PATH]
    gia primitive FILE
    gia quotient FILE --h v,... [--b v,...]
    gia ktheory FILE [--ideal-h v,... | --quotient-h v,... [--quotient-b v,...]]

FILE is a JSON graph document::

    {"vertices": ["u", "v"], "edges": [{"src": "u", "dst": "v", "mult": "inf"}]}

Reports go to stdout as JSON.  Exit status is 0 on success, 1 for invalid
input, 2 when a subset enumeration exceeds ``--max-vertices``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import List, Sequence

from .graph_core import (
    DEFAULT_LIMIT,
    INF,
    EGraph,
    EnumerationLimitError,
    GraphError,
    condition_K,
    is_row_finite,
    loops_have_exits_within,
)
from .hereditary import enumerate_saturated_hereditary, h_fin_inf, hereditary_saturated_closure
from .ideals import BETA_PREFIX, enumerate_ideals, hasse_dot, ideal_spec, quotient_graph_spec
from .ktheory import k_groups, k_groups_of_ideal, k_groups_of_quotient
from .primitive import (
    breaking_vertices,
    bv_primitive_spec,
    is_primitive_algebra,
    is_simple_algebra,
    maximal_tails,
    tail_primitive_spec,
)

K_BANNER = (
    "Condition (K) holds: every ideal of C*(E) is gauge-invariant, "
    "so this list is complete."
)


class ParseError(GraphError):
    pass


def _element_lines(text: str, key: str) -> List[int]:
    """Source line of each element of the top-level list ``key``."""
    m = re.search(r'"%s"\s*:\s*\[' % re.escape(key), text)
    if m is None:
        return []
    decoder, pos, lines = json.JSONDecoder(), m.end(), []
    ws = re.compile(r"[\s,]*")
    try:
        while True:
            pos = ws.match(text, pos).end()
            if text[pos] == "]":
                return lines
            lines.append(text.count("\n", 0, pos) + 1)
            _, pos = decoder.raw_decode(text, pos)
    except (IndexError, ValueError):
        return lines


def parse_graph(text: str, allow_reserved: bool = False) -> EGraph:
    """Read a graph document.  Duplicate ``(src, dst)`` entries are summed.

    Vertex ids starting with ``beta(`` are reserved for quotient sinks and
    rejected unless ``allow_reserved`` is set.  Errors in list elements are
    reported with the line the element starts on.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("graph document must be a JSON object")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not vertices:
        raise ParseError("'vertices' must be a nonempty list")

    def fail(key: str, k: int, msg: str):
        lines = _element_lines(text, key)
        where = f"line {lines[k]}: " if k < len(lines) else ""
        raise ParseError(f"{where}{key}[{k}]: {msg}")

    seen = set()
    for k, v in enumerate(vertices):
        if not isinstance(v, str) or not v:
            fail("vertices", k, "ids must be nonempty strings")
        if v.startswith(BETA_PREFIX) and not allow_reserved:
            fail("vertices", k, f"id {v!r} uses the reserved prefix {BETA_PREFIX!r}")
        if v in seen:
            fail("vertices", k, f"duplicate vertex id {v!r}")
        seen.add(v)
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise ParseError("'edges' must be a list")

    mult = {}
    for k, e in enumerate(edges):
        if not isinstance(e, dict):
            fail("edges", k, "expected an object")
        src, dst, m = e.get("src"), e.get("dst"), e.get("mult", 1)
        for end in (src, dst):
            if not isinstance(end, str) or end not in seen:
                fail("edges", k, f"unknown endpoint {end!r}")
        if m == "inf":
            m = INF
        elif isinstance(m, bool) or not isinstance(m, int) or m <= 0:
            fail("edges", k, f"mult must be a positive integer or \"inf\", got {m!r}")
        mult[(src, dst)] = mult.get((src, dst), 0) + m
    return EGraph(vertices, mult)


def graph_document(g: EGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [
            {"src": s, "dst": d, "mult": "inf" if m == INF else m} for s, d, m in g.edges()
        ],
    }


def emit_graph(g: EGraph) -> str:
    return _dumps(graph_document(g))


def _dumps(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _vertex_list(text: str | None) -> List[str]:
    if not text:
        return []
    return [v.strip() for v in text.split(",") if v.strip()]


def _ordered(g: EGraph, X) -> List[str]:
    return list(g.ordered(X))


def cmd_check(g: EGraph, args) -> dict:
    return {
        "row_finite": is_row_finite(g),
        "condition_K": condition_K(g),
        "condition_L": loops_have_exits_within(g, g.vertices),
        "simple": is_simple_algebra(g),
        "primitive": is_primitive_algebra(g),
    }


def cmd_hereditary(g: EGraph, args) -> dict:
    sets = enumerate_saturated_hereditary(g, args.max_vertices)
    report = {
        "saturated_hereditary": [
            {"set": _ordered(g, H), "h_fin_inf": _ordered(g, h_fin_inf(g, H))} for H in sets
        ]
    }
    if args.closure is not None:
        X = g.vertex_set(_vertex_list(args.closure))
        report["closure"] = {
            "input": _ordered(g, X),
            "closure": _ordered(g, hereditary_saturated_closure(g, X)),
        }
    return report


def cmd_ideals(g: EGraph, args) -> dict:
    specs = enumerate_ideals(g, args.max_vertices)
    k = condition_K(g)
    report = {}
    if k:
        report["banner"] = K_BANNER
    report["condition_K"] = k
    report["complete"] = k
    report["count"] = len(specs)
    report["ideals"] = [j.to_dict(g) for j in specs]
    if args.dot:
        Path(args.dot).write_text(hasse_dot(g, specs), encoding="utf-8")
    return report


def cmd_primitive(g: EGraph, args) -> dict:
    tails = maximal_tails(g, args.max_vertices)
    bv = g.ordered(breaking_vertices(g))
    k = condition_K(g)
    ideals = []
    for M in tails:
        if loops_have_exits_within(g, M):
            j = tail_primitive_spec(g, M)
            ideals.append({"kind": "maximal_tail", "source": _ordered(g, M), **j.to_dict(g)})
    for v in bv:
        j = bv_primitive_spec(g, v)
        ideals.append({"kind": "breaking_vertex", "source": [v], **j.to_dict(g)})
    label = "gauge-invariant primitive ideals"
    if k:
        label += " (complete primitive-ideal list)"
    return {
        "maximal_tails": [
            {"tail": _ordered(g, M), "loops_have_exits": loops_have_exits_within(g, M)}
            for M in tails
        ],
        "breaking_vertices": list(bv),
        "label": label,
        "complete": k,
        "primitive_ideals": ideals,
    }


def cmd_quotient(g: EGraph, args) -> dict:
    j = ideal_spec(g, _vertex_list(args.h), _vertex_list(args.b))
    return graph_document(quotient_graph_spec(g, j))


def cmd_ktheory(g: EGraph, args) -> dict:
    if args.ideal_h is not None and args.quotient_h is not None:
        raise GraphError("--ideal-h and --quotient-h are mutually exclusive")
    if args.quotient_b is not None and args.quotient_h is None:
        raise GraphError("--quotient-b requires --quotient-h")
    if args.ideal_h is not None:
        target = {"target": "ideal", "h": _ordered(g, _vertex_list(args.ideal_h))}
        k0, k1 = k_groups_of_ideal(g, target["h"])
    elif args.quotient_h is not None:
        j = ideal_spec(g, _vertex_list(args.quotient_h), _vertex_list(args.quotient_b))
        target = {"target": "quotient", **j.to_dict(g)}
        k0, k1 = k_groups_of_quotient(g, j)
    else:
        target = {"target": "algebra"}
        k0, k1 = k_groups(g)
    return {**target, "K0": k0.to_dict(), "K1": k1.to_dict()}


COMMANDS = {
    "check": cmd_check,
    "hereditary": cmd_hereditary,
    "ideals": cmd_ideals,
    "primitive": cmd_primitive,
    "quotient": cmd_quotient,
    "ktheory": cmd_ktheory,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gia", description="Ideal structure and K-theory of graph C*-algebras."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", type=Path, help="graph document (JSON)")
    common.add_argument(
        "--max-vertices",
        type=int,
        default=DEFAULT_LIMIT,
        help=f"refuse subset enumeration on larger graphs (default {DEFAULT_LIMIT})",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="structural conditions")
    p = sub.add_parser("hereditary", parents=[common], help="saturated hereditary sets")
    p.add_argument("--closure", metavar="V,...", help="also report the saturated hereditary closure")
    p = sub.add_parser("ideals", parents=[common], help="gauge-invariant ideals")
    p.add_argument("--dot", metavar="PATH", help="write the Hasse diagram as DOT")
    sub.add_parser("primitive", parents=[common], help="gauge-invariant primitive ideals")
    p = sub.add_parser("quotient", parents=[common], help="quotient graph of J(H,B)")
    p.add_argument("--h", required=True, metavar="V,...")
    p.add_argument("--b", metavar="V,...")
    p = sub.add_parser("ktheory", parents=[common], help="K_0 and K_1")
    p.add_argument("--ideal-h", metavar="V,...")
    p.add_argument("--quotient-h", metavar="V,...")
    p.add_argument("--quotient-b", metavar="V,...")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors are invalid input; status 2 is reserved for the limit
        return 0 if exc.code == 0 else 1
    try:
        text = args.file.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"gia: error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return 1
    try:
        g = parse_graph(text)
        report = COMMANDS[args.command](g, args)
    except EnumerationLimitError as exc:
        print(f"gia: error: {exc}", file=sys.stderr)
        return 2
    except GraphError as exc:
        print(f"gia: error: {args.file}: {exc}", file=sys.stderr)
        return 1
    if args.command == "ideals" and "banner" in report:
        print(f"gia: {K_BANNER}", file=sys.stderr)
    sys.stdout.write(_dumps(report))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
