"""Gauge-invariant ideals J(H, B) and the graphs that describe them.

An ideal is named by a saturated hereditary set ``H`` together with a
subset ``B`` of ``h_fin_inf(g, H)``.  Quotient algebras are graph algebras
of ``quotient_graph_spec``; the ideal ``J(H, {})`` is Morita equivalent to
the algebra of ``ideal_graph``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence

from .graph_core import (
    DEFAULT_LIMIT,
    EGraph,
    GraphError,
    Vertex,
    check_limit,
    restrict,
)
from .hereditary import (
    enumerate_saturated_hereditary,
    h_fin_inf,
    is_hereditary,
    require_saturated_hereditary,
    saturate,
    subset_key,
)

BETA_PREFIX = "beta("


def beta(v: Vertex) -> Vertex:
    """Name of the sink added for ``v`` in a quotient graph."""
    return f"{BETA_PREFIX}{v})"


@dataclass(frozen=True)
class IdealSpec:
    """The pair ``(H, B)``; validity depends on the graph, see :func:`ideal_spec`."""

    h: frozenset
    b: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", frozenset(self.h))
        object.__setattr__(self, "b", frozenset(self.b))

    def label(self, g: EGraph) -> str:
        return "J{%s|%s}" % (",".join(g.ordered(self.h)), ",".join(g.ordered(self.b)))

    def to_dict(self, g: EGraph) -> dict:
        return {"h": list(g.ordered(self.h)), "b": list(g.ordered(self.b))}


def ideal_spec(g: EGraph, h: Iterable[Vertex], b: Iterable[Vertex] = ()) -> IdealSpec:
    """Build a spec, failing if ``h`` is not saturated hereditary or
    ``b`` is not inside ``h_fin_inf(g, h)``."""
    return validate(g, IdealSpec(g.vertex_set(h), g.vertex_set(b)))


def validate(g: EGraph, j: IdealSpec) -> IdealSpec:
    require_saturated_hereditary(g, j.h)
    g.vertex_set(j.b)
    extra = j.b - h_fin_inf(g, j.h)
    if extra:
        raise GraphError(
            f"B contains {list(g.ordered(extra))}, outside h_fin_inf of H={list(g.ordered(j.h))}"
        )
    return j


def spec_key(g: EGraph, j: IdealSpec):
    return (subset_key(g, j.h), subset_key(g, j.b))


def ideal_from_hereditary(g: EGraph, H: Iterable[Vertex]) -> IdealSpec:
    """Canonical spec of the ideal generated by the vertex projections of ``H``."""
    H = g.vertex_set(H)
    if not is_hereditary(g, H):
        raise GraphError(f"set {list(g.ordered(H))} is not hereditary")
    return IdealSpec(saturate(g, H), frozenset())


def quotient_graph(g: EGraph, H: Iterable[Vertex]) -> EGraph:
    """The graph E/H: drop ``H``, add a sink ``beta(v)`` for each
    ``v`` in ``h_fin_inf(g, H)`` receiving a copy of every edge into ``v``."""
    H = require_saturated_hereditary(g, H)
    fin = g.ordered(h_fin_inf(g, H))
    keep = [v for v in g if v not in H]
    new = [beta(v) for v in fin]
    clash = set(new) & set(keep)
    if clash:
        raise GraphError(f"quotient vertex name collides with existing vertex {sorted(clash)}")
    mult = {(s, d): m for s, d, m in g.edges() if s not in H and d not in H}
    for v in fin:
        for s in keep:
            m = g.multiplicity(s, v)
            if m:
                mult[(s, beta(v))] = m
    return EGraph(keep + new, mult)


def quotient_graph_spec(g: EGraph, j: IdealSpec) -> EGraph:
    """Graph whose algebra is the quotient by ``J(H, B)``: E/H minus beta(B)."""
    validate(g, j)
    q = quotient_graph(g, j.h)
    dropped = {beta(v) for v in j.b}
    return restrict(q, [v for v in q if v not in dropped])


def meet(g: EGraph, specs: Sequence[IdealSpec]) -> IdealSpec:
    """Intersection of ideals, computed from the specs alone."""
    if not specs:
        raise GraphError("meet of an empty list of ideals")
    for j in specs:
        validate(g, j)
    H = frozenset.intersection(*(j.h for j in specs))
    common = frozenset.intersection(*(j.h | j.b for j in specs))
    return IdealSpec(H, common & h_fin_inf(g, H))


def leq(g: EGraph, a: IdealSpec, b: IdealSpec) -> bool:
    """Inclusion of ideals: ``a.h <= b.h`` and ``a.b <= b.h | b.b``."""
    return a.h <= b.h and a.b <= (b.h | b.b)


def _subsets(g: EGraph, X: frozenset) -> List[frozenset]:
    items = g.ordered(X)
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


def enumerate_ideals(g: EGraph, limit: int = DEFAULT_LIMIT) -> List[IdealSpec]:
    """All gauge-invariant ideals, grouped by ``H`` in enumeration order."""
    check_limit(g, limit)
    out = []
    for H in enumerate_saturated_hereditary(g, limit):
        bs = sorted(_subsets(g, h_fin_inf(g, H)), key=lambda B: subset_key(g, B))
        out.extend(IdealSpec(H, B) for B in bs)
    return out


def join(g: EGraph, a: IdealSpec, b: IdealSpec, limit: int = DEFAULT_LIMIT) -> IdealSpec:
    """Smallest ideal containing both, found by search over all ideals."""
    validate(g, a)
    validate(g, b)
    upper = [j for j in enumerate_ideals(g, limit) if leq(g, a, j) and leq(g, b, j)]
    least = [j for j in upper if all(leq(g, j, k) for k in upper)]
    if len(least) != 1:
        raise RuntimeError(f"join of {a.label(g)} and {b.label(g)} is not unique")
    return least[0]


def covering_pairs(g: EGraph, specs: Sequence[IdealSpec]) -> List[tuple]:
    """Index pairs ``(i, k)`` with ``specs[i]`` covered by ``specs[k]``."""
    n = len(specs)
    below = [[i != k and leq(g, specs[i], specs[k]) for k in range(n)] for i in range(n)]
    return [
        (i, k)
        for i in range(n)
        for k in range(n)
        if below[i][k] and not any(below[i][m] and below[m][k] for m in range(n))
    ]


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(g: EGraph, specs: Sequence[IdealSpec]) -> str:
    """Hasse diagram of inclusion among ``specs`` in DOT format, bottom-up."""
    specs = list(specs)
    if len(set(specs)) != len(specs):
        raise GraphError("hasse_dot needs distinct ideals")
    lines = ["digraph ideals {", "  rankdir=BT;", "  node [shape=box];"]
    for i, j in enumerate(specs):
        lines.append(f"  n{i} [label={_quote(j.label(g))}];")
    for i, k in covering_pairs(g, specs):
        lines.append(f"  n{i} -> n{k};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def ideal_graph(g: EGraph, H: Iterable[Vertex]) -> EGraph:
    """Graph on ``H`` whose algebra is Morita equivalent to ``J(H, {})``."""
    H = g.vertex_set(H)
    if not is_hereditary(g, H):
        raise GraphError(f"set {list(g.ordered(H))} is not hereditary")
    return restrict(g, H)
