"""Maximal tails, breaking vertices and gauge-invariant primitive ideals."""

from __future__ import annotations

from typing import Iterable, List

from .graph_core import (
    DEFAULT_LIMIT,
    INF,
    EGraph,
    GraphError,
    Vertex,
    check_limit,
    is_downward_directed,
    loops_have_exits_within,
    omega,
    out_degree,
)
from .hereditary import (
    enumerate_saturated_hereditary,
    h_fin_inf,
    hereditary_saturated_closure,
    is_saturated_hereditary,
    subset_key,
)
from .ideals import IdealSpec, quotient_graph_spec, validate


def is_maximal_tail(g: EGraph, M: Iterable[Vertex]) -> bool:
    """Nonempty, complement saturated hereditary, and downward directed."""
    M = g.vertex_set(M)
    if not M:
        return False
    rest = frozenset(v for v in g if v not in M)
    return is_saturated_hereditary(g, rest) and is_downward_directed(g, M)


def maximal_tails(g: EGraph, limit: int = DEFAULT_LIMIT) -> List[frozenset]:
    check_limit(g, limit)
    everything = frozenset(g.vertices)
    tails = [
        everything - H
        for H in enumerate_saturated_hereditary(g, limit)
        if H != everything and is_downward_directed(g, everything - H)
    ]
    return sorted(tails, key=lambda M: subset_key(g, M))


def _edges_outside(g: EGraph, v: Vertex, H: frozenset):
    return sum(g.multiplicity(v, w) for w in g.successors(v) if w not in H)


def breaking_vertices(g: EGraph) -> frozenset:
    """Infinite emitters ``v`` sending finitely many, and at least one,
    edges to vertices that can still reach ``v``."""
    found = set()
    for v in g:
        if out_degree(g, v) != INF:
            continue
        n = _edges_outside(g, v, omega(g, {v}))
        if 0 < n < INF:
            found.add(v)
    return frozenset(found)


def is_primitive_algebra(g: EGraph) -> bool:
    """Every loop has an exit and the vertex set is downward directed.

    The zero algebra (empty graph) is not primitive.
    """
    if not len(g):
        return False
    return loops_have_exits_within(g, g.vertices) and is_downward_directed(g, g.vertices)


def is_simple_algebra(g: EGraph) -> bool:
    if not len(g):
        return False
    everything = frozenset(g.vertices)
    return loops_have_exits_within(g, everything) and all(
        hereditary_saturated_closure(g, {v}) == everything for v in g
    )


def tail_primitive_spec(g: EGraph, M: Iterable[Vertex]) -> IdealSpec:
    """Primitive ideal ``J(H, h_fin_inf(H))`` with ``H`` the complement of
    a maximal tail ``M`` in which every loop has an exit."""
    M = g.vertex_set(M)
    if not is_maximal_tail(g, M):
        raise GraphError(f"{list(g.ordered(M))} is not a maximal tail")
    if not loops_have_exits_within(g, M):
        raise GraphError(f"maximal tail {list(g.ordered(M))} has a loop without an exit")
    H = frozenset(v for v in g if v not in M)
    return IdealSpec(H, h_fin_inf(g, H))


def bv_primitive_spec(g: EGraph, v: Vertex) -> IdealSpec:
    """Primitive ideal ``J(omega(v), h_fin_inf(omega(v)) - {v})`` of a
    breaking vertex."""
    g.check_vertex(v)
    if v not in breaking_vertices(g):
        raise GraphError(f"{v!r} is not a breaking vertex")
    H = omega(g, {v})
    return IdealSpec(H, h_fin_inf(g, H) - {v})


def gauge_invariant_primitive_ideals(g: EGraph, limit: int = DEFAULT_LIMIT) -> List[IdealSpec]:
    """Tail-type ideals (by tail order), then breaking-vertex ideals (by vertex order)."""
    specs = [tail_primitive_spec(g, M) for M in maximal_tails(g, limit) if loops_have_exits_within(g, M)]
    specs += [bv_primitive_spec(g, v) for v in g.ordered(breaking_vertices(g))]
    if len(set(specs)) != len(specs):
        raise RuntimeError("primitive ideal list contains duplicates")
    return specs


def is_primitive_spec(g: EGraph, j: IdealSpec) -> bool:
    """Decide primitivity of ``J(H, B)`` from its quotient graph."""
    validate(g, j)
    return is_primitive_algebra(quotient_graph_spec(g, j))
