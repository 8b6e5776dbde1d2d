"""Hereditary and saturated vertex sets and their closures."""

from __future__ import annotations

from typing import Iterable, List

from .graph_core import (
    DEFAULT_LIMIT,
    INF,
    EGraph,
    GraphError,
    Vertex,
    check_limit,
    out_degree,
)


def is_hereditary(g: EGraph, H: Iterable[Vertex]) -> bool:
    H = g.vertex_set(H)
    return all(w in H for v in H for w in g.successors(v))


def _forced(g: EGraph, v: Vertex, X: frozenset) -> bool:
    """``v`` emits finitely many (and some) edges, all into ``X``."""
    d = out_degree(g, v)
    return 0 < d < INF and all(w in X for w in g.successors(v))


def is_saturated(g: EGraph, X: Iterable[Vertex]) -> bool:
    X = g.vertex_set(X)
    return not any(_forced(g, v, X) for v in g if v not in X)


def saturate(g: EGraph, X: Iterable[Vertex]) -> frozenset:
    """Smallest saturated superset of ``X``."""
    current = g.vertex_set(X)
    while True:
        new = {v for v in g if v not in current and _forced(g, v, current)}
        if not new:
            return current
        current = current | new


def hereditary_saturated_closure(g: EGraph, X: Iterable[Vertex]) -> frozenset:
    """Smallest saturated hereditary superset of ``X``.

    Close ``X`` under reachability, then saturate; saturation of a
    hereditary set stays hereditary.
    """
    X = g.vertex_set(X)
    down = frozenset().union(*(g.descendants(v) for v in X)) if X else frozenset()
    return saturate(g, down)


def is_saturated_hereditary(g: EGraph, H: Iterable[Vertex]) -> bool:
    H = g.vertex_set(H)
    return is_hereditary(g, H) and is_saturated(g, H)


def require_saturated_hereditary(g: EGraph, H: Iterable[Vertex]) -> frozenset:
    H = g.vertex_set(H)
    if not is_hereditary(g, H):
        raise GraphError(f"set {list(g.ordered(H))} is not hereditary")
    if not is_saturated(g, H):
        raise GraphError(f"set {list(g.ordered(H))} is not saturated")
    return H


def h_fin_inf(g: EGraph, H: Iterable[Vertex]) -> frozenset:
    """Infinite emitters outside ``H`` sending finitely many, but at least
    one, edges outside ``H``."""
    H = require_saturated_hereditary(g, H)
    result = set()
    for v in g:
        if v in H or out_degree(g, v) != INF:
            continue
        outside = sum(g.multiplicity(v, w) for w in g.successors(v) if w not in H)
        if 0 < outside < INF:
            result.add(v)
    return frozenset(result)


def subset_key(g: EGraph, X: Iterable[Vertex]):
    """Sort key: size first, then vertex positions lexicographically."""
    pos = sorted(g.index(v) for v in X)
    return (len(pos), pos)


def enumerate_saturated_hereditary(g: EGraph, limit: int = DEFAULT_LIMIT) -> List[frozenset]:
    """Every saturated hereditary subset, ordered by :func:`subset_key`.

    Closed sets are generated by adjoining one vertex at a time to a known
    closed set and closing again; every closed set is reached this way.
    """
    check_limit(g, limit)
    bottom = hereditary_saturated_closure(g, ())
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for H in frontier:
            for v in g:
                if v in H:
                    continue
                K = hereditary_saturated_closure(g, H | {v})
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(seen, key=lambda X: subset_key(g, X))
