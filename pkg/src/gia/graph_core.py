"""Directed multigraphs with edge multiplicities in N u {INF}.

A graph is a finite, ordered vertex list plus a map from ordered vertex
pairs to multiplicities.  Parallel edges are never labelled individually;
``INF`` stands for "at least countably many" edges between two vertices.

Vertex sets are passed around as plain iterables and returned as
``frozenset``.  Use :meth:`EGraph.ordered` for the canonical (input) order.
"""

from __future__ import annotations

import math
from collections import deque
from graphlib import CycleError, TopologicalSorter
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union


INF = math.inf

Multiplicity = Union[int, float]
Vertex = str


class GraphError(ValueError):
    """Invalid graph, vertex, or vertex-set argument."""


class EnumerationLimitError(RuntimeError):
    """Raised when a subset enumeration would exceed the vertex limit."""


DEFAULT_LIMIT = 20


def check_limit(g: "EGraph", limit: int) -> None:
    if len(g) > limit:
        raise EnumerationLimitError(
            f"graph has {len(g)} vertices; enumeration limit is {limit}"
        )


def _check_mult(value) -> Multiplicity:
    if isinstance(value, bool):
        raise GraphError(f"multiplicity must be an integer or INF, got {value!r}")
    if value == INF:
        return INF
    if not isinstance(value, int):
        raise GraphError(f"multiplicity must be an integer or INF, got {value!r}")
    if value < 0:
        raise GraphError(f"negative multiplicity {value}")
    return value


class EGraph:
    """Immutable finite directed multigraph.

    ``mult`` maps ``(src, dst)`` to a positive integer or ``INF``; zero
    entries are accepted and dropped.  Reachability is computed once on
    construction.
    """

    __slots__ = ("_vertices", "_index", "_mult", "_succ", "_reach", "_hash")

    def __init__(
        self,
        vertices: Iterable[Vertex],
        mult: Mapping[Tuple[Vertex, Vertex], Multiplicity] | None = None,
    ) -> None:
        verts = tuple(vertices)
        index: Dict[Vertex, int] = {}
        for v in verts:
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex ids must be nonempty strings, got {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = len(index)

        entries: Dict[Tuple[Vertex, Vertex], Multiplicity] = {}
        for key, value in (mult or {}).items():
            src, dst = key
            for end in (src, dst):
                if end not in index:
                    raise GraphError(f"edge {src!r}->{dst!r} references unknown vertex {end!r}")
            value = _check_mult(value)
            if value:
                entries[(src, dst)] = value
        ordered = sorted(entries, key=lambda p: (index[p[0]], index[p[1]]))

        self._vertices = verts
        self._index = index
        self._mult = {p: entries[p] for p in ordered}
        succ: Dict[Vertex, List[Vertex]] = {v: [] for v in verts}
        for src, dst in ordered:
            succ[src].append(dst)
        self._succ = {v: tuple(ws) for v, ws in succ.items()}
        self._reach = {v: self._bfs(v) for v in verts}
        self._hash = hash((verts, frozenset(self._mult.items())))

    def _bfs(self, start: Vertex) -> frozenset:
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self._succ[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    @property
    def mult(self) -> Mapping[Tuple[Vertex, Vertex], Multiplicity]:
        return MappingProxyType(self._mult)

    def multiplicity(self, src: Vertex, dst: Vertex) -> Multiplicity:
        return self._mult.get((src, dst), 0)

    def edges(self) -> Iterator[Tuple[Vertex, Vertex, Multiplicity]]:
        """Yield ``(src, dst, mult)`` in canonical pair order."""
        for (src, dst), m in self._mult.items():
            yield src, dst, m

    def successors(self, v: Vertex) -> Tuple[Vertex, ...]:
        self.check_vertex(v)
        return self._succ[v]

    def descendants(self, v: Vertex) -> frozenset:
        """All ``w`` with ``v >= w``; always contains ``v``."""
        self.check_vertex(v)
        return self._reach[v]

    def index(self, v: Vertex) -> int:
        self.check_vertex(v)
        return self._index[v]

    def check_vertex(self, v: Vertex) -> None:
        if v not in self._index:
            raise GraphError(f"unknown vertex {v!r}")

    def vertex_set(self, X: Iterable[Vertex]) -> frozenset:
        """Validate ``X`` against the vertex list and freeze it."""
        members = frozenset(X)
        for v in members:
            self.check_vertex(v)
        return members

    def ordered(self, X: Iterable[Vertex]) -> Tuple[Vertex, ...]:
        """``X`` sorted into the graph's vertex order."""
        return tuple(sorted(self.vertex_set(X), key=self._index.__getitem__))

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._mult == other._mult

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(
            f"{s}->{d}:{'inf' if m == INF else m}" for s, d, m in self.edges()
        )
        return f"EGraph([{', '.join(self._vertices)}]; {edges})"


def out_degree(g: EGraph, v: Vertex) -> Multiplicity:
    """``|s^-1(v)|``: total multiplicity of edges leaving ``v``."""
    return sum(g.multiplicity(v, w) for w in g.successors(v))


def is_row_finite(g: EGraph) -> bool:
    return all(out_degree(g, v) != INF for v in g)


def reaches(g: EGraph, v: Vertex, w: Vertex) -> bool:
    """``v >= w``.  Reflexive: every vertex is a path of length zero."""
    g.check_vertex(w)
    return w in g.descendants(v)


def omega(g: EGraph, X: Iterable[Vertex]) -> frozenset:
    """Vertices outside ``X`` with no path into ``X``."""
    X = g.vertex_set(X)
    if not X:
        raise GraphError("omega is only defined for a nonempty vertex set")
    return frozenset(w for w in g if w not in X and not (g.descendants(w) & X))


def simple_cycles(g: EGraph) -> List[Tuple[Vertex, ...]]:
    """Each simple cycle once, rotated to start at its earliest vertex.

    Cycles are sorted lexicographically by vertex positions.
    """
    import networkx as nx  # deferred: it dominates CLI start-up time

    dg = nx.DiGraph()
    dg.add_nodes_from(g.vertices)
    dg.add_edges_from((s, d) for s, d, _ in g.edges())
    found = []
    for cyc in nx.simple_cycles(dg):
        pos = [g.index(v) for v in cyc]
        k = pos.index(min(pos))
        found.append(tuple(cyc[k:] + cyc[:k]))
    return sorted(found, key=lambda c: [g.index(v) for v in c])


def _capped(x: Multiplicity, cap: int = 2) -> int:
    return cap if x >= cap else int(x)


def first_return_count(g: EGraph, v: Vertex, cap: int = 2) -> int:
    """Number of first-return paths at ``v``, saturated at ``cap``.

    A first-return path is a loop based at ``v`` that does not pass through
    ``v`` in between.  Splitting ``v`` into a source copy and a sink copy
    turns these into source-to-sink walks; the walk count is infinite
    exactly when the interior vertices on such walks contain a cycle.
    """
    g.check_vertex(v)
    forward = set()
    stack = [w for w in g.successors(v) if w != v]
    while stack:
        x = stack.pop()
        if x not in forward:
            forward.add(x)
            stack.extend(y for y in g.successors(x) if y != v)
    preds: Dict[Vertex, List[Vertex]] = {x: [] for x in forward}
    for x in forward:
        for y in g.successors(x):
            if y in forward:
                preds[y].append(x)
    backward = set()
    stack = [x for x in forward if g.multiplicity(x, v)]
    while stack:
        x = stack.pop()
        if x not in backward:
            backward.add(x)
            stack.extend(preds[x])
    interior = forward & backward

    # dependencies: x needs counts of its interior successors first
    sorter = TopologicalSorter(
        {x: [y for y in g.successors(x) if y in interior] for x in interior}
    )
    try:
        order = list(sorter.static_order())
    except CycleError:
        return cap
    walks: Dict[Vertex, int] = {}
    for x in order:
        total = g.multiplicity(x, v)
        for y in g.successors(x):
            if y in interior:
                total += g.multiplicity(x, y) * walks[y]
        walks[x] = _capped(total, cap)
    total = g.multiplicity(v, v)
    for y in g.successors(v):
        if y in interior:
            total += g.multiplicity(v, y) * walks[y]
    return _capped(total, cap)


def has_two_first_returns(g: EGraph, v: Vertex) -> bool:
    """True iff ``v`` admits two loops neither of which extends the other."""
    return first_return_count(g, v) >= 2


def condition_K(g: EGraph) -> bool:
    # a vertex lies on a loop iff it has at least one first return
    return all(first_return_count(g, v) != 1 for v in g)


def loops_have_exits_within(g: EGraph, M: Iterable[Vertex]) -> bool:
    """Every loop with vertices in ``M`` has an exit whose range lies in ``M``.

    A loop lacks such an exit only if each of its vertices has exactly one
    edge into ``M``; the loop then runs around a cycle of the partial map
    sending those vertices to their unique successor in ``M``.
    """
    M = g.vertex_set(M)
    nxt: Dict[Vertex, Vertex] = {}
    for x in M:
        inside = [y for y in g.successors(x) if y in M]
        if len(inside) == 1 and g.multiplicity(x, inside[0]) == 1:
            nxt[x] = inside[0]
    done = set()
    for start in nxt:
        path = set()
        x = start
        while x in nxt and x not in done:
            if x in path:
                return False
            path.add(x)
            x = nxt[x]
        done |= path
    return True


def restrict(g: EGraph, X: Iterable[Vertex]) -> EGraph:
    """Induced subgraph on ``X`` (input order kept)."""
    X = g.vertex_set(X)
    return EGraph(
        [v for v in g if v in X],
        {(s, d): m for s, d, m in g.edges() if s in X and d in X},
    )


def is_downward_directed(g: EGraph, X: Iterable[Vertex]) -> bool:
    """Any two members of ``X`` reach a common member of ``X``."""
    X = g.ordered(X)
    below = {v: g.descendants(v) & frozenset(X) for v in X}
    return all(below[a] & below[b] for i, a in enumerate(X) for b in X[i + 1:])
