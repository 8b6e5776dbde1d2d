"""K-theory of graph algebras from the vertex matrix.

Split the vertices into ``V`` (finite nonzero out-degree) and ``W`` (sinks
and infinite emitters), and let ``B`` and ``C`` be the ``V x V`` and
``V x W`` blocks of the vertex matrix.  The map

    K(x) = ((1 - B^t) x, -C^t x) :  Z^V -> Z^V + Z^W

has ``K_1 = ker K`` and ``K_0 = coker K``.  Both are read off the Smith
normal form of ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .graph_core import INF, EGraph, GraphError, Vertex, out_degree
from .ideals import IdealSpec, ideal_graph, quotient_graph_spec


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major integer matrix; shapes with a zero side are allowed."""

    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> List[List[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return IntMatrix.from_rows(
            [
                [sum(self[i, k] * other[k, j] for k in range(self.cols)) for j in range(other.cols)]
                for i in range(self.rows)
            ],
            other.cols,
        )

    def det(self) -> int:
        """Exact determinant (fraction-free Bareiss elimination)."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class BlockSplit:
    v_list: Tuple[Vertex, ...]
    w_list: Tuple[Vertex, ...]
    b: IntMatrix
    c: IntMatrix


@dataclass(frozen=True)
class SnfResult:
    """``u @ a @ v == diag(d)`` with ``u``, ``v`` unimodular."""

    d: Tuple[int, ...]
    u: IntMatrix
    v: IntMatrix


@dataclass(frozen=True)
class AbelianGroup:
    """``Z/t_1 + ... + Z/t_k + Z^free_rank`` with ``t_1 | t_2 | ...``."""

    torsion: Tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"invariant factors must be >= 2, got {t}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {a}, {b} do not form a divisibility chain")

    @classmethod
    def from_diagonal(cls, d: Iterable[int], generators: int) -> "AbelianGroup":
        """Cokernel of a map into ``Z^generators`` with Smith diagonal ``d``."""
        d = [abs(x) for x in d]
        rank = sum(1 for x in d if x)
        return cls(tuple(x for x in d if x >= 2), generators - rank)

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and not self.free_rank

    def to_dict(self) -> dict:
        return {"torsion": list(self.torsion), "free_rank": self.free_rank}

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


def block_split(g: EGraph) -> BlockSplit:
    """Partition into finite emitters ``V`` and sinks/infinite emitters ``W``."""
    V = tuple(v for v in g if 0 < out_degree(g, v) < INF)
    W = tuple(v for v in g if v not in set(V))
    b = IntMatrix.from_rows([[g.multiplicity(x, y) for y in V] for x in V], len(V))
    c = IntMatrix.from_rows([[g.multiplicity(x, y) for y in W] for x in V], len(W))
    return BlockSplit(V, W, b, c)


def k_map_matrix(g: EGraph) -> IntMatrix:
    """``(1 - B^t)`` stacked over ``-C^t``; shape ``(|V| + |W|) x |V|``."""
    split = block_split(g)
    n = len(split.v_list)
    top = [[int(i == j) - split.b[j, i] for j in range(n)] for i in range(n)]
    bottom = [[-split.c[j, i] for j in range(n)] for i in range(len(split.w_list))]
    return IntMatrix.from_rows(top + bottom, n)


def _smallest_nonzero(a: List[List[int]], t: int):
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[i])):
            x = a[i][j]
            if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(a: IntMatrix) -> SnfResult:
    """Diagonalise ``a`` by unimodular row and column operations.

    The pivot is always the entry of least absolute value in the remaining
    block; division with remainder shrinks it until it divides its row,
    column, and the rest of the block.
    """
    m, n = a.rows, a.cols
    A = a.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def add_row(dst, src, q):  # row_dst -= q * row_src
        for M in (A, U):
            M[dst] = [x - q * y for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (A, V):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            piv = _smallest_nonzero(A, t)
            if piv is None:
                break
            i, j = piv
            A[t], A[i] = A[i], A[t]
            U[t], U[i] = U[i], U[t]
            for M in (A, V):
                for row in M:
                    row[t], row[j] = row[j], row[t]
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    add_row(i, t, q)
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(j, t, q)
                dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        if A[t][t] == 0:
            break

    d = tuple(A[i][i] for i in range(min(m, n)))
    return SnfResult(d, IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n))


def k_groups(g: EGraph) -> Tuple[AbelianGroup, AbelianGroup]:
    """``(K_0, K_1)`` of the graph algebra."""
    A = k_map_matrix(g)
    d = smith_normal_form(A).d
    rank = sum(1 for x in d if x)
    return AbelianGroup.from_diagonal(d, A.rows), AbelianGroup((), A.cols - rank)


def k_groups_of_ideal(g: EGraph, H: Iterable[Vertex]) -> Tuple[AbelianGroup, AbelianGroup]:
    """K-groups of the ideal generated by the vertex projections of ``H``."""
    H = g.vertex_set(H)
    if not H:
        raise GraphError("the zero ideal has no graph")
    return k_groups(ideal_graph(g, H))


def k_groups_of_quotient(g: EGraph, j: IdealSpec) -> Tuple[AbelianGroup, AbelianGroup]:
    q = quotient_graph_spec(g, j)
    if not len(q):
        raise GraphError("quotient by the whole algebra is zero")
    return k_groups(q)
