"""Gauge-invariant ideals, primitive ideals and K-theory of graph C*-algebras.

Graphs are finite with edge multiplicities in N u {INF}; every function
is pure and works on immutable values.
"""

from .graph_core import (
    INF,
    EGraph,
    EnumerationLimitError,
    GraphError,
    condition_K,
    has_two_first_returns,
    is_row_finite,
    loops_have_exits_within,
    omega,
    out_degree,
    reaches,
    restrict,
    simple_cycles,
)
from .hereditary import (
    enumerate_saturated_hereditary,
    h_fin_inf,
    hereditary_saturated_closure,
    is_hereditary,
    is_saturated,
    saturate,
)
from .ideals import (
    IdealSpec,
    enumerate_ideals,
    hasse_dot,
    ideal_from_hereditary,
    ideal_graph,
    ideal_spec,
    join,
    leq,
    meet,
    quotient_graph,
    quotient_graph_spec,
)
from .ktheory import (
    AbelianGroup,
    IntMatrix,
    block_split,
    k_groups,
    k_groups_of_ideal,
    k_groups_of_quotient,
    k_map_matrix,
    smith_normal_form,
)
from .primitive import (
    breaking_vertices,
    bv_primitive_spec,
    gauge_invariant_primitive_ideals,
    is_maximal_tail,
    is_primitive_algebra,
    is_primitive_spec,
    is_simple_algebra,
    maximal_tails,
    tail_primitive_spec,
)

__version__ = "0.1.0"
