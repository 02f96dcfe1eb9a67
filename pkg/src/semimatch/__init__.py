"""Maximum (f,g)-semi-matchings in bipartite graphs.

A semi-matching of this kind is an edge set in which every U-vertex u
has at most f(u) incident edges and every V-vertex v at most g(v).
``solve_max`` finds one of maximum size in O(m * min(sqrt(f(U)), sqrt(g(V))))
time by phases of shortest augmenting paths.
"""

from .applications import CostReport, cost, min_max_load, optimal_semi_matching, quasi_matching
from .augmenting import LayerStructure, adist, layered_bfs, run_phase
from .errors import (
    CapacityExhausted,
    DuplicateEdge,
    InvalidMatching,
    InvalidVertex,
    NotAlternating,
    NotLarger,
    ParseError,
    PhaseOnMaximum,
    SemiMatchingError,
    TooLarge,
    UnsaturatableU,
)
from .formats import Instance, emit_solution, format_instance, generate, parse_instance, parse_solution
from .graph import (
    AlternatingPath,
    BipartiteGraph,
    Capacities,
    SemiMatching,
    Violation,
    apply_path,
    build_graph,
    check_semi_matching,
)
from .solver import Certificate, SolveStats, certify_maximum, solve_max, solve_max_single

__version__ = "0.1.0"
