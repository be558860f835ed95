"""Exact solvers, oracles, and an interactive service for the geometric
switching game: pick any line through two or more points of a planar set
and negate the weight of every point on it, trying to drive the total
weight up (or, for the balancer, close to zero)."""

from .board import (
    BOUND_KINDS,
    DEFAULT_SWITCH_BUDGET,
    Configuration,
    SwitchCertificate,
    VerificationResult,
    format_certificate,
    new_board,
    parse_certificate,
    verify_certificate,
)
from .geometry import (
    IncidenceStructure,
    LineKey,
    Point,
    TkProfile,
    check_incidence_inequalities,
    collinear,
    connecting_lines,
    heavy_lines,
    incidence_profile,
    line_key,
    max_incidence_line,
    noncollinear,
    ordinary_line_graph,
)
from .instances import GeneratorSpec, generate, parse, serialize
from .oracle import board_value, max_discrepancy, reachable_bfs, switch_code
from .solvers import (
    NearPerfectParams,
    SolverOutcome,
    balance,
    clear_negative_lines,
    solve,
    solve_cubic,
    solve_general_position,
    solve_long_line,
    solve_near_perfect,
    solve_small,
    solve_third,
    third_bound,
    tree_switch,
    triple_fixup,
)

__version__ = "0.1.0"
