"""Constructive switching strategies with replayable certificates.

Each solver mutates a private copy of the board, logs every switch, and
returns a SolverOutcome whose certificate replays to the reported final
discrepancy.  All strategies work on index subsets of the original board:
switches are chosen among the sub-board's connecting lines but applied to
the full weight vector, and fix-up switches never touch parts that were
already solved.

Guarantees (n = board size, noncollinear input):

* solve_third          final >= n/3, any board
* solve_general_position  final >= n-2 when no 3 points are collinear
* solve_cubic          final >= n-2 when at most one line has > 3 points
* solve_near_perfect   final >= n/3 always; >= n-2 whenever component
                       peeling runs to exhaustion
* balance              |final| <= 2

The near-perfect strategy peels large components of the ordinary line
graph.  The classification step that would handle boards whose ordinary
line graph has only small components (the Green-Tao structure theorem)
only applies at astronomically large n, so below that the solver falls
back to solve_cubic when at most one line is heavy, and to solve_third
otherwise; this keeps the n/3 guarantee unconditional.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .board import DEFAULT_SWITCH_BUDGET, Configuration, SwitchCertificate
from .errors import (
    CollinearInputError,
    InternalInvariantError,
    PreconditionError,
)
from .geometry import (
    Component,
    IncidenceStructure,
    LineKey,
    Point,
    connecting_lines,
    heavy_lines,
    line_key,
    max_incidence_line,
    noncollinear,
    ordinary_line_graph,
    rooted_tree,
)

SOLVER_NAMES = ("third", "gp", "cubic", "near-perfect", "balance", "auto")


def third_bound(n: int) -> int:
    """Smallest integer >= n/3 with the parity of n."""
    b = -(-n // 3)
    if (b - n) % 2:
        b += 1
    return b


@dataclass(frozen=True)
class NearPerfectParams:
    """Tuning for the component-peeling solver.

    ``min_component`` is the size a component must reach to be peeled
    (sizes below 3 would break the n/3 accounting, so an effective floor
    of 3 applies); ``small_cutoff`` sends smaller boards straight to the
    fallback solver; ``slack`` records the loss fraction the parameters
    were derived from (min_component ~ ceil(2/slack)).
    """

    slack: float = 0.5
    min_component: int = 4
    small_cutoff: int = 10

    def __post_init__(self) -> None:
        if not 0 < self.slack < 1:
            raise PreconditionError("slack must be strictly between 0 and 1")
        if self.min_component < 2:
            raise PreconditionError("min_component must be >= 2")
        if self.small_cutoff < 2 * self.min_component + 2:
            raise PreconditionError("small_cutoff must be >= 2*min_component + 2")


@dataclass
class SolverOutcome:
    certificate: SwitchCertificate
    final_discrepancy: int
    strategy_trace: list[dict]


# ---------------------------------------------------------------------------
# primitives


def _require_noncollinear(board: Configuration) -> None:
    if not noncollinear(board.points, range(board.n)):
        raise CollinearInputError("point set is collinear (or has fewer than 3 points)")


def _sub_structure(board: Configuration, active: Iterable[int]) -> IncidenceStructure:
    return connecting_lines(board.points, active)


def _line_sum(board: Configuration, structure: IncidenceStructure, key: LineKey) -> int:
    return sum(board.weights[i] for i in structure.lines[key])


def _clear_negative_lines(board: Configuration, structure: IncidenceStructure) -> int:
    """Switch negative lines of the sub-board until none remain.

    Always picks the negative line with the smallest key.  Every switch
    raises the active total by at least 2, so at most n switches happen.
    Returns the number of switches performed.
    """
    sums = {key: _line_sum(board, structure, key) for key in structure.lines}
    count = 0
    guard = 2 * structure.n + 4
    while True:
        target = None
        for key, s in sums.items():  # keys iterate in sorted order
            if s < 0:
                target = key
                break
        if target is None:
            return count
        if count >= guard:
            raise InternalInvariantError("negative-line sweep failed to terminate")
        board.switch(target)
        count += 1
        affected: set[LineKey] = set()
        for i in structure.lines[target]:
            affected.update(structure.point_to_lines[i])
        for key in affected:
            sums[key] = _line_sum(board, structure, key)


def _tree_switch(board: Configuration, structure: IncidenceStructure, comp: Component) -> int:
    """Make every component vertex except the root +1 via tree-edge switches.

    Vertices are processed from the deepest tree level up; each edge is an
    ordinary line of the active set, so a switch touches exactly its two
    endpoints there.  At most |V|-1 switches.
    """
    points = board.points
    count = 0
    order = sorted(comp.vertices, key=lambda v: (-comp.depth[v], v))
    for v in order:
        if v == comp.root:
            continue
        if board.weights[v] == -1:
            key = line_key(points[v], points[comp.parent[v]])
            incident = structure.lines.get(key)
            if incident is None or len(incident) != 2:
                raise PreconditionError(
                    f"tree edge {key} carries {0 if incident is None else len(incident)} active points, "
                    "expected exactly 2"
                )
            board.switch(key)
            count += 1
    return count


def _exhaustive_best(board: Configuration, structure: IncidenceStructure) -> int:
    """Reach the best weight state of a tiny sub-board by explicit search.

    Breadth-first over reachable active-weight states (at most 2^n for
    n <= 6), then replays the shortest path to the best state found.
    Only used as a last-resort guard in the small-case solver.
    """
    idx = structure.indices
    pos = {i: b for b, i in enumerate(idx)}
    masks = {}
    for key, members in structure.lines.items():
        m = 0
        for i in members:
            m |= 1 << pos[i]
        masks[key] = m
    start = 0
    for i in idx:
        if board.weights[i] == -1:
            start |= 1 << pos[i]
    prev: dict[int, tuple[int, LineKey] | None] = {start: None}
    queue = [start]
    qi = 0
    best, best_wt = start, start.bit_count()
    while qi < len(queue):
        state = queue[qi]
        qi += 1
        for key, m in masks.items():
            nxt = state ^ m
            if nxt not in prev:
                prev[nxt] = (state, key)
                queue.append(nxt)
                if nxt.bit_count() < best_wt:
                    best, best_wt = nxt, nxt.bit_count()
    path: list[LineKey] = []
    cur = best
    while prev[cur] is not None:
        state, key = prev[cur]  # type: ignore[misc]
        path.append(key)
        cur = state
    for key in reversed(path):
        board.switch(key)
    return len(path)


def _pencil_sweep(board: Configuration, structure: IncidenceStructure, long_line: LineKey) -> None:
    """All active points but one lie on ``long_line``: fix them pairwise.

    The line through the off point p and any x on the long line is
    ordinary in the active set, so switching it repairs x at the price of
    flipping p.  Afterwards everything but possibly p is +1.
    """
    on_line = structure.lines[long_line]
    off = [i for i in structure.indices if i not in set(on_line)]
    if len(off) != 1:
        raise InternalInvariantError(f"pencil sweep expects exactly one off point, got {len(off)}")
    p = off[0]
    for x in on_line:
        if board.weights[x] == -1:
            board.switch(line_key(board.points[p], board.points[x]))


def _fixup_triple_line(board: Configuration, structure: IncidenceStructure, key: LineKey) -> None:
    """Peeled collinear triple: switch its exactly-3-point line if negative."""
    if _line_sum(board, structure, key) < 0:
        board.switch(key)


def _fixup_shared_pair(board: Configuration, p: int, q: int, r: int) -> None:
    """Peeled triple {p, q, r} where pq and pr are ordinary active lines.

    Switch each line while negative, and if that leaves p positive with
    q, r a negative pair, switch both lines: p flips twice and the pair
    flips once, ending with all three positive.  The triple total ends
    >= 1 and no other active point is touched.
    """
    points = board.points
    l1 = line_key(points[p], points[q])
    l2 = line_key(points[p], points[r])
    w = board.weights
    if w[p] + w[q] < 0:
        board.switch(l1)
    if w[p] + w[r] < 0:
        board.switch(l2)
    if w[p] == 1 and w[q] == -1 and w[r] == -1:
        board.switch(l1)
        board.switch(l2)


# ---------------------------------------------------------------------------
# small boards (3 <= n <= 6)


def _solve_small_impl(
    board: Configuration,
    active: tuple[int, ...],
    structure: IncidenceStructure,
    trace: list[dict],
) -> None:
    n_a = len(active)
    bound = n_a - 2 if n_a <= 5 else 2
    long_line = max_incidence_line(structure)
    k_max = len(structure.lines[long_line])

    if k_max == 2:
        # general position: the negative-line sweep leaves at most one -1
        _clear_negative_lines(board, structure)
        case = "general_position"
    elif k_max == n_a - 1:
        # near-pencil: sweep leaves <= 2 negatives on the long line, then
        # repair them through the off point (the "double switch")
        _clear_negative_lines(board, structure)
        _pencil_sweep(board, structure, long_line)
        case = "near_pencil"
    elif n_a == 5 and k_max == 3:
        # after the sweep a negative pair would sit on a negative line
        _clear_negative_lines(board, structure)
        case = "no_negative_pair"
    elif n_a == 6 and k_max == 4:
        case = _small_six_heavy_four(board, active, structure, trace)
    elif n_a == 6 and k_max == 3:
        case = _small_six_triple(board, active, structure, trace)
    else:
        raise InternalInvariantError(f"unhandled small case n={n_a}, max line {k_max}")

    total = sum(board.weights[i] for i in active)
    if total < bound:
        # documented escape hatch: tiny boards are cheap to search outright
        _exhaustive_best(board, structure)
        trace.append({"step": "exhaustive_rescue", "points": list(active), "case": case})
        total = sum(board.weights[i] for i in active)
        if total < bound:
            raise InternalInvariantError(f"small board stuck at {total} < {bound}")
    trace.append({"step": "base_small", "points": list(active), "case": case})


def _small_six_heavy_four(
    board: Configuration,
    active: tuple[int, ...],
    structure: IncidenceStructure,
    trace: list[dict],
) -> str:
    """n = 6 with a 4-point line: peel an off point with two ordinary lines."""
    long_line = max_incidence_line(structure)
    on_line = structure.lines[long_line]
    off = [i for i in active if i not in set(on_line)]
    for p in off:
        targets = [
            x
            for x in on_line
            if structure.is_ordinary(line_key(board.points[p], board.points[x]))
        ]
        for q, r in combinations(targets, 2):
            rest = tuple(i for i in active if i not in (p, q, r))
            if noncollinear(board.points, rest):
                rest_structure = connecting_lines(board.points, rest)
                _solve_small_impl(board, rest, rest_structure, trace)
                _fixup_shared_pair(board, p, q, r)
                return "heavy_four_reduction"
    # not expected to happen: one of the two off points must qualify
    _exhaustive_best(board, structure)
    trace.append({"step": "exhaustive_rescue", "points": list(active), "case": "heavy_four_no_pair"})
    return "heavy_four_no_pair"


def _small_six_triple(
    board: Configuration,
    active: tuple[int, ...],
    structure: IncidenceStructure,
    trace: list[dict],
) -> str:
    """n = 6 whose largest line has 3 points: peel that triple."""
    triple_key = min(k for k, v in structure.lines.items() if len(v) == 3)
    triple = structure.lines[triple_key]
    rest = tuple(i for i in active if i not in set(triple))
    if noncollinear(board.points, rest):
        rest_structure = connecting_lines(board.points, rest)
        _solve_small_impl(board, rest, rest_structure, trace)
        _fixup_triple_line(board, structure, triple_key)
        return "triple_reduction"
    # two disjoint 3-point lines: the sweep alone leaves at most one -1
    _clear_negative_lines(board, structure)
    return "two_triples"


# ---------------------------------------------------------------------------
# the n/3 induction


def _long_line_triple(
    board: Configuration,
    active: tuple[int, ...],
    structure: IncidenceStructure,
    long_line: LineKey,
) -> tuple[int, int, int]:
    """Find p off the long line and q, r on it with pq, pr ordinary."""
    on_line = structure.lines[long_line]
    on_set = set(on_line)
    points = board.points
    for p in active:
        if p in on_set:
            continue
        targets = [x for x in on_line if structure.is_ordinary(line_key(points[p], points[x]))]
        for q, r in combinations(targets, 2):
            rest = tuple(i for i in active if i not in (p, q, r))
            if noncollinear(points, rest):
                return p, q, r
    raise InternalInvariantError("no ordinary pair through an off-line point exists")


def _shared_ordinary_pair(
    board: Configuration,
    active: tuple[int, ...],
    structure: IncidenceStructure,
) -> tuple[int, int, int]:
    """Two ordinary lines sharing a point; exists whenever t3 = 0.

    With no 3-point line, Hirzebruch's inequality forces at least n
    ordinary lines, while only n/2 can be pairwise vertex-disjoint.
    """
    graph = ordinary_line_graph(structure)
    for p in graph.vertices:
        for q, r in combinations(graph.adjacency[p], 2):
            rest = tuple(i for i in active if i not in (p, q, r))
            if noncollinear(board.points, rest):
                return p, q, r
    raise InternalInvariantError("no two ordinary lines share a point")


def _solve_third_engine(board: Configuration, active: Sequence[int], trace: list[dict]) -> None:
    """Peel 3 points per round, solve the base, then fix peels in reverse.

    Which triple to peel is a purely geometric choice, so the whole plan
    is laid out first; the weight-dependent switching happens innermost
    first, and each fix-up only ever touches its own triple within the
    active set of its level.
    """
    points = board.points
    act = tuple(sorted(active))
    plan: list[tuple] = []

    while True:
        structure = connecting_lines(points, act)
        n_a = len(act)
        if n_a <= 6:
            base: tuple = ("small", act, structure)
            break
        long_line = max_incidence_line(structure)
        k_max = len(structure.lines[long_line])
        if k_max >= n_a:
            raise InternalInvariantError("active set became collinear during peeling")
        if k_max == n_a - 1:
            base = ("pencil", act, structure, long_line)
            break
        if k_max >= n_a - 3:
            p, q, r = _long_line_triple(board, act, structure, long_line)
            plan.append(("pair", act, structure, p, q, r))
            trace.append({"step": "peel_pair", "triple": [p, q, r], "size": n_a})
            act = tuple(i for i in act if i not in (p, q, r))
            continue
        triple_keys = [k for k, v in structure.lines.items() if len(v) == 3]
        if triple_keys:
            key = min(triple_keys)
            triple = structure.lines[key]
            rest = tuple(i for i in act if i not in set(triple))
            if not noncollinear(points, rest):
                raise InternalInvariantError("peeling a triple left a collinear set")
            plan.append(("triple", act, structure, key))
            trace.append({"step": "peel_triple", "line": key.as_tuple(), "triple": list(triple)})
            act = rest
            continue
        p, q, r = _shared_ordinary_pair(board, act, structure)
        plan.append(("pair", act, structure, p, q, r))
        trace.append({"step": "peel_pair", "triple": [p, q, r], "size": n_a})
        act = tuple(i for i in act if i not in (p, q, r))

    if base[0] == "small":
        _solve_small_impl(board, base[1], base[2], trace)
    else:
        _pencil_sweep(board, base[2], base[3])
        trace.append({"step": "base_pencil", "points": list(base[1])})

    for record in reversed(plan):
        if record[0] == "triple":
            _, _, structure, key = record
            _fixup_triple_line(board, structure, key)
        else:
            _, _, _, p, q, r = record
            _fixup_shared_pair(board, p, q, r)


# ---------------------------------------------------------------------------
# component peeling (ordinary line graph)


@dataclass
class _PeelLevel:
    active: tuple[int, ...]
    structure: IncidenceStructure
    comp: Component
    rest_mode: str  # "none" | "recurse" | "sweep"
    rest: tuple[int, ...]
    sweep_anchor: int | None


def _plan_peels(
    board: Configuration,
    active: tuple[int, ...],
    trace: list[dict],
    min_component: int,
    small_cutoff: int | None,
) -> tuple[list[_PeelLevel], tuple[int, ...] | None]:
    """Plan component peels; returns (levels, leftover-for-fallback).

    Leftover is None when peeling exhausts the active set (final level has
    empty or collinear rest); otherwise it is the noncollinear set whose
    largest component fell below ``min_component`` (or whose size fell
    below ``small_cutoff``).
    """
    points = board.points
    act = active
    levels: list[_PeelLevel] = []
    while True:
        if small_cutoff is not None and len(act) < small_cutoff:
            return levels, act
        structure = connecting_lines(points, act)
        graph = ordinary_line_graph(structure)
        comp0 = max(graph.components, key=lambda c: (c.size, -min(c.vertices)))
        if comp0.size < max(min_component, 2):
            if small_cutoff is None:
                raise InternalInvariantError(
                    "a noncollinear set must span an ordinary line (Sylvester-Gallai)"
                )
            return levels, act
        heavy = heavy_lines(structure, 3)
        blocked: set[int] = set()
        for key in heavy:
            blocked.update(structure.lines[key])
        eligible = [v for v in comp0.vertices if v not in blocked]
        root = min(eligible) if eligible else min(comp0.vertices)
        comp = rooted_tree(graph.adjacency, comp0.vertices, root)
        rest = tuple(i for i in act if i not in set(comp.vertices))
        if not rest:
            levels.append(_PeelLevel(act, structure, comp, "none", (), None))
            trace.append({"step": "peel_component", "component": list(comp.vertices), "root": root, "rest": "none"})
            return levels, None
        if noncollinear(points, rest):
            levels.append(_PeelLevel(act, structure, comp, "recurse", rest, None))
            trace.append({"step": "peel_component", "component": list(comp.vertices), "root": root, "rest": "recurse"})
            act = rest
            continue
        # rest lies on one line: sweep it through a component point off that line
        if len(rest) >= 2:
            rest_line = line_key(points[rest[0]], points[rest[1]])
            anchors = [v for v in comp.vertices if not rest_line.contains(points[v])]
            if not anchors:
                raise InternalInvariantError("active set collinear with its own component")
            anchor = min(anchors)
        else:
            anchor = min(comp.vertices)
        levels.append(_PeelLevel(act, structure, comp, "sweep", rest, anchor))
        trace.append({"step": "peel_component", "component": list(comp.vertices), "root": root, "rest": "sweep"})
        return levels, None


def _execute_peels(
    board: Configuration,
    levels: list[_PeelLevel],
    trace: list[dict],
    strict_pair_fixup: bool,
) -> None:
    """Run planned peels innermost first: sweep rest, fix the tree, pair up.

    After each level at most the root and one residual point of the rest
    can be negative; when exactly those two remain and their line has at
    most 3 active points, switching it leaves at most one -1 in the level.
    """
    points = board.points
    for level in reversed(levels):
        if level.rest_mode == "sweep":
            assert level.sweep_anchor is not None
            for x in level.rest:
                if board.weights[x] == -1:
                    board.switch(line_key(points[level.sweep_anchor], points[x]))
            trace.append({"step": "sweep_rest", "rest": list(level.rest), "anchor": level.sweep_anchor})
        _tree_switch(board, level.structure, level.comp)
        minus = [i for i in level.active if board.weights[i] == -1]
        if len(minus) == 2 and level.comp.root in minus:
            u = level.comp.root
            v = minus[0] if minus[1] == u else minus[1]
            key = line_key(points[u], points[v])
            incident = level.structure.lines.get(key)
            if incident is not None and len(incident) <= 3:
                board.switch(key)
                trace.append({"step": "pair_fixup", "points": [u, v]})
            elif strict_pair_fixup:
                raise InternalInvariantError(
                    f"root avoids every heavy line yet {key} has {len(incident or ())} active points"
                )
            else:
                trace.append({"step": "unresolved_pair", "points": [u, v]})
        elif len(minus) > 2:
            if strict_pair_fixup:
                raise InternalInvariantError(f"{len(minus)} negatives after a strict peel level")
            trace.append({"step": "unresolved_residue", "points": minus})


# ---------------------------------------------------------------------------
# outcome plumbing


def _start(config: Configuration) -> tuple[Configuration, tuple[int, ...], int]:
    work = config.copy()
    return work, tuple(work.weights), len(work.switch_log)


def _finish(
    work: Configuration,
    initial: tuple[int, ...],
    base_len: int,
    kind: str,
    trace: list[dict],
) -> SolverOutcome:
    switches = tuple(work.switch_log[base_len:])
    final = work.discrepancy()
    if len(switches) > DEFAULT_SWITCH_BUDGET * work.n:
        raise InternalInvariantError(
            f"emitted {len(switches)} switches, over the {DEFAULT_SWITCH_BUDGET}n budget"
        )
    certificate = SwitchCertificate(
        initial_weights=initial,
        switches=switches,
        claimed_discrepancy=final,
        claimed_bound_kind=kind,
    )
    return SolverOutcome(certificate=certificate, final_discrepancy=final, strategy_trace=trace)


def _check_final(final: int, bound: int, what: str) -> None:
    if final < bound:
        raise InternalInvariantError(f"{what} reached {final}, guaranteed {bound}")


# ---------------------------------------------------------------------------
# public operations


def clear_negative_lines(config: Configuration, restrict_to: Iterable[int] | None = None) -> Configuration:
    """Switch negative connecting lines (smallest key first) until none remain.

    With ``restrict_to``, line sums and candidates come from the induced
    sub-board, but switches still flip every board point on the line.
    """
    active = tuple(sorted(restrict_to)) if restrict_to is not None else tuple(range(config.n))
    structure = _sub_structure(config, active)
    _clear_negative_lines(config, structure)
    return config


def tree_switch(
    config: Configuration,
    component: Component,
    root: int | None = None,
    active: Iterable[int] | None = None,
) -> Configuration:
    """Turn every component vertex except the root to +1 via tree edges.

    The component must live in the ordinary line graph of the active set;
    a tree edge whose line carries a third active point is rejected.
    """
    act = tuple(sorted(active)) if active is not None else tuple(range(config.n))
    structure = _sub_structure(config, act)
    comp = component
    if root is not None and root != component.root:
        graph = ordinary_line_graph(structure)
        comp = rooted_tree(graph.adjacency, component.vertices, root)
    _tree_switch(config, structure, comp)
    return config


def triple_fixup(
    config: Configuration,
    triple: tuple[int, int, int],
    case: str,
    active: Iterable[int] | None = None,
) -> Configuration:
    """Make a peeled triple sum >= 1 without touching the rest of the set.

    ``case="triple_line"``: the triple is collinear on a line with exactly
    three active points; switch it if negative.  ``case="shared_pair"``:
    the first point sees the other two along ordinary active lines; switch
    them as needed (including the double switch for a surviving negative
    pair).  Call this only after the rest of the active set is solved.
    """
    p, q, r = triple
    act = tuple(sorted(active)) if active is not None else tuple(range(config.n))
    structure = _sub_structure(config, act)
    rest = tuple(i for i in act if i not in (p, q, r))
    if not noncollinear(config.points, rest):
        raise PreconditionError("the active set minus the triple must be noncollinear")
    if case == "triple_line":
        key = line_key(config.points[p], config.points[q])
        if key != line_key(config.points[p], config.points[r]):
            raise PreconditionError("triple_line case needs a collinear triple")
        if len(structure.lines[key]) != 3:
            raise PreconditionError("the triple's line must carry exactly 3 active points")
        _fixup_triple_line(config, structure, key)
    elif case == "shared_pair":
        for other in (q, r):
            key = line_key(config.points[p], config.points[other])
            if not structure.is_ordinary(key):
                raise PreconditionError(f"line {key} is not ordinary in the active set")
        _fixup_shared_pair(config, p, q, r)
    else:
        raise PreconditionError(f"unknown case {case!r}; use 'triple_line' or 'shared_pair'")
    return config


def solve_general_position(config: Configuration) -> SolverOutcome:
    """No 3 collinear points: the negative-line sweep reaches >= n-2.

    Every connecting line is ordinary, so once no line is negative at
    most one -1 can survive (two would span a negative line).  Uses at
    most n/2 switches.
    """
    if config.n < 2:
        raise PreconditionError("need at least 2 points")
    structure = config.incidence
    if any(len(v) > 2 for v in structure.lines.values()):
        raise PreconditionError("point set is not in general position (3 collinear points)")
    work, initial, base_len = _start(config)
    trace: list[dict] = []
    switches = _clear_negative_lines(work, structure)
    if switches > config.n // 2:
        raise InternalInvariantError("general-position sweep exceeded n/2 switches")
    trace.append({"step": "negative_line_sweep", "switches": switches})
    outcome = _finish(work, initial, base_len, "n_minus_2", trace)
    _check_final(outcome.final_discrepancy, config.n - 2, "general-position solver")
    return outcome


def solve_small(config: Configuration) -> SolverOutcome:
    """Full case analysis for 3 <= n <= 6: final >= n-2 (>= 2 when n = 6)."""
    if not 3 <= config.n <= 6:
        raise PreconditionError(f"small-board solver needs 3 <= n <= 6, got {config.n}")
    _require_noncollinear(config)
    work, initial, base_len = _start(config)
    trace: list[dict] = []
    active = tuple(range(config.n))
    _solve_small_impl(work, active, work.incidence, trace)
    kind = "n_minus_2" if config.n <= 5 else "third"
    outcome = _finish(work, initial, base_len, kind, trace)
    bound = config.n - 2 if config.n <= 5 else 2
    _check_final(outcome.final_discrepancy, bound, "small-board solver")
    return outcome


def solve_long_line(config: Configuration) -> SolverOutcome:
    """Some line holds >= n-3 points (n >= 7): final >= n/3.

    With n-1 points on the line the pairwise sweep through the off point
    reaches n-2 directly; with n-3 or n-2 the induction peels a triple
    built from two ordinary lines through an off-line point.
    """
    if config.n < 7:
        raise PreconditionError("long-line solver needs n >= 7")
    _require_noncollinear(config)
    structure = config.incidence
    long_line = max_incidence_line(structure)
    k_max = len(structure.lines[long_line])
    if k_max < config.n - 3:
        raise PreconditionError(f"longest line has {k_max} points, need >= n-3 = {config.n - 3}")
    work, initial, base_len = _start(config)
    trace: list[dict] = []
    _solve_third_engine(work, range(config.n), trace)
    kind = "n_minus_2" if k_max == config.n - 1 else "third"
    outcome = _finish(work, initial, base_len, kind, trace)
    bound = config.n - 2 if k_max == config.n - 1 else third_bound(config.n)
    _check_final(outcome.final_discrepancy, bound, "long-line solver")
    return outcome


def solve_third(config: Configuration) -> SolverOutcome:
    """Any noncollinear board, n >= 3: final >= n/3 in O(n) switches.

    Dispatch: small boards to the case analysis; a line with >= n-3
    points to the long-line route; otherwise peel a 3-point line when one
    exists, else two ordinary lines sharing a point (t3 = 0 forces at
    least n ordinary lines via Hirzebruch's inequality).
    """
    if config.n < 3:
        raise PreconditionError("need at least 3 points")
    _require_noncollinear(config)
    work, initial, base_len = _start(config)
    trace: list[dict] = []
    if work.discrepancy() == config.n:
        trace.append({"step": "already_perfect"})
        return _finish(work, initial, base_len, "third", trace)
    _solve_third_engine(work, range(config.n), trace)
    outcome = _finish(work, initial, base_len, "third", trace)
    _check_final(outcome.final_discrepancy, third_bound(config.n), "n/3 solver")
    return outcome


def solve_cubic(config: Configuration) -> SolverOutcome:
    """At most one line with > 3 points (e.g. points on a cubic curve):
    final >= n-2.

    Peels the largest component of the ordinary line graph with its root
    chosen off the heavy line; collinear remainders are swept through a
    component point.  The surviving negative pair, if any, sits on a line
    through the root, which carries at most 3 points, so one more switch
    clears it.
    """
    _require_noncollinear(config)
    heavy = heavy_lines(config.incidence, 3)
    if len(heavy) > 1:
        raise PreconditionError(f"{len(heavy)} lines carry more than 3 points; at most 1 allowed")
    work, initial, base_len = _start(config)
    trace: list[dict] = []
    if work.discrepancy() == config.n:
        trace.append({"step": "already_perfect"})
        return _finish(work, initial, base_len, "n_minus_2", trace)
    levels, leftover = _plan_peels(work, tuple(range(config.n)), trace, min_component=2, small_cutoff=None)
    if leftover is not None:
        raise InternalInvariantError("component peeling must exhaust when at most one line is heavy")
    _execute_peels(work, levels, trace, strict_pair_fixup=True)
    outcome = _finish(work, initial, base_len, "n_minus_2", trace)
    _check_final(outcome.final_discrepancy, config.n - 2, "single-heavy-line solver")
    return outcome


def solve_near_perfect(config: Configuration, params: NearPerfectParams | None = None) -> SolverOutcome:
    """Peel big ordinary-line-graph components; fall back when they run out.

    Each peeled component loses at most 2 from perfection, so the final
    discrepancy is >= n - 2 * (peel count) when peeling exhausts the
    board.  When the largest component drops below ``min_component`` (or
    the remainder below ``small_cutoff``), the remainder goes to
    solve_cubic if at most one of its lines is heavy, else to
    solve_third; >= n/3 holds in every case.
    """
    params = params or NearPerfectParams()
    _require_noncollinear(config)
    work, initial, base_len = _start(config)
    trace: list[dict] = []
    if work.discrepancy() == config.n:
        trace.append({"step": "already_perfect"})
        return _finish(work, initial, base_len, "near_perfect", trace)

    levels, leftover = _plan_peels(
        work,
        tuple(range(config.n)),
        trace,
        min_component=max(params.min_component, 3),
        small_cutoff=params.small_cutoff,
    )
    if leftover is not None:
        sub_structure = _sub_structure(work, leftover)
        if len(heavy_lines(sub_structure, 3)) <= 1:
            trace.append({"step": "fallback", "solver": "cubic", "points": list(leftover)})
            sub_levels, sub_left = _plan_peels(work, leftover, trace, min_component=2, small_cutoff=None)
            if sub_left is not None:
                raise InternalInvariantError("cubic fallback failed to exhaust its set")
            _execute_peels(work, sub_levels, trace, strict_pair_fixup=True)
        else:
            trace.append({"step": "fallback", "solver": "third", "points": list(leftover)})
            _solve_third_engine(work, leftover, trace)
    _execute_peels(work, levels, trace, strict_pair_fixup=False)

    final = work.discrepancy()
    kind = "near_perfect" if final >= config.n - 2 else "third"
    outcome = _finish(work, initial, base_len, kind, trace)
    _check_final(outcome.final_discrepancy, third_bound(config.n), "near-perfect solver")
    return outcome


def balance(config: Configuration) -> SolverOutcome:
    """Drive |discrepancy| down to at most 2 (Moser-style balancing).

    Repeatedly set aside an ordinary line {p, q} (Sylvester-Gallai
    guarantees one), balance the remainder recursively or by sweeping it
    through an off-line point when collinear, then switch pq exactly when
    its pair total matches the sign of the remainder.
    """
    _require_noncollinear(config)
    work, initial, base_len = _start(config)
    trace: list[dict] = []
    points = work.points

    act = tuple(range(config.n))
    plan: list[tuple[tuple[int, ...], LineKey, int, int]] = []
    base: tuple
    while True:
        structure = connecting_lines(points, act)
        if len(act) == 3:
            base = ("three", act, structure)
            break
        ordinary = structure.ordinary_lines()
        if not ordinary:
            raise InternalInvariantError("noncollinear set without an ordinary line")
        key = min(ordinary)
        p, q = structure.lines[key]
        rest = tuple(i for i in act if i not in (p, q))
        if noncollinear(points, rest):
            plan.append((rest, key, p, q))
            trace.append({"step": "set_aside_pair", "pair": [p, q]})
            act = rest
            continue
        if len(rest) >= 2:
            rest_line = line_key(points[rest[0]], points[rest[1]])
            anchors = [v for v in (p, q) if not rest_line.contains(points[v])]
            if not anchors:
                raise InternalInvariantError("active set collinear with its ordinary pair")
            anchor = anchors[0]
        else:
            anchor = p
        base = ("sweep", act, structure, key, p, q, anchor, rest)
        break

    if base[0] == "three":
        _, b_act, structure = base
        total = sum(work.weights[i] for i in b_act)
        if abs(total) == 3:
            work.switch(min(structure.lines))
        trace.append({"step": "base_three", "points": list(b_act)})
    else:
        _, b_act, structure, key, p, q, anchor, rest = base
        target = 0 if len(rest) % 2 == 0 else 1
        current = sum(work.weights[i] for i in rest)
        while current != target:
            wanted = 1 if current > target else -1
            x = next(i for i in rest if work.weights[i] == wanted)
            work.switch(line_key(points[anchor], points[x]))
            current += -2 * wanted
        pair_total = work.weights[p] + work.weights[q]
        if pair_total != 0 and current != 0 and (pair_total > 0) == (current > 0):
            work.switch(key)
        trace.append({"step": "base_sweep", "pair": [p, q], "rest": list(rest), "anchor": anchor})

    for rest, key, p, q in reversed(plan):
        rest_total = sum(work.weights[i] for i in rest)
        pair_total = work.weights[p] + work.weights[q]
        if pair_total != 0 and rest_total != 0 and (pair_total > 0) == (rest_total > 0):
            work.switch(key)

    outcome = _finish(work, initial, base_len, "balance", trace)
    if abs(outcome.final_discrepancy) > 2:
        raise InternalInvariantError(f"balancer ended at |{outcome.final_discrepancy}| > 2")
    return outcome


def solve(config: Configuration, selection: str, params: NearPerfectParams | None = None) -> SolverOutcome:
    """Run the solver named by a selection string ("auto" = near-perfect)."""
    if selection == "third":
        return solve_third(config)
    if selection == "gp":
        return solve_general_position(config)
    if selection == "cubic":
        return solve_cubic(config)
    if selection in ("near-perfect", "auto"):
        return solve_near_perfect(config, params)
    if selection == "balance":
        return balance(config)
    raise PreconditionError(f"unknown solver {selection!r}; expected one of {SOLVER_NAMES}")
