"""Exact planar incidence geometry over arbitrary-precision integers.

Everything here is affine and exact: points are integer pairs, lines are
canonical primitive integer triples, and every predicate is an integer
determinant.  No floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DuplicatePointError,
    IdenticalPointsError,
    InternalInvariantError,
    PreconditionError,
)


@dataclass(frozen=True, slots=True)
class Point:
    """A planar point with exact integer coordinates."""

    x: int
    y: int


@dataclass(frozen=True, slots=True, order=True)
class LineKey:
    """Canonical name of the line a*x + b*y + c = 0.

    Invariants: (a, b) != (0, 0), gcd(|a|, |b|, |c|) = 1, and the first
    nonzero of (a, b) is positive.  Two coincident lines always reduce to
    the same key, so keys can be used as dictionary keys and compared
    lexicographically for deterministic tie-breaking.
    """

    a: int
    b: int
    c: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def contains(self, p: Point) -> bool:
        return self.a * p.x + self.b * p.y + self.c == 0

    def __str__(self) -> str:
        return f"({self.a} {self.b} {self.c})"


def line_key(p: Point, q: Point) -> LineKey:
    """Canonical key of the unique line through two distinct points."""
    if p == q:
        raise IdenticalPointsError(f"no unique line through identical points ({p.x}, {p.y})")
    a = q.y - p.y
    b = p.x - q.x
    c = q.x * p.y - p.x * q.y
    g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
    a //= g
    b //= g
    c //= g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return LineKey(a, b, c)


def collinear(p: Point, q: Point, r: Point) -> bool:
    """Exact orientation predicate: True iff p, q, r lie on one line."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x) == 0


def noncollinear(points: Sequence[Point], indices: Iterable[int]) -> bool:
    """True iff the indexed subset has >= 3 points not all on one line."""
    idx = list(indices)
    if len(idx) < 3:
        return False
    p, q = points[idx[0]], points[idx[1]]
    return any(not collinear(p, q, points[i]) for i in idx[2:])


@dataclass(frozen=True)
class IncidenceStructure:
    """All connecting lines of a point set (or of an index subset of one).

    ``lines`` maps each LineKey to the sorted indices of incident points
    drawn from ``indices``; every unordered pair of active points lies on
    exactly one stored line.
    """

    points: tuple[Point, ...]
    indices: tuple[int, ...]
    lines: dict[LineKey, tuple[int, ...]]
    point_to_lines: dict[int, tuple[LineKey, ...]]

    @property
    def n(self) -> int:
        return len(self.indices)

    def incident(self, key: LineKey) -> tuple[int, ...]:
        return self.lines[key]

    def is_ordinary(self, key: LineKey) -> bool:
        return len(self.lines[key]) == 2

    def ordinary_lines(self) -> list[LineKey]:
        return [k for k, pts in self.lines.items() if len(pts) == 2]


@dataclass(frozen=True)
class TkProfile:
    """Counts t[k] of connecting lines incident to exactly k points."""

    n: int
    t: dict[int, int]

    def count(self, k: int) -> int:
        return self.t.get(k, 0)


@dataclass(frozen=True)
class Component:
    """A connected component of the ordinary line graph with a rooted tree.

    ``parent`` maps every non-root vertex to its tree parent; ``order`` is
    the breadth-first discovery order starting at the root.
    """

    vertices: tuple[int, ...]
    root: int
    parent: dict[int, int]
    depth: dict[int, int]
    order: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class OrdinaryLineGraph:
    """Graph on point indices whose edges are the 2-point connecting lines."""

    vertices: tuple[int, ...]
    adjacency: dict[int, tuple[int, ...]]
    components: tuple[Component, ...]

    def edge_count(self) -> int:
        return sum(len(v) for v in self.adjacency.values()) // 2


def connecting_lines(points: Sequence[Point], active: Iterable[int] | None = None) -> IncidenceStructure:
    """Group all point pairs of the (sub)set by the line through them.

    Runs over all C(n, 2) pairs of ``active`` (default: every index).
    Incident index lists keep the original indexing into ``points``.
    """
    pts = tuple(points)
    idx = tuple(sorted(active)) if active is not None else tuple(range(len(pts)))
    if len(idx) < 2:
        raise PreconditionError("need at least 2 points to form connecting lines")
    seen: dict[tuple[int, int], int] = {}
    for i in idx:
        key = (pts[i].x, pts[i].y)
        if key in seen:
            raise DuplicatePointError(f"duplicate point ({key[0]}, {key[1]}) at indices {seen[key]} and {i}")
        seen[key] = i

    buckets: dict[LineKey, set[int]] = {}
    for a in range(len(idx)):
        i = idx[a]
        pi = pts[i]
        for b in range(a + 1, len(idx)):
            j = idx[b]
            key = line_key(pi, pts[j])
            got = buckets.get(key)
            if got is None:
                buckets[key] = {i, j}
            else:
                got.add(i)
                got.add(j)

    lines = {key: tuple(sorted(buckets[key])) for key in sorted(buckets)}
    inverse: dict[int, list[LineKey]] = {i: [] for i in idx}
    for key, members in lines.items():
        for i in members:
            inverse[i].append(key)
    point_to_lines = {i: tuple(ks) for i, ks in inverse.items()}
    return IncidenceStructure(points=pts, indices=idx, lines=lines, point_to_lines=point_to_lines)


def incidence_profile(structure: IncidenceStructure) -> TkProfile:
    """Compute the t_k profile and check the pair-counting identity.

    Every unordered pair lies on exactly one line, so the k-point lines
    must account for all C(n, 2) pairs; a mismatch means the incidence
    structure itself is corrupt.
    """
    t: dict[int, int] = {}
    pair_total = 0
    for members in structure.lines.values():
        k = len(members)
        t[k] = t.get(k, 0) + 1
        pair_total += k * (k - 1) // 2
    n = structure.n
    if pair_total != n * (n - 1) // 2:
        raise InternalInvariantError(
            f"pair-counting identity failed: lines cover {pair_total} pairs, expected {n * (n - 1) // 2}"
        )
    return TkProfile(n=n, t=dict(sorted(t.items())))


def rooted_tree(adjacency: dict[int, tuple[int, ...]], vertices: Iterable[int], root: int) -> Component:
    """Breadth-first spanning tree of one component, rooted at ``root``.

    Neighbor lists are visited in sorted order, so the tree is a
    deterministic function of the graph and the root.
    """
    verts = set(vertices)
    if root not in verts:
        raise PreconditionError(f"root {root} is not a vertex of the component")
    parent: dict[int, int] = {}
    depth: dict[int, int] = {root: 0}
    order = [root]
    frontier = [root]
    while frontier:
        nxt: list[int] = []
        for v in frontier:
            for w in adjacency.get(v, ()):
                if w in verts and w not in depth:
                    depth[w] = depth[v] + 1
                    parent[w] = v
                    order.append(w)
                    nxt.append(w)
        frontier = nxt
    if len(order) != len(verts):
        raise PreconditionError("vertex set is not connected in the given graph")
    return Component(vertices=tuple(sorted(verts)), root=root, parent=parent, depth=depth, order=tuple(order))


def ordinary_line_graph(structure: IncidenceStructure) -> OrdinaryLineGraph:
    """Graph whose edges are exactly the 2-point lines of the structure.

    Each connected component carries a breadth-first spanning tree rooted
    at its lowest index; components are listed by lowest vertex.
    """
    adj: dict[int, list[int]] = {i: [] for i in structure.indices}
    for members in structure.lines.values():
        if len(members) == 2:
            u, v = members
            adj[u].append(v)
            adj[v].append(u)
    adjacency = {i: tuple(sorted(ns)) for i, ns in adj.items()}

    components: list[Component] = []
    visited: set[int] = set()
    for start in structure.indices:
        if start in visited:
            continue
        comp_vertices = [start]
        visited.add(start)
        frontier = [start]
        while frontier:
            nxt: list[int] = []
            for v in frontier:
                for w in adjacency[v]:
                    if w not in visited:
                        visited.add(w)
                        comp_vertices.append(w)
                        nxt.append(w)
            frontier = nxt
        components.append(rooted_tree(adjacency, comp_vertices, min(comp_vertices)))
    return OrdinaryLineGraph(vertices=structure.indices, adjacency=adjacency, components=tuple(components))


def max_incidence_line(structure: IncidenceStructure) -> LineKey:
    """A line through the maximum number of points; ties pick the smallest key."""
    best = max(len(v) for v in structure.lines.values())
    return min(k for k, v in structure.lines.items() if len(v) == best)


def heavy_lines(structure: IncidenceStructure, threshold: int) -> list[LineKey]:
    """All lines with more than ``threshold`` incident points, sorted."""
    if threshold < 2:
        raise PreconditionError("threshold must be >= 2")
    return sorted(k for k, v in structure.lines.items() if len(v) > threshold)


@dataclass(frozen=True)
class InequalityCheck:
    """Outcome of one incidence inequality on a t_k profile.

    ``satisfied`` is None when the hypothesis does not hold.  ``lhs`` and
    ``rhs`` are exact integers at the given ``scale`` (the Hirzebruch
    check is scaled by 4 to stay in integer arithmetic).
    """

    name: str
    hypothesis: bool
    satisfied: bool | None
    lhs: int
    rhs: int
    scale: int = 1

    @property
    def violated(self) -> bool:
        return self.hypothesis and self.satisfied is False


@dataclass(frozen=True)
class InequalityReport:
    erdos_purdy: InequalityCheck
    hirzebruch: InequalityCheck

    @property
    def violated(self) -> bool:
        return self.erdos_purdy.violated or self.hirzebruch.violated

    def checks(self) -> tuple[InequalityCheck, InequalityCheck]:
        return (self.erdos_purdy, self.hirzebruch)


def check_incidence_inequalities(profile: TkProfile) -> InequalityReport:
    """Evaluate the Erdos-Purdy and Hirzebruch line-count inequalities.

    Erdos-Purdy: max(t2, t3) >= n - 1 whenever n >= 25 and t_n = 0.
    Hirzebruch: t2 + (3/4) t3 >= n + sum_{k>=5} (2k - 9) t_k whenever
    t_n = t_{n-1} = t_{n-2} = 0.  A profile that meets a hypothesis but
    fails the inequality can only come from a broken incidence count.
    """
    n = profile.n
    t2 = profile.count(2)
    t3 = profile.count(3)

    ep_hyp = n >= 25 and profile.count(n) == 0
    ep_lhs = max(t2, t3)
    ep_rhs = n - 1
    erdos_purdy = InequalityCheck(
        name="erdos_purdy",
        hypothesis=ep_hyp,
        satisfied=(ep_lhs >= ep_rhs) if ep_hyp else None,
        lhs=ep_lhs,
        rhs=ep_rhs,
    )

    h_hyp = all(profile.count(k) == 0 for k in (n, n - 1, n - 2)) and n >= 3
    h_lhs = 4 * t2 + 3 * t3
    h_rhs = 4 * n + sum(4 * (2 * k - 9) * cnt for k, cnt in profile.t.items() if k >= 5)
    hirzebruch = InequalityCheck(
        name="hirzebruch",
        hypothesis=h_hyp,
        satisfied=(h_lhs >= h_rhs) if h_hyp else None,
        lhs=h_lhs,
        rhs=h_rhs,
        scale=4,
    )
    return InequalityReport(erdos_purdy=erdos_purdy, hirzebruch=hirzebruch)
