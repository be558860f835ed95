"""Exact game optima via the GF(2) linear code spanned by line switches.

Weight vectors reachable from w0 form a coset of the span of the line
indicator vectors.  Writing off(w0) for the 0/1 vector of -1 positions,
the best achievable discrepancy from w0 is n - 2 * (coset leader weight),
and the worst case over all w0 is n - 2 * (covering radius).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import CapExceededError, InternalInvariantError, PreconditionError
from .geometry import IncidenceStructure, LineKey

DEFAULT_CAP = 24
BFS_CAP = 16
_COSET_STATE_CAP = 1 << 20


@dataclass(frozen=True)
class SwitchCode:
    """Row-reduced span of the line indicator vectors of a board.

    Bit i of every mask refers to the i-th entry of ``indices`` of the
    incidence structure the code was built from (plain point index for a
    full board).  ``basis`` is in reduced row echelon form with ascending
    pivots; ``provenance[t]`` records which original lines (bits into
    ``line_keys``) were combined to produce basis row t.
    """

    n: int
    line_keys: tuple[LineKey, ...]
    line_masks: tuple[int, ...]
    basis: tuple[int, ...]
    pivots: tuple[int, ...]
    provenance: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class OracleResult:
    """An exact optimum plus, when available, data that witnesses it."""

    value: int
    witness_lines: tuple[int, ...] | None = None
    worst_weights: tuple[int, ...] | None = None


@dataclass(frozen=True)
class ReachableReport:
    count: int
    max_discrepancy: int


def _bit_positions(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def switch_code(structure: IncidenceStructure) -> SwitchCode:
    """Row-reduce the 0/1 matrix of line indicators over GF(2)."""
    pos = {i: b for b, i in enumerate(structure.indices)}
    n = structure.n
    line_keys = tuple(structure.lines)
    line_masks = []
    for key in line_keys:
        mask = 0
        for i in structure.lines[key]:
            mask |= 1 << pos[i]
        line_masks.append(mask)

    rows: list[tuple[int, int, int]] = []  # (pivot, mask, provenance)
    for li, mask in enumerate(line_masks):
        prov = 1 << li
        for pivot, bmask, bprov in rows:
            if (mask >> pivot) & 1:
                mask ^= bmask
                prov ^= bprov
        if mask:
            pivot = (mask & -mask).bit_length() - 1
            for t, (p2, m2, pr2) in enumerate(rows):
                if (m2 >> pivot) & 1:
                    rows[t] = (p2, m2 ^ mask, pr2 ^ prov)
            rows.append((pivot, mask, prov))
    rows.sort()
    return SwitchCode(
        n=n,
        line_keys=line_keys,
        line_masks=tuple(line_masks),
        basis=tuple(m for _, m, _ in rows),
        pivots=tuple(p for p, _, _ in rows),
        provenance=tuple(pr for _, _, pr in rows),
    )


def _off_mask(weights: Sequence[int], n: int) -> int:
    if len(weights) != n:
        raise PreconditionError(f"code length {n} but {len(weights)} weights")
    off = 0
    for i, w in enumerate(weights):
        if w == -1:
            off |= 1 << i
        elif w != 1:
            raise PreconditionError(f"weight at index {i} must be +1 or -1, got {w}")
    return off


def _witness_from_combo(code: SwitchCode, combo: int) -> tuple[int, ...]:
    prov = 0
    for t in _bit_positions(combo):
        prov ^= code.provenance[t]
    return _bit_positions(prov)


class _SyndromeTable:
    """Coset leader weights via breadth-first search over syndromes.

    The parity-check columns span GF(2)^(n-d), so the BFS from syndrome 0
    reaches every coset; the depth of a syndrome is its leader weight.
    """

    def __init__(self, code: SwitchCode):
        n, d = code.n, code.rank
        r = n - d
        if (1 << r) > _COSET_STATE_CAP:
            raise CapExceededError(
                f"coset enumeration needs 2^{r} states (cap 2^{_COSET_STATE_CAP.bit_length() - 1})",
                n=n,
                cap=_COSET_STATE_CAP.bit_length() - 1,
            )
        pivot_set = set(code.pivots)
        free = [c for c in range(n) if c not in pivot_set]
        cols = [0] * n
        for j, f in enumerate(free):
            cols[f] = 1 << j
        for t, row in enumerate(code.basis):
            bits = 0
            for j, f in enumerate(free):
                if (row >> f) & 1:
                    bits |= 1 << j
            cols[code.pivots[t]] = bits
        self.r = r
        self.cols = cols
        size = 1 << r
        dist = bytearray([255]) * size
        via = bytearray([255]) * size
        dist[0] = 0
        queue = deque([0])
        while queue:
            s = queue.popleft()
            nd = dist[s] + 1
            for col, step in enumerate(cols):
                t = s ^ step
                if dist[t] == 255:
                    dist[t] = nd
                    via[t] = col
                    queue.append(t)
        if 255 in dist:
            raise InternalInvariantError("syndrome BFS did not reach every coset")
        self.dist = dist
        self.via = via

    def syndrome(self, mask: int) -> int:
        s = 0
        for i in _bit_positions(mask):
            s ^= self.cols[i]
        return s

    def leader(self, s: int) -> int:
        """A minimum-weight vector with syndrome ``s``."""
        v = 0
        while s:
            col = self.via[s]
            v |= 1 << col
            s ^= self.cols[col]
        return v


def _leader_by_sweep(code: SwitchCode, off: int) -> tuple[int, int]:
    """(leader weight, basis combination) by enumerating all codewords."""
    cur = off
    combo = 0
    best_wt = cur.bit_count()
    best_combo = 0
    for step in range(1, 1 << code.rank):
        bit = (step & -step).bit_length() - 1
        cur ^= code.basis[bit]
        combo ^= 1 << bit
        wt = cur.bit_count()
        if wt < best_wt:
            best_wt = wt
            best_combo = combo
    return best_wt, best_combo


def _combo_for_codeword(code: SwitchCode, word: int) -> int:
    combo = 0
    acc = 0
    for t, pivot in enumerate(code.pivots):
        if (word >> pivot) & 1:
            combo |= 1 << t
            acc ^= code.basis[t]
    if acc != word:
        raise InternalInvariantError("vector is not in the switch code")
    return combo


def max_discrepancy(code: SwitchCode, weights: Sequence[int], cap: int = DEFAULT_CAP) -> OracleResult:
    """Exact best discrepancy reachable from ``weights``, with a witness.

    Enumerates either all 2^d codewords or all 2^(n-d) cosets, whichever
    is smaller.  The witness is one set of line indices whose switches
    realize the optimum.
    """
    n, d = code.n, code.rank
    if n > cap:
        raise CapExceededError(f"n={n} exceeds oracle cap {cap}", n=n, cap=cap)
    off = _off_mask(weights, n)
    if d <= n - d:
        best_wt, combo = _leader_by_sweep(code, off)
    else:
        table = _SyndromeTable(code)
        s = table.syndrome(off)
        best_wt = table.dist[s]
        combo = _combo_for_codeword(code, off ^ table.leader(s))
    return OracleResult(value=n - 2 * best_wt, witness_lines=_witness_from_combo(code, combo))


def board_value(code: SwitchCode, cap: int = DEFAULT_CAP) -> OracleResult:
    """Exact worst case over all initial weights: n - 2 * covering radius.

    ``worst_weights`` is an initial assignment attaining the minimum,
    namely -1 exactly on a deepest coset leader.
    """
    n = code.n
    if n > cap:
        raise CapExceededError(f"n={n} exceeds oracle cap {cap}", n=n, cap=cap)
    table = _SyndromeTable(code)
    radius = 0
    worst_syndrome = 0
    for s in range(1 << table.r):
        if table.dist[s] > radius:
            radius = table.dist[s]
            worst_syndrome = s
    leader = table.leader(worst_syndrome)
    worst = tuple(-1 if (leader >> i) & 1 else 1 for i in range(n))
    return OracleResult(value=n - 2 * radius, worst_weights=worst)


def reachable_bfs(structure: IncidenceStructure, weights: Sequence[int], cap: int = BFS_CAP) -> ReachableReport:
    """Independent cross-oracle: breadth-first closure under single switches.

    Explores raw weight states without any linear algebra; the reachable
    count must equal 2^rank and the best discrepancy must match
    ``max_discrepancy`` on every instance.
    """
    n = structure.n
    if n > cap:
        raise CapExceededError(f"n={n} exceeds reachable-set cap {cap}", n=n, cap=cap)
    pos = {i: b for b, i in enumerate(structure.indices)}
    masks = []
    for members in structure.lines.values():
        m = 0
        for i in members:
            m |= 1 << pos[i]
        masks.append(m)
    start = _off_mask(weights, n)
    seen = {start}
    queue = deque([start])
    best_off = start.bit_count()
    while queue:
        state = queue.popleft()
        for m in masks:
            t = state ^ m
            if t not in seen:
                seen.add(t)
                wt = t.bit_count()
                if wt < best_off:
                    best_off = wt
                queue.append(t)
    return ReachableReport(count=len(seen), max_discrepancy=n - 2 * best_off)
