"""Game state and certificates.

A Configuration is a fixed point set with its connecting lines, a mutable
vector of +-1 weights, and an append-only switch log.  Switching a line
negates the weight of every incident point, so the discrepancy (weight
sum) keeps the parity of n forever and every switch is its own inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import textio
from .errors import FormatError, PreconditionError, UnknownLineError
from .geometry import IncidenceStructure, LineKey, Point, connecting_lines

BOUND_KINDS = ("third", "n_minus_2", "near_perfect", "balance")

# Uniform O(n) switch-budget constant used by certificate verification.
# Every implemented solver stays well under 8n switches: the negative-line
# sweep uses at most n, tree switches at most |V(H)|-1 per component, and
# each 3-point peel at most 2 fix-up switches.
DEFAULT_SWITCH_BUDGET = 8

CERT_HEADER = "GBG-CERT v1"


def _check_weights(weights: Sequence[int], n: int) -> list[int]:
    if len(weights) != n:
        raise PreconditionError(f"{n} points but {len(weights)} weights")
    ws = list(weights)
    for i, w in enumerate(ws):
        if w not in (1, -1):
            raise PreconditionError(f"weight at index {i} must be +1 or -1, got {w}")
    return ws


@dataclass
class Configuration:
    """Point set + connecting lines + current weights + switch log.

    Single-writer: ``switch`` mutates in place and logs the key, so
    replaying the log from the initial weights reproduces the state.
    """

    incidence: IncidenceStructure
    weights: list[int]
    switch_log: list[LineKey] = field(default_factory=list)

    @property
    def points(self) -> tuple[Point, ...]:
        return self.incidence.points

    @property
    def n(self) -> int:
        return len(self.incidence.points)

    def discrepancy(self) -> int:
        return sum(self.weights)

    def line_points(self, key: LineKey) -> tuple[int, ...]:
        try:
            return self.incidence.lines[key]
        except KeyError:
            raise UnknownLineError(f"{key} is not a connecting line of this board") from None

    def switch(self, key: LineKey) -> "Configuration":
        """Negate every weight on ``key`` and append it to the log."""
        for i in self.line_points(key):
            self.weights[i] = -self.weights[i]
        self.switch_log.append(key)
        return self

    def undo(self) -> LineKey:
        """Revert the most recent switch (switches are involutions)."""
        if not self.switch_log:
            raise PreconditionError("nothing to undo")
        key = self.switch_log.pop()
        for i in self.incidence.lines[key]:
            self.weights[i] = -self.weights[i]
        return key

    def copy(self) -> "Configuration":
        return Configuration(self.incidence, list(self.weights), list(self.switch_log))


def new_board(points: Sequence[Point], weights: Sequence[int]) -> Configuration:
    """Build a board; points must be pairwise distinct, weights +-1."""
    incidence = connecting_lines(points)
    return Configuration(incidence=incidence, weights=_check_weights(weights, len(points)))


@dataclass(frozen=True)
class SwitchCertificate:
    """Replayable proof that a switch sequence reaches a claimed discrepancy."""

    initial_weights: tuple[int, ...]
    switches: tuple[LineKey, ...]
    claimed_discrepancy: int
    claimed_bound_kind: str

    def __post_init__(self) -> None:
        if self.claimed_bound_kind not in BOUND_KINDS:
            raise PreconditionError(
                f"unknown bound kind {self.claimed_bound_kind!r}; expected one of {BOUND_KINDS}"
            )


def claim_bound_ok(kind: str, claimed: int, final: int, n: int) -> bool:
    """Does the claimed value meet the promised bound for its kind?"""
    if kind == "third":
        return 3 * claimed >= n
    if kind in ("n_minus_2", "near_perfect"):
        return claimed >= n - 2
    if kind == "balance":
        return abs(final) <= 2
    raise PreconditionError(f"unknown bound kind {kind!r}")


@dataclass(frozen=True)
class VerificationResult:
    accepted: bool
    failures: tuple[str, ...]
    final_discrepancy: int | None
    switch_count: int

    def __bool__(self) -> bool:
        return self.accepted


def verify_certificate(
    points: Sequence[Point],
    cert: SwitchCertificate,
    switch_budget: int = DEFAULT_SWITCH_BUDGET,
) -> VerificationResult:
    """Replay a certificate and check all of its promises.

    Checks, each reported independently with the first offending index:
    (a) every switch is a connecting line of the board, (b) the replayed
    final discrepancy is >= the claim, (c) the claim meets the bound of
    its kind, (d) the switch count is within switch_budget * n.
    """
    failures: list[str] = []
    board = new_board(points, cert.initial_weights)
    n = board.n

    final: int | None = None
    for idx, key in enumerate(cert.switches):
        if key not in board.incidence.lines:
            failures.append(f"unknown line at switch {idx}: {key}")
            break
        board.switch(key)
    else:
        final = board.discrepancy()

    if final is not None and final < cert.claimed_discrepancy:
        failures.append(
            f"claim not met: replay reaches {final}, certificate claims {cert.claimed_discrepancy}"
        )
    if final is not None and not claim_bound_ok(cert.claimed_bound_kind, cert.claimed_discrepancy, final, n):
        failures.append(
            f"claimed value {cert.claimed_discrepancy} does not meet the "
            f"{cert.claimed_bound_kind!r} bound for n={n}"
        )
    if len(cert.switches) > switch_budget * n:
        failures.append(
            f"switch budget exceeded: {len(cert.switches)} switches > {switch_budget}*{n}"
        )

    return VerificationResult(
        accepted=not failures,
        failures=tuple(failures),
        final_discrepancy=final,
        switch_count=len(cert.switches),
    )


def format_certificate(points: Sequence[Point], cert: SwitchCertificate) -> str:
    """Certificate file: header, point block, one switch per line, CLAIM."""
    out = [CERT_HEADER]
    out.append(textio.serialize(points, cert.initial_weights).rstrip("\n"))
    for key in cert.switches:
        out.append(f"{key.a} {key.b} {key.c}")
    out.append(f"CLAIM {cert.claimed_bound_kind} {cert.claimed_discrepancy}")
    return "\n".join(out) + "\n"


def parse_certificate(text: str) -> tuple[list[Point], SwitchCertificate]:
    lines = textio.strip_comments(text)
    if not lines or lines[0] != CERT_HEADER:
        raise FormatError(f"certificate must start with {CERT_HEADER!r}")
    points, weights, nxt = textio.parse_point_lines(lines, start=1)
    switches: list[LineKey] = []
    claim: tuple[str, int] | None = None
    for lineno in range(nxt, len(lines)):
        parts = lines[lineno].split()
        if parts[0] == "CLAIM":
            if len(parts) != 3:
                raise FormatError(f"malformed CLAIM line: {lines[lineno]!r}")
            kind, value = parts[1], parts[2]
            if kind not in BOUND_KINDS:
                raise FormatError(f"unknown claim kind {kind!r}")
            try:
                claim = (kind, int(value))
            except ValueError:
                raise FormatError(f"claim value is not an integer: {value!r}") from None
            if lineno != len(lines) - 1:
                raise FormatError("CLAIM must be the last line of a certificate")
            break
        if len(parts) != 3:
            raise FormatError(f"switch line must be 'a b c', got {lines[lineno]!r}")
        try:
            a, b, c = (int(t) for t in parts)
        except ValueError:
            raise FormatError(f"non-integer switch line: {lines[lineno]!r}") from None
        switches.append(LineKey(a, b, c))
    if claim is None:
        raise FormatError("certificate is missing its CLAIM line")
    cert = SwitchCertificate(
        initial_weights=tuple(weights),
        switches=tuple(switches),
        claimed_discrepancy=claim[1],
        claimed_bound_kind=claim[0],
    )
    return points, cert
