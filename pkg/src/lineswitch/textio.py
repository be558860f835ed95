"""Shared point-set text format.

Line 1 is the point count n, followed by n lines "x y w" with integer
coordinates and w in {+1, -1}.  A '#' starts a comment anywhere on a line;
blank lines are ignored.  The same block is embedded in certificate files.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DuplicatePointError, FormatError
from .geometry import Point


def strip_comments(text: str) -> list[str]:
    """Content lines of ``text`` with comments and blanks removed."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _parse_int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {lineno}: {what} is not an integer: {token!r}") from None


def parse_point_lines(lines: list[str], start: int = 0) -> tuple[list[Point], list[int], int]:
    """Parse "n, then n point rows" starting at ``lines[start]``.

    Returns (points, weights, next_index).  Used both for standalone
    instance files and for the point block inside certificates.
    """
    if start >= len(lines):
        raise FormatError("missing point count line")
    n = _parse_int(lines[start], "point count", start + 1)
    if n < 1:
        raise FormatError(f"point count must be positive, got {n}")
    if start + 1 + n > len(lines):
        raise FormatError(f"expected {n} point lines, found {len(lines) - start - 1}")
    points: list[Point] = []
    weights: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    for row in range(n):
        lineno = start + 1 + row
        parts = lines[lineno].split()
        if len(parts) != 3:
            raise FormatError(f"line {lineno + 1}: expected 'x y w', got {lines[lineno]!r}")
        x = _parse_int(parts[0], "x coordinate", lineno + 1)
        y = _parse_int(parts[1], "y coordinate", lineno + 1)
        w = _parse_int(parts[2], "weight", lineno + 1)
        if w not in (1, -1):
            raise FormatError(f"line {lineno + 1}: weight must be +1 or -1, got {w}")
        if (x, y) in seen:
            raise DuplicatePointError(f"line {lineno + 1}: duplicate point ({x}, {y})")
        seen[(x, y)] = row
        points.append(Point(x, y))
        weights.append(w)
    return points, weights, start + 1 + n


def parse(text: str) -> tuple[list[Point], list[int]]:
    """Parse a complete instance file."""
    lines = strip_comments(text)
    points, weights, nxt = parse_point_lines(lines)
    if nxt != len(lines):
        raise FormatError(f"trailing content after point block: {lines[nxt]!r}")
    return points, weights


def serialize(points: Sequence[Point], weights: Sequence[int]) -> str:
    """Canonical text for an instance; parse(serialize(...)) round-trips."""
    if len(points) != len(weights):
        raise FormatError(f"{len(points)} points but {len(weights)} weights")
    rows = [str(len(points))]
    for p, w in zip(points, weights):
        rows.append(f"{p.x} {p.y} {w}")
    return "\n".join(rows) + "\n"
