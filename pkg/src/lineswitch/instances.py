"""Deterministic instance generators plus the shared text format.

Every generator is a pure function of (spec, seed).  Classes cover the
structural regimes the solvers care about: a single dominant line
(near_pencil, collinear_plus_k), many 3-point lines (grid, cubic,
circle_plus_line), and no 3-point lines at all (random_gp).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

from .errors import CapExceededError, InfeasibleSpecError, PreconditionError
from .geometry import Point, collinear, connecting_lines
from .oracle import DEFAULT_CAP, board_value, switch_code
from .textio import parse, serialize  # re-exported: the shared wire format

__all__ = [
    "KINDS",
    "WEIGHT_MODES",
    "GeneratorSpec",
    "generate",
    "parse",
    "serialize",
]

KINDS = ("near_pencil", "grid", "random_gp", "cubic", "circle_plus_line", "collinear_plus_k")
WEIGHT_MODES = ("all_plus", "all_minus", "random", "worst_case_search")

_GP_RETRY_CAP = 10_000
_WEIGHT_SEED_MIX = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate: a structural class, size parameters, seed, weights."""

    kind: str
    n: int = 0
    rows: int = 0
    cols: int = 0
    k: int = 1
    seed: int = 0
    weight_mode: str = "all_plus"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown instance kind {self.kind!r}; expected one of {KINDS}")
        if self.weight_mode not in WEIGHT_MODES:
            raise PreconditionError(
                f"unknown weight mode {self.weight_mode!r}; expected one of {WEIGHT_MODES}"
            )

    @classmethod
    def from_string(cls, text: str) -> "GeneratorSpec":
        """Parse a single-line spec like "kind=grid rows=3 cols=3 seed=1"."""
        fields: dict[str, object] = {}
        for token in text.split():
            if "=" not in token:
                raise PreconditionError(f"spec token must be key=value, got {token!r}")
            key, value = token.split("=", 1)
            if key == "kind" or key == "weight_mode":
                fields[key] = value
            elif key in ("n", "rows", "cols", "k", "seed"):
                try:
                    fields[key] = int(value)
                except ValueError:
                    raise PreconditionError(f"spec value for {key} must be an integer: {value!r}") from None
            else:
                raise PreconditionError(f"unknown spec key {key!r}")
        if "kind" not in fields:
            raise PreconditionError("spec string must set kind=...")
        return cls(**fields)  # type: ignore[arg-type]

    def to_string(self) -> str:
        parts = [f"kind={self.kind}"]
        if self.kind == "grid":
            parts += [f"rows={self.rows}", f"cols={self.cols}"]
        else:
            parts.append(f"n={self.n}")
        if self.kind in ("circle_plus_line", "collinear_plus_k"):
            parts.append(f"k={self.k}")
        parts += [f"seed={self.seed}", f"weight_mode={self.weight_mode}"]
        return " ".join(parts)


def _near_pencil(n: int) -> list[Point]:
    if n < 3:
        raise InfeasibleSpecError("near_pencil needs n >= 3")
    return [Point(i, 0) for i in range(n - 1)] + [Point(0, 1)]


def _grid(rows: int, cols: int) -> list[Point]:
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise InfeasibleSpecError("grid needs rows, cols >= 1 and at least 2 points")
    return [Point(x, y) for y in range(rows) for x in range(cols)]


def _random_gp(n: int, rng: random.Random) -> list[Point]:
    if n < 1:
        raise InfeasibleSpecError("random_gp needs n >= 1")
    box = max(8, n * n)
    points: list[Point] = []
    taken: set[tuple[int, int]] = set()
    for _ in range(n):
        for attempt in range(_GP_RETRY_CAP):
            cand = Point(rng.randint(0, box), rng.randint(0, box))
            if (cand.x, cand.y) in taken:
                continue
            ok = True
            for i in range(len(points)):
                for j in range(i + 1, len(points)):
                    if collinear(points[i], points[j], cand):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                points.append(cand)
                taken.add((cand.x, cand.y))
                break
        else:
            raise InfeasibleSpecError(f"could not place point {len(points)} in general position")
    return points


def _cubic(n: int) -> list[Point]:
    """Integer points on y = x^3; every line meets the curve <= 3 times.

    Three curve points are collinear exactly when their x's sum to zero,
    so the symmetric range {-1, 0, 1} would itself be collinear; n = 3
    uses a shifted range instead.
    """
    if n < 2:
        raise InfeasibleSpecError("cubic needs n >= 2")
    if n == 3:
        return [Point(x, x**3) for x in (0, 1, 2)]
    start = -(n // 2)
    return [Point(x, x**3) for x in range(start, start + n)]


def _circle_radius_for(count: int) -> int:
    """Smallest product of primes 1 mod 4 whose circle has >= count lattice points."""
    primes = (5, 13, 17, 29, 37, 41)
    radius = 1
    for i in range(len(primes)):
        radius *= primes[i]
        # r2(R^2) for squarefree R with i+1 prime factors 1 mod 4: 4 * 3^(i+1)
        if 4 * 3 ** (i + 1) >= count:
            return radius
    raise InfeasibleSpecError(f"cannot host {count} lattice points on a circle")


def _circle_points(radius: int) -> list[Point]:
    points = []
    for x in range(radius + 1):
        y2 = radius * radius - x * x
        y = math.isqrt(y2)
        if y * y == y2:
            for sx in (x, -x):
                for sy in (y, -y):
                    points.append(Point(sx, sy))
    return sorted(set(points), key=lambda p: (p.x, p.y))


def _circle_plus_line(n: int, k: int) -> list[Point]:
    """Points on a circle plus a run of collinear points on a distant line.

    A stress class with many 3-point lines and one heavy line; a finite
    line stands in for a pencil of directions, so this is analogous to,
    not identical with, the projective extremal sets.
    """
    if k < 0 or n - k < 3:
        raise InfeasibleSpecError("circle_plus_line needs at least 3 circle points")
    on_circle = n - k
    radius = _circle_radius_for(on_circle)
    pts = _circle_points(radius)[:on_circle]
    line_y = 2 * radius + 1
    pts += [Point(i, line_y) for i in range(k)]
    return pts


def _collinear_plus_k(n: int, k: int) -> list[Point]:
    """n points on y = 0 plus k off-line points on a parabola (never 3 collinear)."""
    if n < 2 or k < 0:
        raise InfeasibleSpecError("collinear_plus_k needs n >= 2 on the line and k >= 0")
    pts = [Point(i, 0) for i in range(n)]
    pts += [Point(j, (j + 1) ** 2) for j in range(k)]
    return pts


def generate(spec: GeneratorSpec) -> tuple[list[Point], list[int]]:
    """Produce (points, weights), bit-identical for identical (spec, seed)."""
    rng = random.Random(spec.seed)
    if spec.kind == "near_pencil":
        points = _near_pencil(spec.n)
    elif spec.kind == "grid":
        points = _grid(spec.rows, spec.cols)
    elif spec.kind == "random_gp":
        points = _random_gp(spec.n, rng)
    elif spec.kind == "cubic":
        points = _cubic(spec.n)
    elif spec.kind == "circle_plus_line":
        points = _circle_plus_line(spec.n, spec.k)
    else:
        points = _collinear_plus_k(spec.n, spec.k)

    n = len(points)
    if spec.weight_mode == "all_plus":
        weights = [1] * n
    elif spec.weight_mode == "all_minus":
        weights = [-1] * n
    elif spec.weight_mode == "random":
        wrng = random.Random((spec.seed * _WEIGHT_SEED_MIX + 1) % 2**63)
        weights = [wrng.choice((1, -1)) for _ in range(n)]
    else:  # worst_case_search
        if n > DEFAULT_CAP:
            raise CapExceededError(
                f"worst_case_search needs n <= {DEFAULT_CAP}, got {n}", n=n, cap=DEFAULT_CAP
            )
        code = switch_code(connecting_lines(points))
        result = board_value(code)
        assert result.worst_weights is not None
        weights = list(result.worst_weights)
    return points, weights
