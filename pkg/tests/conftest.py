"""Shared test helpers: random point sets and generator sweeps."""

from __future__ import annotations

import random

from hypothesis import HealthCheck, settings

from lineswitch import GeneratorSpec, Point, generate

settings.register_profile(
    "suite", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

ALL_KINDS = ("near_pencil", "grid", "random_gp", "cubic", "collinear_plus_k", "circle_plus_line")


def random_point_set(rng: random.Random, n: int, box: int | None = None) -> list[Point]:
    """n distinct integer points, collinearity unconstrained."""
    box = box or max(4, 2 * n)
    seen: set[tuple[int, int]] = set()
    points: list[Point] = []
    while len(points) < n:
        cand = (rng.randint(-box, box), rng.randint(-box, box))
        if cand not in seen:
            seen.add(cand)
            points.append(Point(*cand))
    return points


def spec_for(kind: str, n: int, seed: int, weight_mode: str = "random") -> GeneratorSpec:
    """A size-n-ish spec of the given class (grid sizes round up)."""
    if kind == "grid":
        rows = max(2, round(n**0.5))
        cols = max(2, -(-n // rows))
        return GeneratorSpec(kind=kind, rows=rows, cols=cols, seed=seed, weight_mode=weight_mode)
    if kind == "circle_plus_line":
        return GeneratorSpec(kind=kind, n=max(n, 6), k=max(0, n // 3), seed=seed, weight_mode=weight_mode)
    if kind == "collinear_plus_k":
        return GeneratorSpec(kind=kind, n=max(n - 3, 2), k=3, seed=seed, weight_mode=weight_mode)
    return GeneratorSpec(kind=kind, n=max(n, 3), seed=seed, weight_mode=weight_mode)


def generate_for(kind: str, n: int, seed: int, weight_mode: str = "random"):
    return generate(spec_for(kind, n, seed, weight_mode))
