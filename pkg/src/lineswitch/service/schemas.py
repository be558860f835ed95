"""Pydantic request/response models for the playground API.

Coordinates and line keys are exact integers; values beyond 53 bits are
sent as strings so that no JSON consumer silently rounds them.
"""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator

from ..errors import FormatError

WIRE_INT_LIMIT = 1 << 53

WireInt = int | str


def wire_int(value: int) -> WireInt:
    return value if -WIRE_INT_LIMIT < value < WIRE_INT_LIMIT else str(value)


def read_int(value: WireInt, what: str = "integer") -> int:
    if isinstance(value, bool):
        raise FormatError(f"{what} must be an integer, got a boolean")
    if isinstance(value, int):
        return value
    try:
        return int(value)
    except ValueError:
        raise FormatError(f"{what} is not an integer: {value!r}") from None


class InstanceBody(BaseModel):
    points: list[list[WireInt]]
    weights: list[int]


class GeneratorBody(BaseModel):
    kind: str
    n: int = 0
    rows: int = 0
    cols: int = 0
    k: int = 1
    seed: int = 0
    weight_mode: str = "all_plus"


class CreateSessionRequest(BaseModel):
    instance: InstanceBody | None = None
    generator: GeneratorBody | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "CreateSessionRequest":
        if (self.instance is None) == (self.generator is None):
            raise ValueError("provide exactly one of 'instance' or 'generator'")
        return self


class LineInfo(BaseModel):
    key: list[WireInt] = Field(description="canonical [a, b, c] of a*x + b*y + c = 0")
    points: list[int] = Field(description="indices of incident points")


class SessionState(BaseModel):
    id: str
    n: int
    points: list[list[WireInt]]
    weights: list[int]
    lines: list[LineInfo]
    discrepancy: int
    switch_count: int
    created_at: float


class SwitchRequest(BaseModel):
    line: list[WireInt] = Field(min_length=3, max_length=3)


class SwitchResponse(BaseModel):
    flipped: list[int]
    discrepancy: int
    switch_count: int


class UndoResponse(BaseModel):
    undone_line: list[WireInt]
    flipped: list[int]
    discrepancy: int
    switch_count: int


class HintRequest(BaseModel):
    solver: str = "auto"


class HintResponse(BaseModel):
    suggestion: list[WireInt] | None
    projected_final: int
    bound_kind: str
    switches: list[list[WireInt]] = Field(
        description="the full certificate switch list from the current state"
    )


class OracleResponse(BaseModel):
    value: int | None
    cap_exceeded: bool
    cap: int


class HealthResponse(BaseModel):
    status: str
