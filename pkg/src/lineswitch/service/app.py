"""HTTP/JSON API for interactive switching-game sessions.

Sessions are in-memory with LRU eviction; per-session mutations are
serialized by a lock while independent sessions run concurrently.
Errors come back as {"code": ..., "message": ...}.
"""

from __future__ import annotations

import threading
import time
import uuid
from collections import OrderedDict

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import instances
from ..board import Configuration, new_board
from ..errors import (
    BadInputError,
    CapExceededError,
    CollinearInputError,
    InternalInvariantError,
    LineSwitchError,
    PreconditionError,
    UnknownLineError,
)
from ..geometry import LineKey, Point
from ..oracle import DEFAULT_CAP, max_discrepancy, switch_code
from ..solvers import SOLVER_NAMES, solve
from .schemas import (
    CreateSessionRequest,
    HealthResponse,
    HintRequest,
    HintResponse,
    LineInfo,
    OracleResponse,
    SessionState,
    SwitchRequest,
    SwitchResponse,
    UndoResponse,
    read_int,
    wire_int,
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class Session:
    """One board plus its undo history (the board's own switch log)."""

    def __init__(self, sid: str, board: Configuration):
        self.id = sid
        self.board = board
        self.lock = threading.Lock()
        self.created_at = time.time()


class SessionStore:
    def __init__(self, max_sessions: int):
        self.max_sessions = max_sessions
        self._sessions: OrderedDict[str, Session] = OrderedDict()
        self._lock = threading.Lock()

    def create(self, board: Configuration) -> Session:
        session = Session(uuid.uuid4().hex[:16], board)
        with self._lock:
            while len(self._sessions) >= self.max_sessions:
                self._sessions.popitem(last=False)
            self._sessions[session.id] = session
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
            if session is None:
                raise ApiError(404, "unknown_session", f"no session {sid!r}")
            self._sessions.move_to_end(sid)
            return session


def _wire_key(key: LineKey) -> list:
    return [wire_int(key.a), wire_int(key.b), wire_int(key.c)]


def _read_key(raw: list) -> LineKey:
    if len(raw) != 3:
        raise ApiError(409, "unknown_line", f"line key must have 3 entries, got {len(raw)}")
    try:
        a, b, c = (read_int(v, "line coefficient") for v in raw)
    except BadInputError as exc:
        raise ApiError(409, "unknown_line", str(exc)) from None
    return LineKey(a, b, c)


def _state(session: Session) -> SessionState:
    board = session.board
    return SessionState(
        id=session.id,
        n=board.n,
        points=[[wire_int(p.x), wire_int(p.y)] for p in board.points],
        weights=list(board.weights),
        lines=[
            LineInfo(key=_wire_key(key), points=list(members))
            for key, members in board.incidence.lines.items()
        ],
        discrepancy=board.discrepancy(),
        switch_count=len(board.switch_log),
        created_at=session.created_at,
    )


def _board_from_request(body: CreateSessionRequest) -> Configuration:
    if body.generator is not None:
        g = body.generator
        spec = instances.GeneratorSpec(
            kind=g.kind, n=g.n, rows=g.rows, cols=g.cols, k=g.k, seed=g.seed, weight_mode=g.weight_mode
        )
        points, weights = instances.generate(spec)
        return new_board(points, weights)
    assert body.instance is not None
    points = []
    for entry in body.instance.points:
        if len(entry) != 2:
            raise BadInputError(f"each point needs exactly [x, y], got {entry!r}")
        points.append(Point(read_int(entry[0], "x coordinate"), read_int(entry[1], "y coordinate")))
    return new_board(points, body.instance.weights)


def create_app(max_sessions: int = 256, oracle_cap: int = DEFAULT_CAP) -> FastAPI:
    app = FastAPI(title="lineswitch playground service", version="0.1.0")
    store = SessionStore(max_sessions)

    @app.exception_handler(ApiError)
    async def _api_error(_: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"code": "bad_request", "message": str(exc.errors())})

    @app.exception_handler(LineSwitchError)
    async def _domain_error(_: Request, exc: LineSwitchError) -> JSONResponse:
        return JSONResponse(status_code=500, content={"code": "internal", "message": str(exc)})

    @app.get("/healthz", response_model=HealthResponse)
    def healthz() -> HealthResponse:
        return HealthResponse(status="ok")

    @app.post("/sessions", response_model=SessionState)
    def create_session(body: CreateSessionRequest) -> SessionState:
        try:
            board = _board_from_request(body)
        except CapExceededError as exc:
            raise ApiError(400, "cap_exceeded", str(exc)) from None
        except BadInputError as exc:
            raise ApiError(400, "bad_instance", str(exc)) from None
        return _state(store.create(board))

    @app.get("/sessions/{sid}", response_model=SessionState)
    def get_session(sid: str) -> SessionState:
        session = store.get(sid)
        with session.lock:
            return _state(session)

    @app.post("/sessions/{sid}/switch", response_model=SwitchResponse)
    def apply_switch(sid: str, body: SwitchRequest) -> SwitchResponse:
        session = store.get(sid)
        key = _read_key(body.line)
        with session.lock:
            try:
                flipped = session.board.line_points(key)
                session.board.switch(key)
            except UnknownLineError as exc:
                raise ApiError(409, "unknown_line", str(exc)) from None
            return SwitchResponse(
                flipped=list(flipped),
                discrepancy=session.board.discrepancy(),
                switch_count=len(session.board.switch_log),
            )

    @app.post("/sessions/{sid}/undo", response_model=UndoResponse)
    def undo(sid: str) -> UndoResponse:
        session = store.get(sid)
        with session.lock:
            try:
                key = session.board.undo()
            except PreconditionError as exc:
                raise ApiError(409, "nothing_to_undo", str(exc)) from None
            return UndoResponse(
                undone_line=_wire_key(key),
                flipped=list(session.board.incidence.lines[key]),
                discrepancy=session.board.discrepancy(),
                switch_count=len(session.board.switch_log),
            )

    @app.post("/sessions/{sid}/hint", response_model=HintResponse)
    def hint(sid: str, body: HintRequest) -> HintResponse:
        session = store.get(sid)
        if body.solver not in SOLVER_NAMES:
            raise ApiError(422, "unknown_solver", f"solver must be one of {SOLVER_NAMES}")
        with session.lock:
            snapshot = session.board.copy()
        try:
            outcome = solve(snapshot, body.solver)
        except CollinearInputError as exc:
            raise ApiError(422, "collinear", str(exc)) from None
        except PreconditionError as exc:
            raise ApiError(422, "precondition", str(exc)) from None
        except InternalInvariantError as exc:
            raise ApiError(503, "solver_failure", str(exc)) from None
        switches = [_wire_key(k) for k in outcome.certificate.switches]
        return HintResponse(
            suggestion=switches[0] if switches else None,
            projected_final=outcome.final_discrepancy,
            bound_kind=outcome.certificate.claimed_bound_kind,
            switches=switches,
        )

    @app.get("/sessions/{sid}/oracle", response_model=OracleResponse)
    def oracle_value(sid: str) -> OracleResponse:
        session = store.get(sid)
        with session.lock:
            board = session.board
            if board.n > oracle_cap:
                return OracleResponse(value=None, cap_exceeded=True, cap=oracle_cap)
            code = switch_code(board.incidence)
            try:
                result = max_discrepancy(code, board.weights, cap=oracle_cap)
            except CapExceededError:
                return OracleResponse(value=None, cap_exceeded=True, cap=oracle_cap)
            return OracleResponse(value=result.value, cap_exceeded=False, cap=oracle_cap)

    return app


app = create_app()
