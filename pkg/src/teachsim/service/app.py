"""HTTP + WebSocket surface over the session service.

Endpoints mirror the study client's needs: create a session (hint +
first question), answer the teacher, submit concept guesses, poll state,
and fetch the end-of-session report.  A WebSocket channel per session
pushes every applied event together with the remaining time so the
client's countdown never drifts from the server clock.
"""

from __future__ import annotations

import asyncio
import threading
from contextlib import asynccontextmanager

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from teachsim.service.events import EventStore
from teachsim.service.sessions import (
    EmptyGuess,
    InvalidGuess,
    NoOutstandingQuestion,
    SessionError,
    SessionExpired,
    SessionService,
    UnknownCondition,
    UnknownSession,
    UnparseablePrediction,
)

_STATUS_CODES = [
    (UnknownSession, 404),
    (UnknownCondition, 422),
    (UnparseablePrediction, 422),
    (EmptyGuess, 422),
    (InvalidGuess, 422),
    (SessionExpired, 409),
    (NoOutstandingQuestion, 409),
    (SessionError, 409),  # catch-all, e.g. report on an active session
]


class CreateSessionBody(BaseModel):
    condition: str | None = None
    student_type: str | None = None
    policy: str = "adaptive"
    seed: int | None = None


class PredictionBody(BaseModel):
    prediction: int | str
    event_id: str | None = None


class GuessBody(BaseModel):
    predicate: str | None = None
    slope: int | None = None
    intercept: int | None = None
    event_id: str | None = None


class _Channels:
    """Per-session WebSocket fan-out, fed from worker threads."""

    def __init__(self):
        self._lock = threading.Lock()
        self._subscribers: dict[str, list[tuple[asyncio.Queue, asyncio.AbstractEventLoop]]] = {}

    def subscribe(self, session_id: str) -> asyncio.Queue:
        queue: asyncio.Queue = asyncio.Queue()
        with self._lock:
            self._subscribers.setdefault(session_id, []).append(
                (queue, asyncio.get_running_loop())
            )
        return queue

    def unsubscribe(self, session_id: str, queue: asyncio.Queue) -> None:
        with self._lock:
            entries = self._subscribers.get(session_id, [])
            self._subscribers[session_id] = [e for e in entries if e[0] is not queue]

    def broadcast(self, session_id: str, payload: dict) -> None:
        with self._lock:
            entries = list(self._subscribers.get(session_id, []))
        for queue, loop in entries:
            loop.call_soon_threadsafe(queue.put_nowait, payload)


def create_app(
    store_dir,
    seed: int = 0,
    clock=None,
    sweep_interval: float | None = 5.0,
) -> FastAPI:
    service = SessionService(EventStore(store_dir), clock=clock, seed=seed)
    channels = _Channels()
    service.listeners.append(channels.broadcast)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        task = None
        if sweep_interval is not None:
            async def sweeper():
                while True:
                    await asyncio.sleep(sweep_interval)
                    await asyncio.to_thread(service.sweep)

            task = asyncio.create_task(sweeper())
        yield
        if task is not None:
            task.cancel()

    app = FastAPI(lifespan=lifespan)
    app.state.service = service

    @app.exception_handler(SessionError)
    async def session_error(request, exc: SessionError):
        for kind, code in _STATUS_CODES:
            if isinstance(exc, kind):
                return JSONResponse(
                    status_code=code,
                    content={"error": type(exc).__name__, "detail": str(exc)},
                )
        raise exc

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        return service.create_session(
            condition=body.condition,
            student_type=body.student_type,
            policy=body.policy,
            seed=body.seed,
        )

    @app.post("/sessions/{session_id}/prediction")
    def submit_prediction(session_id: str, body: PredictionBody):
        return service.submit_prediction(
            session_id, body.prediction, event_id=body.event_id
        )

    @app.post("/sessions/{session_id}/guess")
    def submit_guess(session_id: str, body: GuessBody):
        return service.submit_guess(
            session_id,
            predicate_name=body.predicate,
            slope=body.slope,
            intercept=body.intercept,
            event_id=body.event_id,
        )

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        return service.state(session_id)

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str):
        return service.report(session_id)

    @app.websocket("/sessions/{session_id}/channel")
    async def channel(websocket: WebSocket, session_id: str):
        await websocket.accept()
        try:
            snapshot = await asyncio.to_thread(service.state, session_id)
        except UnknownSession:
            await websocket.close(code=4404)
            return
        queue = channels.subscribe(session_id)
        try:
            await websocket.send_json({"kind": "state", **snapshot})
            while True:
                payload = await queue.get()
                await websocket.send_json(payload)
        except WebSocketDisconnect:
            pass
        finally:
            channels.unsubscribe(session_id, queue)

    return app
