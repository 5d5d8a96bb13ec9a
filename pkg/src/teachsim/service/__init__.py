"""Backend for the timed human teaching study."""

from teachsim.service.events import EventStore
from teachsim.service.sessions import (
    DURATION_MS,
    SERVICE_NOISE,
    BonusStatement,
    EmptyGuess,
    HumanSession,
    InvalidGuess,
    NoOutstandingQuestion,
    ReplayDiverged,
    SessionError,
    SessionExpired,
    SessionService,
    UnknownCondition,
    UnknownSession,
    UnparseablePrediction,
    WugGuess,
    compute_bonus,
    parse_prediction,
    partial_correctness,
    render_hint,
    session_auc,
)

__all__ = [
    "BonusStatement",
    "DURATION_MS",
    "EmptyGuess",
    "EventStore",
    "HumanSession",
    "InvalidGuess",
    "NoOutstandingQuestion",
    "ReplayDiverged",
    "SERVICE_NOISE",
    "SessionError",
    "SessionExpired",
    "SessionService",
    "UnknownCondition",
    "UnknownSession",
    "UnparseablePrediction",
    "WugGuess",
    "compute_bonus",
    "parse_prediction",
    "partial_correctness",
    "render_hint",
    "session_auc",
]
