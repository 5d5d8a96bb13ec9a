"""Timed chat sessions for the human function-learning study.

A session pairs one human participant (primed by a "Dr. Smith" hint to
hold a specific misconception) with a teacher policy.  The participant
answers the teacher's questions and may submit fraction-of-the-concept
guesses (predicate, slope, intercept — any subset) at any time while the
clock runs.  Credit: $0.05 per 10 s window scaled by the standing
guess's partial correctness, plus up to $1.00 for prediction accuracy.

State changes are event-sourced: every mutation is an event applied
through one code path, persisted to an append-only log, and replayable
to an identical session after a restart.  Timestamps are server-side
millisecond UTC and strictly increase within a session.
"""

from __future__ import annotations

import logging
import threading
import time
import uuid
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from teachsim.domains.functions import PREDICATES, UNDEFINED, predicate, render_output
from teachsim.harness.conditions import (
    FUNCTION_CONDITION_BY_ID,
    FUNCTION_STUDENT_TYPES,
    FunctionCondition,
    HUMAN_CONDITIONS,
)
from teachsim.harness.config import ExperimentConfig, build_context
from teachsim.harness.episode import episode_rngs
from teachsim.service.events import EventStore
from teachsim.teachers import Observation, PoolExhausted

logger = logging.getLogger(__name__)

PREDICATE_NAMES = frozenset(p.name for p in PREDICATES)

DURATION_MS = 600_000
WINDOW_MS = 10_000
SERVICE_NOISE = 0.02          # teacher-side modeling noise for human sessions
BASE_PAY = Fraction(4)        # recorded on statements, never computed over
HOLD_RATE = Fraction(5, 100)  # dollars per 10 s window at full correctness
PREDICTION_POT = Fraction(1)  # dollars at perfect prediction accuracy


class SessionError(Exception):
    pass


class UnknownSession(SessionError):
    pass


class UnknownCondition(SessionError):
    pass


class SessionExpired(SessionError):
    pass


class UnparseablePrediction(SessionError):
    """Not a step: the client should re-prompt, nothing is logged."""


class NoOutstandingQuestion(SessionError):
    pass


class EmptyGuess(SessionError):
    pass


class InvalidGuess(SessionError):
    pass


class ReplayDiverged(SessionError):
    """A logged derived value disagrees with the recomputed one."""


def parse_prediction(raw) -> object:
    """An integer or the word "undefined"; anything else re-prompts."""
    if isinstance(raw, bool):
        raise UnparseablePrediction(f"cannot read {raw!r} as a wug output")
    if isinstance(raw, int):
        return raw
    text = str(raw).strip().lower()
    if text == "undefined":
        return UNDEFINED
    try:
        return int(text)
    except ValueError:
        raise UnparseablePrediction(
            f"cannot read {raw!r} as a wug output; answer with a number or 'undefined'"
        ) from None


@dataclass(frozen=True)
class WugGuess:
    """One submitted guess; components may be partial but not all absent."""

    predicate: str | None = None
    slope: int | None = None
    intercept: int | None = None
    at: int = 0

    def __post_init__(self):
        if self.predicate is None and self.slope is None and self.intercept is None:
            raise EmptyGuess("a guess needs at least one component")
        if self.predicate is not None and self.predicate not in PREDICATE_NAMES:
            raise InvalidGuess(f"unknown predicate {self.predicate!r}")

    def to_doc(self) -> dict:
        return {
            "predicate": self.predicate,
            "slope": self.slope,
            "intercept": self.intercept,
            "at": self.at,
        }


@dataclass(frozen=True)
class _Standing:
    """Per-component merge of the guess log at some moment; may be empty."""

    predicate: str | None = None
    slope: int | None = None
    intercept: int | None = None


def partial_correctness(guess, condition: FunctionCondition) -> float:
    """1·[predicate] + 0.5·[slope] + 0.5·[intercept]; absent counts wrong."""
    score = 0.0
    if guess is not None:
        score += 1.0 * (guess.predicate == condition.target_predicate)
        score += 0.5 * (guess.slope == condition.slope)
        score += 0.5 * (guess.intercept == condition.intercept)
    return score


_HINT_TEMPLATE = (
    "Dr. Smith spent a bunch of time studying this machine. She figured out "
    "that when wug is defined, it computes a function of the form a*x+b, "
    "where a and b are constant numbers, so you only need to figure out what "
    "a and b are.\n"
    "\n"
    "She also left a note with some thoughts:\n"
    "I'm pretty sure, but not totally confident, that:\n"
    "1) wug is undefined when inputs are {predicate_description}\n"
    "2) When wug is defined, b = {intercept}\n"
    "--Dr. Smith\n"
    "\n"
    "Dr. Smith is quite familiar with wug, so her note should give you a good "
    "place to start! But keep in mind that it is possible that she is wrong."
)


def render_hint(condition: FunctionCondition, student_type: str) -> str:
    """The Dr. Smith note whose wrong claim primes the given student type."""
    claims = {t.name: t for t in condition.student_types()}[student_type]
    return _HINT_TEMPLATE.format(
        predicate_description=predicate(claims.claimed_predicate).describe(),
        intercept=claims.claimed_intercept,
    )


@dataclass
class DialogueTurn:
    role: str  # "teacher" | "participant"
    text: str
    at: int

    def to_doc(self) -> dict:
        return {"role": self.role, "text": self.text, "at": self.at}


def _output_doc(value) -> object:
    return None if value is UNDEFINED else value


def _output_from_doc(doc) -> object:
    return UNDEFINED if doc is None else doc


class HumanSession:
    """Event-sourced state machine for one participant.

    All mutation goes through apply(); the live service persists exactly
    the events it applied, so replay(events) reconstructs this object —
    including the teacher, whose RNG streams re-derive from the seed.
    """

    def __init__(self):
        self.id: str | None = None
        self.condition: FunctionCondition | None = None
        self.student_type: str | None = None
        self.policy: str | None = None
        self.seed: int | None = None
        self.created_at: int = 0
        self.last_at: int = 0
        self.status = "active"
        self.hint: str | None = None
        self.transcript: list[DialogueTurn] = []
        self.guesses: list[WugGuess] = []
        self.predictions: list[dict] = []
        self.pending_input: int | None = None
        self.steps = 0
        self.bonus: BonusStatement | None = None
        self.responses: dict[str, dict] = {}  # event_id -> response, for retries
        self._teacher = None
        self._concept = None
        self._pool_inputs = None

    # -- event application -------------------------------------------------

    def apply(self, event: dict, strict: bool = False) -> dict:
        """Apply one event; returns the derived fields it produced.

        strict=True (replay) checks derived fields already present in the
        event against the recomputation — the log is the source of truth
        and any divergence means state would silently fork.
        """
        kind = event["kind"]
        handler = getattr(self, f"_apply_{kind}", None)
        if handler is None:
            raise SessionError(f"unknown event kind {kind!r}")
        derived = handler(event)
        if strict:
            for key, value in derived.items():
                if key in event and event[key] != value:
                    raise ReplayDiverged(
                        f"{kind} event field {key!r}: log has {event[key]!r}, "
                        f"replay derived {value!r}"
                    )
        self.last_at = event["at"]
        return derived

    def _apply_created(self, event: dict) -> dict:
        self.id = event["session"]
        self.condition = FUNCTION_CONDITION_BY_ID[event["condition"]]
        self.student_type = event["student_type"]
        self.policy = event["policy"]
        self.seed = event["seed"]
        self.created_at = event["at"]
        self.hint = render_hint(self.condition, self.student_type)

        config = ExperimentConfig(
            task="functions",
            condition=event["condition"],
            policy=event["policy"],
            student_type=event["student_type"],
            seed=event["seed"],
            noise=SERVICE_NOISE,
        ).resolved()
        context = build_context(config)
        _, teacher_rng, pool_rng = episode_rngs(event["seed"])
        self._teacher = context.make_teacher(teacher_rng, pool_rng)
        self._concept = self.condition.target_concept()
        self._pool_inputs = context.pool.examples

        first = self._pool_inputs[self._teacher.select()]
        self.pending_input = first
        self.transcript.append(
            DialogueTurn("teacher", f"What is wug({first})?", event["at"])
        )
        return {"hint": self.hint, "question": first}

    def _apply_prediction(self, event: dict) -> dict:
        x = self.pending_input
        predicted = _output_from_doc(event["predicted"])
        label = self._concept(x)
        correct = predicted == label
        self._teacher.observe(
            Observation(x=x, guess=predicted, label=label, step=self.steps + 1)
        )
        try:
            next_input = self._pool_inputs[self._teacher.select()]
        except PoolExhausted:
            next_input = None

        reply = f"That's {'correct' if correct else 'incorrect'}. wug({x})={render_output(label)}."
        if next_input is not None:
            reply += f" What is wug({next_input})?"

        at = event["at"]
        self.transcript.append(
            DialogueTurn("participant", f"wug({x})={render_output(predicted)}", at)
        )
        self.transcript.append(DialogueTurn("teacher", reply, at))
        self.predictions.append(
            {
                "input": x,
                "predicted": _output_doc(predicted),
                "label": _output_doc(label),
                "correct": correct,
                "at": at,
            }
        )
        self.steps += 1
        self.pending_input = next_input
        derived = {
            "input": x,
            "label": _output_doc(label),
            "correct": correct,
            "next_question": next_input,
            "reply": reply,
        }
        self._remember(event, self.client_response("prediction", event, derived))
        return derived

    def _apply_guess(self, event: dict) -> dict:
        guess = WugGuess(
            predicate=event["predicate"],
            slope=event["slope"],
            intercept=event["intercept"],
            at=event["at"],
        )
        self.guesses.append(guess)
        # correctness goes to the log for analysis; the client ack must not
        # carry it (participants could probe the answer one component at a time)
        derived = {"correctness": partial_correctness(guess, self.condition)}
        self._remember(event, self.client_response("guess", event, derived))
        return derived

    def _apply_expired(self, event: dict) -> dict:
        self.status = "expired"
        return {}

    def _apply_completed(self, event: dict) -> dict:
        self.status = "completed"
        self.bonus = compute_bonus(self)
        return {"bonus": self.bonus.to_doc()}

    def _remember(self, event: dict, response: dict) -> None:
        event_id = event.get("event_id")
        if event_id:
            self.responses[event_id] = response

    @staticmethod
    def client_response(kind: str, event: dict, derived: dict) -> dict:
        if kind == "guess":
            return {"accepted": True, "at": event["at"]}
        return derived

    # -- views -------------------------------------------------------------

    def remaining_ms(self, now: int) -> int:
        if self.status != "active":
            return 0
        return max(0, self.created_at + DURATION_MS - now)

    def expired(self, now: int) -> bool:
        return now - self.created_at >= DURATION_MS

    def standing_at(self, at: int) -> _Standing:
        components: dict[str, object] = {}
        for guess in self.guesses:  # append-ordered, timestamps increase
            if guess.at > at:
                break
            for key in ("predicate", "slope", "intercept"):
                value = getattr(guess, key)
                if value is not None:
                    components[key] = value
        return _Standing(**components)

    def snapshot(self) -> dict:
        return {
            "session": self.id,
            "condition": self.condition.condition_id,
            "student_type": self.student_type,
            "policy": self.policy,
            "seed": self.seed,
            "status": self.status,
            "created_at": self.created_at,
            "hint": self.hint,
            "transcript": [turn.to_doc() for turn in self.transcript],
            "guesses": [guess.to_doc() for guess in self.guesses],
            "predictions": list(self.predictions),
            "pending_input": self.pending_input,
            "steps": self.steps,
            "bonus": self.bonus.to_doc() if self.bonus else None,
            "responses": dict(self.responses),
        }

    @classmethod
    def replay(cls, events: list[dict]) -> "HumanSession":
        session = cls()
        for event in events:
            session.apply(event, strict=True)
        return session


def _cents(amount: Fraction) -> float:
    # exact half-cent amounts occur (0.0375-per-window steps); round the
    # Fraction, not a float, so the statement never depends on binary repr
    return round(amount * 100) / 100


@dataclass(frozen=True)
class BonusStatement:
    guess_hold_credit: Fraction
    prediction_credit: Fraction

    @property
    def total(self) -> Fraction:
        return self.guess_hold_credit + self.prediction_credit

    def to_doc(self) -> dict:
        return {
            "guess_hold_credit": _cents(self.guess_hold_credit),
            "prediction_credit": _cents(self.prediction_credit),
            "total": _cents(self.total),
            "base_pay": _cents(BASE_PAY),
        }


def compute_bonus(session: HumanSession) -> BonusStatement:
    """$0.05 per 10 s window, scaled by standing correctness / 2.

    The window is credited by the guess standing at its close, so a guess
    submitted during a window earns for that window (a full-correct guess
    held the whole 600 s earns exactly 60 × $0.05 = $3.00).
    """
    hold = Fraction(0)
    for window in range(1, DURATION_MS // WINDOW_MS + 1):
        standing = session.standing_at(session.created_at + window * WINDOW_MS)
        correctness = Fraction(partial_correctness(standing, session.condition))
        hold += HOLD_RATE * correctness / 2
    if session.predictions:
        accuracy = Fraction(
            sum(p["correct"] for p in session.predictions), len(session.predictions)
        )
    else:
        accuracy = Fraction(0)
    return BonusStatement(
        guess_hold_credit=hold, prediction_credit=PREDICTION_POT * accuracy
    )


def session_auc(sessions) -> float:
    """Mean standing-guess correctness over the union of guess times.

    Times are session-relative (ms since each session's start); the union
    spans all given sessions, so one participant's guess times become
    evaluation points for everyone — this couples sessions by design.
    """
    sessions = list(sessions)
    times = sorted({g.at - s.created_at for s in sessions for g in s.guesses})
    if not times:
        logger.warning("session_auc over %d sessions with no guesses -> 0.0", len(sessions))
        return 0.0
    values = [
        partial_correctness(s.standing_at(s.created_at + t), s.condition)
        for s in sessions
        for t in times
    ]
    return float(np.mean(values))


def _now_ms() -> int:
    return time.time_ns() // 1_000_000


class SessionService:
    """Store-backed registry; one lock per session serializes its events."""

    def __init__(self, store: EventStore, clock=None, seed: int = 0):
        self.store = store
        self.clock = clock or _now_ms
        self.rng = np.random.default_rng(seed)  # condition sampling only
        self.sessions: dict[str, HumanSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self.listeners: list = []  # callables (session_id, payload dict)
        self._load()

    def _load(self) -> None:
        for entry in self.store.sessions():
            session_id = entry["session"]
            events = self.store.read(session_id)
            if not events:
                continue
            self.sessions[session_id] = HumanSession.replay(events)
            self._locks[session_id] = threading.Lock()

    # -- plumbing ----------------------------------------------------------

    def _session(self, session_id: str) -> tuple[HumanSession, threading.Lock]:
        with self._registry_lock:
            session = self.sessions.get(session_id)
            if session is None:
                raise UnknownSession(f"no session {session_id!r}")
            return session, self._locks[session_id]

    def _stamp(self, session: HumanSession) -> int:
        # server-side ms UTC; bumped so per-session timestamps strictly increase
        return max(self.clock(), session.last_at + 1)

    def _commit(self, session: HumanSession, event: dict) -> dict:
        derived = session.apply(event)
        self.store.append(session.id, {**event, **derived})
        # broadcast only what the participant may see: guess correctness
        # stays in the log, the channel carries the bare ack
        visible = HumanSession.client_response(event["kind"], event, derived)
        self._emit(session, {**event, **visible})
        return derived

    def _emit(self, session: HumanSession, payload: dict) -> None:
        doc = {**payload, "remaining_ms": session.remaining_ms(self.clock())}
        for listener in list(self.listeners):
            listener(session.id, doc)

    def _expire_if_due(self, session: HumanSession) -> None:
        if session.status == "active" and session.expired(self.clock()):
            self._commit(session, {"kind": "expired", "at": self._stamp(session)})

    def _replayed(self, session: HumanSession, event_id: str | None) -> dict | None:
        if event_id and event_id in session.responses:
            return session.responses[event_id]
        return None

    # -- operations --------------------------------------------------------

    def create_session(
        self,
        condition: str | None = None,
        student_type: str | None = None,
        policy: str = "adaptive",
        seed: int | None = None,
    ) -> dict:
        if condition is None:
            condition = str(self.rng.choice([c.condition_id for c in HUMAN_CONDITIONS]))
        if condition not in FUNCTION_CONDITION_BY_ID:
            raise UnknownCondition(f"unknown condition {condition!r}")
        if not FUNCTION_CONDITION_BY_ID[condition].human:
            raise UnknownCondition(f"condition {condition!r} is not a human-study row")
        if student_type is None:
            student_type = str(self.rng.choice(FUNCTION_STUDENT_TYPES))
        if student_type not in FUNCTION_STUDENT_TYPES:
            raise UnknownCondition(f"unknown student type {student_type!r}")
        if seed is None:
            seed = int(self.rng.integers(2**31))

        session = HumanSession()
        session_id = uuid.uuid4().hex
        event = {
            "kind": "created",
            "session": session_id,
            "condition": condition,
            "student_type": student_type,
            "policy": policy,
            "seed": seed,
            "at": self.clock(),
        }
        derived = session.apply(event)
        with self._registry_lock:
            self.sessions[session_id] = session
            self._locks[session_id] = threading.Lock()
        self.store.register(
            {
                "session": session_id,
                "condition": condition,
                "student_type": student_type,
                "policy": policy,
                "seed": seed,
                "at": event["at"],
            }
        )
        self.store.append(session_id, {**event, **derived})
        self._emit(session, {**event, **derived})
        return {
            "session": session_id,
            "hint": derived["hint"],
            "question": f"What is wug({derived['question']})?",
            "remaining_ms": session.remaining_ms(self.clock()),
        }

    def submit_prediction(self, session_id: str, raw, event_id: str | None = None) -> dict:
        session, lock = self._session(session_id)
        with lock:
            replayed = self._replayed(session, event_id)
            if replayed is not None:
                return replayed
            self._expire_if_due(session)
            if session.status != "active":
                raise SessionExpired(f"session {session_id} is {session.status}")
            if session.pending_input is None:
                raise NoOutstandingQuestion("the teacher has no examples left to ask")
            predicted = parse_prediction(raw)
            event = {
                "kind": "prediction",
                "event_id": event_id,
                "predicted": _output_doc(predicted),
                "at": self._stamp(session),
            }
            return self._commit(session, event)

    def submit_guess(
        self,
        session_id: str,
        predicate_name: str | None = None,
        slope: int | None = None,
        intercept: int | None = None,
        event_id: str | None = None,
    ) -> dict:
        session, lock = self._session(session_id)
        with lock:
            replayed = self._replayed(session, event_id)
            if replayed is not None:
                return replayed
            self._expire_if_due(session)
            if session.status != "active":
                raise SessionExpired(f"session {session_id} is {session.status}")
            at = self._stamp(session)
            WugGuess(predicate=predicate_name, slope=slope, intercept=intercept, at=at)
            event = {
                "kind": "guess",
                "event_id": event_id,
                "predicate": predicate_name,
                "slope": slope,
                "intercept": intercept,
                "at": at,
            }
            derived = self._commit(session, event)
            return HumanSession.client_response("guess", event, derived)

    def state(self, session_id: str) -> dict:
        session, lock = self._session(session_id)
        with lock:
            self._expire_if_due(session)
            doc = session.snapshot()
            doc.pop("responses")
            doc["remaining_ms"] = session.remaining_ms(self.clock())
            return doc

    def report(self, session_id: str) -> dict:
        """Bonus statement + metrics; issuing it completes an expired session."""
        session, lock = self._session(session_id)
        with lock:
            self._expire_if_due(session)
            if session.status == "active":
                raise SessionError(f"session {session_id} is still active")
            if session.status == "expired":
                self._commit(session, {"kind": "completed", "at": self._stamp(session)})
            final = session.standing_at(session.created_at + DURATION_MS)
            predictions = session.predictions
            accuracy = (
                sum(p["correct"] for p in predictions) / len(predictions)
                if predictions
                else 0.0
            )
            return {
                "session": session_id,
                "status": session.status,
                "bonus": session.bonus.to_doc(),
                "metrics": {
                    "predictions": len(predictions),
                    "prediction_accuracy": accuracy,
                    "guesses": len(session.guesses),
                    "final_correctness": partial_correctness(final, session.condition),
                    "mean_correctness": session_auc([session]) if session.guesses else 0.0,
                },
            }

    def sweep(self) -> int:
        """Expire every overdue session; returns how many flipped."""
        with self._registry_lock:
            items = list(self.sessions.items())
        flipped = 0
        for session_id, session in items:
            _, lock = self._session(session_id)
            with lock:
                if session.status == "active" and session.expired(self.clock()):
                    self._commit(session, {"kind": "expired", "at": self._stamp(session)})
                    flipped += 1
        return flipped
