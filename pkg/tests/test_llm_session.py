"""Teaching-loop behavior, pinned by a recorded conversation.

The replay fixture is the contract: feeding its assistant turns back
through the loop must reproduce the whole conversation byte-for-byte,
because the verdict rewrite is idempotent on already-rewritten text.
"""

import json
import time
from pathlib import Path

import pytest

from teachsim.domains.functions import UNDEFINED
from teachsim.harness.conditions import FUNCTION_CONDITION_BY_ID
from teachsim.llm.prompts import (
    KEEP_LEARNING,
    STOP_PREFIX,
    cannot_learn,
    function_system_prompt,
    type_query,
)
from teachsim.llm.session import build_llm_session
from teachsim.llm.transport import (
    ChatMessage,
    HttpChatTransport,
    RecordingTransport,
    ReplayTransport,
    StubTransport,
    TransportError,
)

FIXTURE = Path(__file__).parent / "data" / "chat_replay_functions.json"


def feeder(replies):
    """Transport that returns scripted replies in order, ignoring history."""
    iterator = iter(replies)
    return StubTransport(lambda messages: next(iterator))


def load_fixture():
    return json.loads(FIXTURE.read_text())


def fixture_session(doc, transport, scripted_student, clock):
    return build_llm_session(
        task=doc["task"],
        condition=doc["condition"],
        student_type=doc["student_type"],
        transport=transport,
        horizon=10,
        student=scripted_student(doc["guesses"]),
        clock=clock,
    )


# --- replay ------------------------------------------------------------------


def test_replay_reproduces_fixture_byte_for_byte(scripted_student, clock):
    doc = load_fixture()
    assistant_texts = [t["text"] for t in doc["turns"] if t["role"] == "assistant"]
    session = fixture_session(doc, feeder(assistant_texts), scripted_student, clock)

    outcome = session.run()

    condition = FUNCTION_CONDITION_BY_ID[doc["condition"]]
    assert outcome.messages[0] == ChatMessage(
        "system", function_system_prompt(condition)
    )
    got = [{"role": m.role, "text": m.content} for m in outcome.messages[1:]]
    assert got == doc["turns"]
    assert outcome.steps == 10
    assert outcome.stopped_early is False
    assert outcome.repeats == 0
    assert outcome.type_answer == doc["type_answer"] == "predicate-learner"
    assert outcome.type_reply == "1"


def test_replay_student_sees_ground_truth(scripted_student, clock):
    doc = load_fixture()
    assistant_texts = [t["text"] for t in doc["turns"] if t["role"] == "assistant"]
    session = fixture_session(doc, feeder(assistant_texts), scripted_student, clock)
    outcome = session.run()

    learned = session.student.learned
    assert [x for x, _ in learned] == [1, 0, 2, 3, -1, -5, -10, 4, -15, -20]
    # labels come from the target concept, never from the model's text
    assert learned[0] == (1, 8)
    assert learned[3] == (3, UNDEFINED)
    assert learned[-1] == (-20, -13)
    # the stop turn is the pinned query for this condition
    stop = outcome.messages[-2]
    assert stop.role == "user"
    assert stop.content == STOP_PREFIX + type_query(
        "functions", FUNCTION_CONDITION_BY_ID[doc["condition"]]
    )


def test_record_then_replay_round_trip(scripted_student, clock, tmp_path):
    doc = load_fixture()
    assistant_texts = [t["text"] for t in doc["turns"] if t["role"] == "assistant"]

    recorder = RecordingTransport(feeder(assistant_texts))
    first = fixture_session(doc, recorder, scripted_student, clock).run()
    path = tmp_path / "recorded.jsonl"
    recorder.save(path)
    assert len(recorder.records) == 14  # 13 teaching replies + the type answer

    # strict replay re-validates every request against the recording
    second = fixture_session(
        doc, ReplayTransport.load(path), scripted_student, clock
    ).run()
    assert second.messages == first.messages
    assert second.steps == first.steps
    assert second.type_answer == first.type_answer


def test_replay_transport_strict_mismatch():
    records = [
        {
            "request": {
                "temperature": 0.0,
                "messages": [{"role": "system", "content": "recorded prompt"}],
            },
            "reply": "hello",
        }
    ]
    transport = ReplayTransport(records)
    with pytest.raises(TransportError, match="replay mismatch at exchange 0"):
        transport.complete([ChatMessage("system", "different prompt")])

    lenient = ReplayTransport(records, strict=False)
    assert lenient.complete([ChatMessage("system", "different prompt")]) == "hello"
    with pytest.raises(TransportError, match="replay exhausted"):
        lenient.complete([ChatMessage("system", "x")])


# --- canned paths ------------------------------------------------------------


def test_canned_replies_and_verdict_rewrites(scripted_student, clock):
    replies = [
        "Hello! Let me think.",          # nothing usable
        "wug(7)",                        # example attempt without an output
        "What is wug(25)?",              # parseable but outside the domain
        "What is wug(1)?",
        "What is wug(2)?",
        "",                              # verdict turn with no continuation
        "2",
    ]
    session = build_llm_session(
        task="functions",
        condition="greater_2_a1_b7",
        student_type="predicate-learner",
        transport=feeder(replies),
        horizon=2,
        student=scripted_student([9, 9]),
        clock=clock,
    )
    outcome = session.run()

    contents = [m.content for m in outcome.messages[1:]]
    assert contents == [
        "Hello! Let me think.",
        KEEP_LEARNING,
        "wug(7)",
        cannot_learn("functions"),
        "What is wug(25)?",
        KEEP_LEARNING,
        "What is wug(1)?",
        "wug(1)=9",
        "That's incorrect. wug(1)=8. What is wug(2)?",
        "wug(2)=9",
        "That's correct. wug(2)=9.",
        STOP_PREFIX + type_query("functions", FUNCTION_CONDITION_BY_ID["greater_2_a1_b7"]),
        "2",
    ]
    assert outcome.steps == 2
    assert outcome.type_answer == "intercept-learner"

    statuses = [(t.role, t.status) for t in outcome.turns]
    assert statuses[0] == ("system", None)
    assert statuses[1] == ("assistant", "no-input")
    assert statuses[2] == ("user", "canned")
    assert statuses[3] == ("assistant", "no-output")
    assert statuses[4] == ("user", "canned")
    # canned turns never count as steps
    steps = [t.step for t in outcome.turns if t.step is not None]
    assert steps == [1, 2]


def test_canned_streak_stops_session_early(clock):
    def reply(messages):
        if messages[-1].content.startswith(STOP_PREFIX):
            return "1"
        return "Hmm, let me think some more."

    session = build_llm_session(
        task="functions",
        condition="greater_2_a1_b7",
        student_type="predicate-learner",
        transport=StubTransport(reply),
        horizon=10,
        clock=clock,
        max_canned=3,
    )
    outcome = session.run()
    assert outcome.stopped_early is True
    assert outcome.steps == 0
    canned = [t for t in outcome.turns if t.status == "canned"]
    assert len(canned) == 4  # streak must exceed the cap before stopping
    # the type query still happens so the episode always yields an answer
    assert outcome.type_answer == "predicate-learner"


def test_repeat_inputs_are_flagged(scripted_student, clock):
    replies = ["What is wug(1)?", "What is wug(1)?", "Thanks!", "1"]
    session = build_llm_session(
        task="functions",
        condition="greater_2_a1_b7",
        student_type="predicate-learner",
        transport=feeder(replies),
        horizon=2,
        student=scripted_student([9, 8]),
        clock=clock,
    )
    outcome = session.run()
    assert outcome.repeats == 1
    repeat_turns = [t for t in outcome.turns if t.repeat]
    assert [t.text for t in repeat_turns] == ["wug(1)=8"]


# --- end-to-end with simulated students --------------------------------------


def test_function_session_with_simulated_student(clock):
    asked = [3, 4, 5, -1]

    def reply(messages):
        if messages[-1].content.startswith(STOP_PREFIX):
            return "1"
        count = sum(1 for m in messages if m.role == "assistant")
        if count >= len(asked):  # final verdict turn needs no new question
            return "Thanks!"
        return f"What is wug({asked[count]})?"

    session = build_llm_session(
        task="functions",
        condition="greater_2_a1_b7",
        student_type="predicate-learner",
        transport=StubTransport(reply),
        seed=0,
        horizon=4,
        clock=clock,
    )
    outcome = session.run()
    assert outcome.steps == 4
    assert outcome.type_answer == "predicate-learner"
    guesses = [
        t
        for t in outcome.turns
        if t.role == "user" and t.status is None and not t.text.startswith(STOP_PREFIX)
    ]
    assert len(guesses) == 4
    assert all(t.text.startswith("wug(") for t in guesses)


def test_fraction_session_with_simulated_student(clock):
    problems = ["1/2+1/3", "2/3*1/4", "1/5+2/5"]

    def reply(messages):
        if messages[-1].content.startswith(STOP_PREFIX):
            return "2"
        count = sum(1 for m in messages if m.role == "assistant")
        if count >= len(problems):
            return "Thanks!"
        return f"What is {problems[count]}?"

    session = build_llm_session(
        task="fractions",
        condition="mult-learner",
        student_type="mult-learner",
        transport=StubTransport(reply),
        seed=1,
        horizon=3,
        clock=clock,
    )
    outcome = session.run()
    assert outcome.steps == 3
    assert outcome.type_answer == "add-learner"
    # verdict turns restate the problem with its ground-truth answer
    verdicts = [t.text for t in outcome.turns if t.step is not None]
    assert verdicts[0].startswith("That's ")
    assert "1/2+1/3=5/6" in verdicts[0]


def test_verb_session_with_simulated_student(clock, corpus):
    lemmas = sorted(corpus.by_lemma)[:3]

    def reply(messages):
        if messages[-1].content.startswith(STOP_PREFIX):
            return "y_to_ied"
        count = sum(1 for m in messages if m.role == "assistant")
        if count >= len(lemmas):
            return "Thanks!"
        return f"What type of verb is '{lemmas[count]}'?"

    session = build_llm_session(
        task="verbs",
        condition="+ied-learner",
        student_type="+ied-learner",
        transport=StubTransport(reply),
        seed=2,
        horizon=3,
        clock=clock,
    )
    outcome = session.run()
    assert outcome.steps == 3
    assert outcome.type_answer == "+ied-learner"
    guesses = [
        t
        for t in outcome.turns
        if t.role == "user" and t.status is None and not t.text.startswith(STOP_PREFIX)
    ]
    assert len(guesses) == 3
    assert all(t.text.endswith("' verb") for t in guesses)


def test_unparseable_type_reply_yields_none(scripted_student, clock):
    replies = ["What is wug(1)?", "Done.", "I cannot decide between them."]
    session = build_llm_session(
        task="functions",
        condition="greater_2_a1_b7",
        student_type="predicate-learner",
        transport=feeder(replies),
        horizon=1,
        student=scripted_student([9]),
        clock=clock,
    )
    outcome = session.run()
    assert outcome.type_answer is None
    assert outcome.type_reply == "I cannot decide between them."


# --- combined mode -----------------------------------------------------------


def test_combined_mode_rewrites_system_prompt(scripted_student, clock):
    # guesses match the predicate-learner's belief (b=7, boundary at 4):
    # the bank's MAP lands there after the first observation and stays
    replies = ["What is wug(3)?", "What is wug(4)?", "Done!", "1"]
    session = build_llm_session(
        task="functions",
        condition="greater_2_a1_b7",
        student_type="predicate-learner",
        transport=feeder(replies),
        horizon=2,
        student=scripted_student([10, 11]),
        clock=clock,
        combined=True,
    )
    outcome = session.run()

    condition = FUNCTION_CONDITION_BY_ID["greater_2_a1_b7"]
    rewrites = [t for t in outcome.turns if t.status == "rewrite"]
    assert len(rewrites) == 1
    assert rewrites[0].text == function_system_prompt(condition, "predicate-learner")
    # the live history carries the rewritten prompt from then on
    assert outcome.messages[0].content == function_system_prompt(
        condition, "predicate-learner"
    )
    assert outcome.steps == 2


def test_known_mode_starts_from_known_prompt(scripted_student, clock):
    replies = ["What is wug(1)?", "Done.", "1"]
    session = build_llm_session(
        task="functions",
        condition="greater_2_a1_b7",
        student_type="intercept-learner",
        transport=feeder(replies),
        horizon=1,
        student=scripted_student([4]),
        clock=clock,
        known=True,
    )
    outcome = session.run()
    condition = FUNCTION_CONDITION_BY_ID["greater_2_a1_b7"]
    assert outcome.messages[0].content == function_system_prompt(
        condition, "intercept-learner"
    )
    assert not any(t.status == "rewrite" for t in outcome.turns)


def test_known_and_combined_are_exclusive():
    with pytest.raises(ValueError):
        build_llm_session(
            task="functions",
            condition="greater_2_a1_b7",
            student_type="predicate-learner",
            transport=feeder([]),
            known=True,
            combined=True,
        )


# --- http transport ----------------------------------------------------------


class FakeResponse:
    def __init__(self, status_code, payload=None, text=""):
        self.status_code = status_code
        self._payload = payload
        self.text = text

    def json(self):
        return self._payload


class FakeClient:
    def __init__(self, outcomes):
        self.outcomes = list(outcomes)
        self.requests = []

    def post(self, url, json=None, headers=None):
        self.requests.append({"url": url, "json": json, "headers": headers})
        outcome = self.outcomes.pop(0)
        if isinstance(outcome, Exception):
            raise outcome
        return outcome


def ok_response(content):
    return FakeResponse(200, {"choices": [{"message": {"content": content}}]})


@pytest.fixture
def no_sleep(monkeypatch):
    monkeypatch.setattr(time, "sleep", lambda seconds: None)


def test_http_transport_posts_payload(no_sleep):
    client = FakeClient([ok_response("hi there")])
    transport = HttpChatTransport(
        "https://example.test/v1/chat", "test-model", api_key="k-123", client=client
    )
    reply = transport.complete(
        [ChatMessage("system", "s"), ChatMessage("user", "u")], temperature=0.5
    )
    assert reply == "hi there"
    request = client.requests[0]
    assert request["url"] == "https://example.test/v1/chat"
    assert request["json"] == {
        "model": "test-model",
        "messages": [
            {"role": "system", "content": "s"},
            {"role": "user", "content": "u"},
        ],
        "temperature": 0.5,
    }
    assert request["headers"] == {"Authorization": "Bearer k-123"}


def test_http_transport_retries_server_errors(no_sleep):
    import httpx

    client = FakeClient(
        [FakeResponse(503), httpx.TransportError("connection reset"), ok_response("ok")]
    )
    transport = HttpChatTransport(
        "https://example.test", "m", api_key="k", client=client, max_retries=2
    )
    assert transport.complete([ChatMessage("user", "x")]) == "ok"
    assert len(client.requests) == 3


def test_http_transport_gives_up_after_retries(no_sleep):
    client = FakeClient([FakeResponse(500)] * 2)
    transport = HttpChatTransport(
        "https://example.test", "m", api_key="k", client=client, max_retries=1
    )
    with pytest.raises(TransportError, match="giving up after 2 attempts"):
        transport.complete([ChatMessage("user", "x")])


def test_http_transport_client_errors_fail_fast(no_sleep):
    client = FakeClient([FakeResponse(403, text="forbidden")])
    transport = HttpChatTransport(
        "https://example.test", "m", api_key="k", client=client
    )
    with pytest.raises(TransportError, match="request rejected \\(403\\)"):
        transport.complete([ChatMessage("user", "x")])
    assert len(client.requests) == 1


def test_http_transport_requires_api_key(monkeypatch):
    monkeypatch.delenv("CHAT_API_KEY", raising=False)
    with pytest.raises(TransportError, match="CHAT_API_KEY"):
        HttpChatTransport("https://example.test", "m", client=FakeClient([]))
    monkeypatch.setenv("CHAT_API_KEY", "from-env")
    HttpChatTransport("https://example.test", "m", client=FakeClient([]))
