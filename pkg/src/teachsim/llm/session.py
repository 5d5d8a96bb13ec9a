"""The chat-model teaching loop.

The model drives example selection; this loop keeps it honest.  Every
label the student sees is computed from the target concept, not taken
from the model's text: when the model's turn owes the student a verdict,
the turn is rewritten as "That's [correct/incorrect]. <example>." with
the model's own continuation kept verbatim after it.  Turns with nothing
usable get a canned reply and do not count as teaching steps.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from teachsim.domains.functions import render_output
from teachsim.harness.config import ExperimentConfig, TaskContext, build_context
from teachsim.harness.conditions import FUNCTION_CONDITION_BY_ID
from teachsim.llm.parsing import (
    NO_OUTPUT,
    OK,
    ParsedTurn,
    UnparseableAnswer,
    parse_mentions,
    parse_type_answer,
)
from teachsim.llm.prompts import (
    KEEP_LEARNING,
    STOP_PREFIX,
    cannot_learn,
    chat_class,
    fraction_system_prompt,
    function_system_prompt,
    type_query,
    verb_system_prompt,
)
from teachsim.llm.transport import ChatMessage, ChatTransport
from teachsim.students import SimulatedStudent
from teachsim.teachers import StudentModelBank

# Leading punctuation left over after stripping the model's own echo of
# the previous example.
_SUFFIX_LEAD = re.compile(r"^[\s.!]+")


@dataclass
class TranscriptTurn:
    role: str
    text: str
    status: str | None = None  # parse status, "canned", or "rewrite"
    step: int | None = None    # set on the turn that delivers this label
    repeat: bool = False       # input was taught before (allowed, flagged)
    at: float = 0.0

    def to_doc(self) -> dict:
        return {
            "role": self.role,
            "text": self.text,
            "status": self.status,
            "step": self.step,
            "repeat": self.repeat,
            "at": self.at,
        }


@dataclass
class SessionOutcome:
    turns: list[TranscriptTurn]
    messages: list[ChatMessage]
    steps: int
    type_answer: str | None      # student-type name, if the reply parsed
    type_reply: str | None
    stopped_early: bool
    repeats: int = 0

    def save_transcript(self, path: str | Path) -> None:
        with open(path, "w") as handle:
            for turn in self.turns:
                handle.write(json.dumps(turn.to_doc()) + "\n")


@dataclass
class _Pending:
    input: object
    guess: object


class LlmTeacherSession:
    """One teaching conversation between the chat model and a simulated student."""

    def __init__(
        self,
        task: str,
        transport: ChatTransport,
        student: SimulatedStudent,
        system_prompt: str,
        type_query_text: str,
        label_fn: Callable[[object], object],
        valid_fn: Callable[[object], bool],
        example_text: Callable[[object, object], str],
        guess_text: Callable[[object, object], str],
        resolve_answer: Callable[[object], str],
        horizon: int,
        temperature: float = 0.0,
        bank: StudentModelBank | None = None,
        known_prompt_fn: Callable[[object], str] | None = None,
        clock: Callable[[], float] | None = None,
        max_canned: int = 5,
    ):
        self.task = task
        self.transport = transport
        self.student = student
        self.system_prompt = system_prompt
        self.type_query_text = type_query_text
        self.label_fn = label_fn
        self.valid_fn = valid_fn
        self.example_text = example_text
        self.guess_text = guess_text
        self.resolve_answer = resolve_answer
        self.horizon = horizon
        self.temperature = temperature
        self.bank = bank
        self.known_prompt_fn = known_prompt_fn
        self.clock = clock or time.time
        self.max_canned = max_canned

    def run(self) -> SessionOutcome:
        history = [ChatMessage("system", self.system_prompt)]
        turns = [TranscriptTurn(role="system", text=self.system_prompt, at=self.clock())]
        steps = 0
        repeats = 0
        pending: _Pending | None = None
        seen_inputs: set = set()
        canned_streak = 0
        stopped_early = False

        while steps < self.horizon:
            raw = self.transport.complete(history, self.temperature)
            mentions = parse_mentions(raw, self.task)

            if pending is not None:
                truth = self.label_fn(pending.input)
                self.student.learn(pending.input, truth)
                verdict = "correct" if pending.guess == truth else "incorrect"
                prefix = f"That's {verdict}. {self.example_text(pending.input, truth)}."
                echo = (
                    mentions[0]
                    if mentions
                    and not mentions[0].question
                    and mentions[0].input == pending.input
                    else None
                )
                if echo is not None:
                    suffix = _SUFFIX_LEAD.sub("", raw[echo.span[1]:])
                    rest = mentions[1:]
                else:
                    suffix = raw.strip()
                    rest = mentions
                text = prefix + (f" {suffix}" if suffix else "")
                steps += 1
                step_index = steps
                pending = None
                # re-parse the constructed turn so spans match what the
                # student reads; drop the mention inside our own prefix
                rest = [m for m in parse_mentions(text, self.task) if m.span[0] >= len(prefix)]
            else:
                text = raw
                rest = mentions
                step_index = None

            history.append(ChatMessage("assistant", text))
            all_mentions = parse_mentions(text, self.task)
            status = all_mentions[0].status if all_mentions else "no-input"
            turns.append(
                TranscriptTurn(
                    role="assistant",
                    text=text,
                    status=status,
                    step=step_index,
                    at=self.clock(),
                )
            )
            if steps >= self.horizon:
                break

            next_turn = self._choose_next(rest)
            if next_turn is None or not self.valid_fn(next_turn.input):
                if next_turn is not None:
                    # parseable input the student cannot use (out of range,
                    # not in its vocabulary): ignored, ask for another
                    canned = KEEP_LEARNING
                elif any(m.status == NO_OUTPUT and not m.question for m in rest):
                    canned = cannot_learn(self.task)  # mangled example attempt
                else:
                    canned = KEEP_LEARNING
                history.append(ChatMessage("user", canned))
                turns.append(
                    TranscriptTurn(role="user", text=canned, status="canned", at=self.clock())
                )
                canned_streak += 1
                if canned_streak > self.max_canned:
                    stopped_early = True
                    break
                continue
            canned_streak = 0

            x = next_turn.input
            guess = self.student.guess(x)
            repeat = x in seen_inputs
            repeats += int(repeat)
            seen_inputs.add(x)
            pending = _Pending(input=x, guess=guess)

            if self.bank is not None:
                self.bank.observe(x=x, guess=guess, label=self.label_fn(x))
                if self.known_prompt_fn is not None:
                    rewritten = self.known_prompt_fn(self.bank.map_type)
                    if rewritten != history[0].content:
                        history[0] = ChatMessage("system", rewritten)
                        turns.append(
                            TranscriptTurn(
                                role="system",
                                text=rewritten,
                                status="rewrite",
                                at=self.clock(),
                            )
                        )

            user_text = self.guess_text(x, guess)
            history.append(ChatMessage("user", user_text))
            turns.append(
                TranscriptTurn(
                    role="user", text=user_text, repeat=repeat, at=self.clock()
                )
            )

        query_text = STOP_PREFIX + self.type_query_text
        history.append(ChatMessage("user", query_text))
        turns.append(TranscriptTurn(role="user", text=query_text, at=self.clock()))
        type_reply = self.transport.complete(history, self.temperature)
        history.append(ChatMessage("assistant", type_reply))
        turns.append(TranscriptTurn(role="assistant", text=type_reply, at=self.clock()))
        try:
            type_answer = self.resolve_answer(parse_type_answer(type_reply, self.task))
        except UnparseableAnswer:
            type_answer = None

        return SessionOutcome(
            turns=turns,
            messages=history,
            steps=steps,
            type_answer=type_answer,
            type_reply=type_reply,
            stopped_early=stopped_early,
            repeats=repeats,
        )

    @staticmethod
    def _choose_next(mentions: list[ParsedTurn]) -> ParsedTurn | None:
        for mention in mentions:
            if mention.question:
                return mention
        for mention in mentions:
            # model stated a labeled example without asking; teach its input
            # anyway (the label it wrote is ignored, ground truth replaces it)
            if mention.status == OK:
                return mention
        return None


def build_llm_session(
    task: str,
    condition: str,
    student_type: str,
    transport: ChatTransport,
    seed: int = 0,
    horizon: int | None = None,
    known: bool = False,
    combined: bool = False,
    temperature: float = 0.0,
    clock: Callable[[], float] | None = None,
    max_canned: int = 5,
    student=None,
) -> LlmTeacherSession:
    """Wire a session for one experimental condition.

    ``known`` gives the model the true student type up front; ``combined``
    starts from the unknown prompt and rewrites it to the known variant
    for the online MAP type after each student prediction.  ``student``
    replaces the simulated student (e.g. a scripted one for replays).
    """
    if known and combined:
        raise ValueError("choose known or combined, not both")
    config = ExperimentConfig(
        task=task,
        condition=condition,
        policy="random",  # placeholder; the model selects examples, not a policy
        student_type=student_type,
        seed=seed,
        horizon=horizon,
    ).resolved()
    context = build_context(config)
    if student is None:
        student_seq = np.random.SeedSequence(seed).spawn(1)[0]
        student = context.make_student(np.random.default_rng(student_seq))

    label_fn, valid_fn, example_text, guess_text = _task_adapters(task, condition, context)
    resolve = _answer_resolver(task, context)

    if task == "functions":
        cond_obj = FUNCTION_CONDITION_BY_ID[condition]
        system = function_system_prompt(cond_obj, student_type if known else None)
        query = type_query(task, cond_obj)
        known_prompt_fn = lambda t: function_system_prompt(cond_obj, t.name)
    elif task == "fractions":
        system = fraction_system_prompt(student_type if known else None)
        query = type_query(task)
        known_prompt_fn = lambda t: fraction_system_prompt(t.name)
    elif task == "verbs":
        unknown_class = student_type.removesuffix("-learner")
        system = verb_system_prompt(unknown_class if known else None)
        query = type_query(task)
        known_prompt_fn = lambda t: verb_system_prompt(t.unknown_class)
    else:
        raise ValueError(f"unknown task: {task!r}")

    bank = None
    if combined:
        bank = StudentModelBank(
            context.candidate_types,
            [context.make_prior(t) for t in context.candidate_types],
        )
    return LlmTeacherSession(
        task=task,
        transport=transport,
        student=student,
        system_prompt=system,
        type_query_text=query,
        label_fn=label_fn,
        valid_fn=valid_fn,
        example_text=example_text,
        guess_text=guess_text,
        resolve_answer=resolve,
        horizon=config.horizon,
        temperature=temperature,
        bank=bank,
        known_prompt_fn=known_prompt_fn if combined else None,
        clock=clock,
        max_canned=max_canned,
    )


def _task_adapters(task: str, condition: str, context: TaskContext):
    if task == "functions":
        concept = FUNCTION_CONDITION_BY_ID[condition].target_concept()
        label_fn = concept
        valid_fn = lambda x: isinstance(x, int) and -20 <= x <= 20
        example_text = lambda x, y: f"wug({x})={render_output(y)}"
        guess_text = lambda x, y: f"wug({x})={render_output(y)}"
    elif task == "fractions":
        from teachsim.domains.fractions import TARGET_PROGRAM
        from teachsim.students.program import fraction_space

        space = fraction_space()
        label_fn = TARGET_PROGRAM
        valid_fn = lambda p: p in space.input_index
        example_text = lambda p, y: f"{p}={y}"
        guess_text = lambda p, y: f"{p}={y}"
    elif task == "verbs":
        from teachsim.domains.verbs import VerbCorpus

        corpus = VerbCorpus.bundled()
        label_fn = lambda lemma: corpus.by_lemma[lemma].verb_class
        valid_fn = lambda lemma: lemma in corpus.by_lemma
        example_text = lambda lemma, c: f"'{lemma}' is a '{chat_class(c)}' verb"
        guess_text = lambda lemma, c: f"'{lemma}' is a '{chat_class(c)}' verb"
    else:
        raise ValueError(f"unknown task: {task!r}")
    return label_fn, valid_fn, example_text, guess_text


def _answer_resolver(task: str, context: TaskContext):
    candidates = context.candidate_types

    def resolve(answer) -> str:
        if task == "verbs":
            # answer is a domain verb class
            name = f"{answer}-learner"
            for candidate in candidates:
                if candidate.name == name:
                    return candidate.name
            raise UnparseableAnswer(f"no candidate for class {answer!r}")
        return candidates[int(answer) - 1].name

    return resolve
