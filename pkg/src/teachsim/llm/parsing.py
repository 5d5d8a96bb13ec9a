"""Extract teaching examples and type answers from chat-model text.

Matching is strict-format first with one lenient fallback that strips
markdown decoration; anything still unmatched falls through to the canned
responses, never an exception.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from teachsim.domains.fractions import Fraction, FractionProblem
from teachsim.domains.functions import INPUTS, UNDEFINED
from teachsim.llm.prompts import CHAT_CLASS_NAMES, domain_class

OK = "ok"
NO_OUTPUT = "no-output"
NO_INPUT = "no-input"


class UnparseableAnswer(ValueError):
    pass


@dataclass(frozen=True)
class ParsedTurn:
    input: object | None
    output: object | None
    status: str  # ok | no-output | no-input
    span: tuple[int, int] = (0, 0)  # char range of the match in the message
    question: bool = False  # matched the "What is ...?" request form

    def __post_init__(self):
        # ok means both halves appeared in the text; output None is still legal
        # because "undefined" is a real function output whose value is None.
        if self.status == OK and self.input is None:
            raise ValueError("ok turns carry an input")


_MARKDOWN = re.compile(r"[*_`]")

_FUNCTION_EXAMPLE = re.compile(r"wug\(\s*(-?\d+)\s*\)\s*(?:=\s*(-?\d+|undefined))?", re.I)
_FUNCTION_QUESTION = re.compile(r"what\s+is\s+wug\(\s*(-?\d+)\s*\)\s*\?", re.I)

_FRACTION_EXAMPLE = re.compile(
    r"(\d+)\s*/\s*(\d+)\s*([+*])\s*(\d+)\s*/\s*(\d+)\s*(?:=\s*(\d+)\s*/\s*(\d+))?"
)
_FRACTION_QUESTION = re.compile(
    r"what\s+is\s+(\d+)\s*/\s*(\d+)\s*([+*])\s*(\d+)\s*/\s*(\d+)\s*\?", re.I
)

_QUOTE = r"['‘’]"
_VERB_CLASS_PATTERN = "|".join(
    re.escape(name) for name in sorted(CHAT_CLASS_NAMES.values(), key=len, reverse=True)
)
_VERB_EXAMPLE = re.compile(
    rf"{_QUOTE}([A-Za-z]+){_QUOTE}\s+is\s+an?\s+{_QUOTE}({_VERB_CLASS_PATTERN}){_QUOTE}\s+verb",
    re.I,
)
_VERB_QUESTION = re.compile(
    rf"what\s+type\s+of\s+verb\s+is\s+{_QUOTE}([A-Za-z]+){_QUOTE}\s*\?", re.I
)


def _op_from_symbol(symbol: str) -> str:
    return "add" if symbol == "+" else "mul"


def _function_mentions(text: str) -> list[ParsedTurn]:
    questions = {m.start(): m for m in _FUNCTION_QUESTION.finditer(text)}
    mentions = []
    claimed = set()  # spans inside question matches
    for q in questions.values():
        claimed.add((q.start(), q.end()))
        mentions.append(
            ParsedTurn(
                input=int(q.group(1)),
                output=None,
                status=NO_OUTPUT,
                span=(q.start(), q.end()),
                question=True,
            )
        )
    for m in _FUNCTION_EXAMPLE.finditer(text):
        if any(start <= m.start() < end for start, end in claimed):
            continue
        x = int(m.group(1))
        if m.group(2) is None:
            mentions.append(
                ParsedTurn(input=x, output=None, status=NO_OUTPUT, span=m.span())
            )
        else:
            raw = m.group(2).lower()
            output = UNDEFINED if raw == "undefined" else int(raw)
            mentions.append(ParsedTurn(input=x, output=output, status=OK, span=m.span()))
    mentions.sort(key=lambda turn: turn.span)
    return mentions


def _fraction_problem(match: re.Match) -> FractionProblem | None:
    # zero components fail Fraction's validator; such a match is not a
    # nameable problem, so the caller drops it rather than crashing
    try:
        return FractionProblem(
            left=Fraction(int(match.group(1)), int(match.group(2))),
            right=Fraction(int(match.group(4)), int(match.group(5))),
            op=_op_from_symbol(match.group(3)),
        )
    except ValueError:
        return None


def _fraction_mentions(text: str) -> list[ParsedTurn]:
    questions = {m.start(): m for m in _FRACTION_QUESTION.finditer(text)}
    mentions = []
    claimed = set()
    for q in questions.values():
        claimed.add((q.start(), q.end()))
        problem = _fraction_problem(q)
        if problem is None:
            continue
        mentions.append(
            ParsedTurn(
                input=problem, output=None, status=NO_OUTPUT, span=(q.start(), q.end()),
                question=True,
            )
        )
    for m in _FRACTION_EXAMPLE.finditer(text):
        if any(start <= m.start() < end for start, end in claimed):
            continue
        problem = _fraction_problem(m)
        if problem is None:
            continue
        if m.group(6) is None:
            mentions.append(
                ParsedTurn(input=problem, output=None, status=NO_OUTPUT, span=m.span())
            )
        else:
            try:
                answer = Fraction(int(m.group(6)), int(m.group(7)))
            except ValueError:
                # valid problem, junk answer: treat as an unlabeled attempt
                answer = None
            mentions.append(
                ParsedTurn(
                    input=problem,
                    output=answer,
                    status=OK if answer is not None else NO_OUTPUT,
                    span=m.span(),
                )
            )
    mentions.sort(key=lambda turn: turn.span)
    return mentions


_DOMAIN_CLASS_CI = {chat.lower(): domain_class(chat) for chat in CHAT_CLASS_NAMES.values()}


def _verb_mentions(text: str) -> list[ParsedTurn]:
    mentions = []
    for q in _VERB_QUESTION.finditer(text):
        mentions.append(
            ParsedTurn(
                input=q.group(1).lower(),
                output=None,
                status=NO_OUTPUT,
                span=(q.start(), q.end()),
                question=True,
            )
        )
    for m in _VERB_EXAMPLE.finditer(text):
        mentions.append(
            ParsedTurn(
                input=m.group(1).lower(),
                output=_DOMAIN_CLASS_CI[m.group(2).lower()],
                status=OK,
                span=m.span(),
            )
        )
    mentions.sort(key=lambda turn: turn.span)
    return mentions


_MENTION_FNS = {
    "functions": _function_mentions,
    "fractions": _fraction_mentions,
    "verbs": _verb_mentions,
}


def parse_mentions(text: str, task: str) -> list[ParsedTurn]:
    """Every example mention in the message, in order of appearance."""
    fn = _MENTION_FNS[task]
    mentions = fn(text)
    if not mentions:
        mentions = fn(_MARKDOWN.sub("", text))  # lenient pass
    return mentions


def parse_turn(text: str, task: str) -> ParsedTurn:
    """First mention wins; a message with none parses as no-input."""
    mentions = parse_mentions(text, task)
    if mentions:
        return mentions[0]
    return ParsedTurn(input=None, output=None, status=NO_INPUT)


_CANDIDATE_DIGIT = re.compile(r"(?<!\d)\(?([12])\)?(?!\d)")


def parse_type_answer(text: str, task: str):
    """Candidate index (1-based) for fractions/functions; domain class for verbs."""
    if task == "verbs":
        # Lenient pass strips markdown from both sides: "_" is markdown *and*
        # part of "y_to_ied", so the raw text must be checked first.
        names = sorted(CHAT_CLASS_NAMES.values(), key=len, reverse=True)
        for lenient, source in ((False, text), (True, _MARKDOWN.sub("", text))):
            for chat_name in names:
                needle = _MARKDOWN.sub("", chat_name) if lenient else chat_name
                if re.search(re.escape(needle), source, re.I):
                    return domain_class(chat_name)
        raise UnparseableAnswer(f"no verb class in reply: {text!r}")
    match = _CANDIDATE_DIGIT.search(text)
    if match is None:
        raise UnparseableAnswer(f"no candidate number in reply: {text!r}")
    return int(match.group(1))
