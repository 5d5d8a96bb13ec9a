"""Experimental conditions: target concepts paired with student misconceptions.

The function task ships a pinned 24-row table (target predicate/slope/
intercept, the spurious predicate shown to predicate-learners, the spurious
intercept believed by intercept-learners, and whether the row was used with
human participants).  Fractions and verbs have one condition per learner type.
"""

from __future__ import annotations

from dataclasses import dataclass

from teachsim.domains import verbs
from teachsim.domains.functions import (
    INTERCEPTS,
    PREDICATES,
    FunctionConcept,
    predicate,
)
from teachsim.students import types


@dataclass(frozen=True)
class FunctionCondition:
    target_predicate: str
    slope: int
    intercept: int
    spurious_predicate: str
    spurious_intercept: int
    human: bool

    @property
    def condition_id(self) -> str:
        return f"{self.target_predicate}_a{self.slope}_b{self.intercept}"

    def target_concept(self) -> FunctionConcept:
        return FunctionConcept(predicate(self.target_predicate), self.slope, self.intercept)

    def student_types(self) -> tuple[types.StudentType, types.StudentType]:
        """Candidate types, predicate-learner first (the prompt listing order)."""
        return (
            types.predicate_learner(self.spurious_predicate, self.intercept),
            types.intercept_learner(self.target_predicate, self.spurious_intercept),
        )


_ROWS = [
    # (target f, a, b, spurious f, spurious b, human study?)
    ("even", 1, 7, "divisible_6", 5, False),
    ("even", -5, 5, "divisible_6", 7, True),
    ("even", 3, 8, "divisible_4", 3, True),
    ("greater_2", 1, 7, "greater_4", 3, False),
    ("greater_2", -5, 5, "greater_1", 6, False),
    ("greater_2", 3, 8, "greater_3", 5, True),
    ("prime", 1, 7, "odd", 2, True),
    ("prime", -5, 5, "odd", 9, True),
    ("prime", 3, 8, "odd", 6, False),
    ("divisible_3", 1, 7, "divisible_6", 6, False),
    ("divisible_3", -5, 5, "divisible_6", 9, False),
    ("divisible_3", 3, 8, "divisible_6", 5, False),
    ("divisible_4", 1, 7, "divisible_8", 1, False),
    ("divisible_4", -5, 5, "divisible_8", 8, True),
    ("divisible_4", 3, 8, "divisible_8", 9, True),
    ("positive", 1, 7, "greater_2", 4, False),
    ("positive", -5, 5, "greater_2", 2, False),
    ("positive", 3, 8, "greater_1", 4, False),
    ("odd", 1, 7, "divisible_5", 3, True),
    ("odd", -5, 5, "prime", 2, True),
    ("odd", 3, 8, "divisible_3", 6, True),
    ("greater_7", 1, 7, "greater_9", 2, False),
    ("greater_7", -5, 5, "greater_8", 6, True),
    ("greater_7", 3, 8, "greater_5", 6, False),
]

FUNCTION_CONDITIONS = tuple(FunctionCondition(*row) for row in _ROWS)
FUNCTION_CONDITION_BY_ID = {c.condition_id: c for c in FUNCTION_CONDITIONS}

HUMAN_CONDITIONS = tuple(c for c in FUNCTION_CONDITIONS if c.human)

FUNCTION_STUDENT_TYPES = ("predicate-learner", "intercept-learner")

FRACTION_CONDITIONS = ("mult-learner", "add-learner")
VERB_CONDITIONS = tuple(f"{c}-learner" for c in verbs.VERB_CLASSES)


def spurious_predicate_options(name: str) -> list[str]:
    """Which predicates plausibly stand in for the target one.

    Mirrors the condition-generation rules: prime is confused with odd,
    positivity with nearby thresholds, parity with small divisibility, a
    divisibility with its closest multiple/factor, and a threshold with
    thresholds at most 2 away.
    """
    p = predicate(name)
    if p.kind == "prime":
        return ["odd"]
    if p.kind == "positive":
        return [f"greater_{n}" for n in (-2, -1, 1, 2) if f"greater_{n}" in _ALL_NAMES]
    if p.kind == "even":
        return ["divisible_4", "divisible_6"]
    if p.kind == "odd":
        return ["prime", "divisible_3", "divisible_5", "divisible_7"]
    if p.kind == "divisible":
        options = []
        if 2 * p.n <= 20:
            options.append(f"divisible_{2 * p.n}")
        factors = [d for d in range(2, p.n) if p.n % d == 0]
        if factors:
            largest = max(factors)
            options.append("even" if largest == 2 else f"divisible_{largest}")
        return options
    if p.kind == "greater":
        options = []
        for m in range(p.n - 2, p.n + 3):
            if m == p.n:
                continue
            if m == 0:
                options.append("positive")
            elif f"greater_{m}" in _ALL_NAMES:
                options.append(f"greater_{m}")
        return options
    raise ValueError(f"no spurious options for {name!r}")


_ALL_NAMES = {p.name for p in PREDICATES}


def spurious_intercept_options(target_b: int) -> list[int]:
    return [b for b in INTERCEPTS if b != target_b]


def conditions_for_task(task: str) -> tuple[str, ...]:
    if task == "fractions":
        return FRACTION_CONDITIONS
    if task == "functions":
        return tuple(c.condition_id for c in FUNCTION_CONDITIONS)
    if task == "verbs":
        return VERB_CONDITIONS
    raise ValueError(f"unknown task {task!r}")
