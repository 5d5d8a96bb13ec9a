"""Partial linear functions on a bounded integer domain.

A concept is "undefined where the predicate holds, otherwise a*x + b".  The
predicate pool mixes four parameterless number properties with divisibility
and threshold families, 42 predicates total; crossed with the slope and
intercept ranges this gives 4,158 concepts over inputs in [-20, 20].
"""

from __future__ import annotations

from dataclasses import dataclass

INPUTS = tuple(range(-20, 21))
SLOPES = tuple(range(-5, 6))
INTERCEPTS = tuple(range(1, 10))
DIVISIBLE_RANGE = range(3, 21)
GREATER_RANGE = range(1, 21)

# The distinguished "no output" value.
UNDEFINED = None


def is_prime(x: int) -> bool:
    # Standard definition: negatives, 0, and 1 are not prime.
    if x <= 1:
        return False
    d = 2
    while d * d <= x:
        if x % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Predicate:
    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind in ("divisible", "greater"):
            if self.n is None:
                raise ValueError(f"{self.kind} needs a parameter")
        elif self.kind not in ("prime", "positive", "even", "odd"):
            raise ValueError(f"unknown predicate kind {self.kind!r}")

    def __call__(self, x: int) -> bool:
        if self.kind == "prime":
            return is_prime(x)
        if self.kind == "positive":
            return x > 0
        if self.kind == "even":
            return x % 2 == 0
        if self.kind == "odd":
            return x % 2 != 0
        if self.kind == "divisible":
            return x % self.n == 0
        return x > self.n

    @property
    def name(self) -> str:
        if self.n is None:
            return self.kind
        return f"{self.kind}_{self.n}"

    def describe(self) -> str:
        """Render the predicate the way prompts and hints phrase it."""
        if self.kind == "divisible":
            return f"divisible by {self.n}"
        if self.kind == "greater":
            return f"greater than {self.n}"
        return self.kind


def enumerate_predicates() -> list[Predicate]:
    return (
        [Predicate("prime"), Predicate("positive"), Predicate("even"), Predicate("odd")]
        + [Predicate("divisible", n) for n in DIVISIBLE_RANGE]
        + [Predicate("greater", n) for n in GREATER_RANGE]
    )


PREDICATES = tuple(enumerate_predicates())
PREDICATE_BY_NAME = {p.name: p for p in PREDICATES}


def predicate(name: str) -> Predicate:
    try:
        return PREDICATE_BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown predicate {name!r}") from None


@dataclass(frozen=True)
class FunctionConcept:
    predicate: Predicate
    slope: int
    intercept: int

    def __call__(self, x: int):
        if x not in _INPUT_SET:
            raise ValueError(f"input {x} outside [-20, 20]")
        if self.predicate(x):
            return UNDEFINED
        return self.slope * x + self.intercept

    @property
    def name(self) -> str:
        return f"{self.predicate.name}|a={self.slope}|b={self.intercept}"

    def formula(self) -> str:
        """The defined-region formula as prompts write it, e.g. "x+7"."""
        if self.slope == 1:
            ax = "x"
        elif self.slope == -1:
            ax = "-x"
        else:
            ax = f"{self.slope}*x"
        return f"{ax}+{self.intercept}"


_INPUT_SET = frozenset(INPUTS)


def enumerate_concepts() -> list[FunctionConcept]:
    return [
        FunctionConcept(p, a, b)
        for p in PREDICATES
        for a in SLOPES
        for b in INTERCEPTS
    ]


def render_output(value) -> str:
    return "undefined" if value is UNDEFINED else str(value)
