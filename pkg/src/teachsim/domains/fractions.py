"""Fraction arithmetic with buggy rules.

A concept here is a pair of sub-procedures, one for addition and one for
multiplication.  Besides the correct procedure, each operation has two buggy
variants that transplant moves from the other operation (adding denominators,
multiplying on a common denominator).  Results are never simplified: 4/4 is a
legitimate answer and distinct from 2/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Rule names describe the move a student makes:
#   "lcm"   - rewrite both fractions over the least common denominator first
#   "both"  - apply the operation to numerators and denominators alike
#   "mixed" - numerators only when denominators already agree, else "both"
ADD_RULES = ("lcm", "both", "mixed")
MUL_RULES = ("lcm", "both", "mixed")

TARGET_ADD_RULE = "lcm"
TARGET_MUL_RULE = "both"

OPS = ("add", "mul")
OP_SYMBOLS = {"add": "+", "mul": "*"}


@dataclass(frozen=True)
class Fraction:
    numerator: int
    denominator: int

    def __post_init__(self):
        if self.numerator < 1 or self.denominator < 1:
            raise ValueError(f"fraction components must be positive: {self}")

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class FractionProblem:
    left: Fraction
    right: Fraction
    op: str

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown op {self.op!r}")

    def __str__(self) -> str:
        return f"{self.left}{OP_SYMBOLS[self.op]}{self.right}"


def _on_common_denominator(left: Fraction, right: Fraction) -> tuple[int, int, int]:
    den = math.lcm(left.denominator, right.denominator)
    return den, left.numerator * (den // left.denominator), right.numerator * (den // right.denominator)


def apply_add_rule(rule: str, left: Fraction, right: Fraction) -> Fraction:
    if rule == "lcm":
        den, ln, rn = _on_common_denominator(left, right)
        return Fraction(ln + rn, den)
    if rule == "both":
        return Fraction(left.numerator + right.numerator, left.denominator + right.denominator)
    if rule == "mixed":
        if left.denominator == right.denominator:
            return Fraction(left.numerator + right.numerator, left.denominator)
        return Fraction(left.numerator + right.numerator, left.denominator + right.denominator)
    raise ValueError(f"unknown add rule {rule!r}")


def apply_mul_rule(rule: str, left: Fraction, right: Fraction) -> Fraction:
    if rule == "lcm":
        den, ln, rn = _on_common_denominator(left, right)
        return Fraction(ln * rn, den)
    if rule == "both":
        return Fraction(left.numerator * right.numerator, left.denominator * right.denominator)
    if rule == "mixed":
        if left.denominator == right.denominator:
            return Fraction(left.numerator * right.numerator, left.denominator)
        return Fraction(left.numerator * right.numerator, left.denominator * right.denominator)
    raise ValueError(f"unknown mul rule {rule!r}")


@dataclass(frozen=True)
class FractionProgram:
    add_rule: str
    mul_rule: str

    def __call__(self, problem: FractionProblem) -> Fraction:
        if problem.op == "add":
            return apply_add_rule(self.add_rule, problem.left, problem.right)
        return apply_mul_rule(self.mul_rule, problem.left, problem.right)

    @property
    def name(self) -> str:
        return f"add[{self.add_rule}]|mul[{self.mul_rule}]"


TARGET_PROGRAM = FractionProgram(TARGET_ADD_RULE, TARGET_MUL_RULE)


def enumerate_programs() -> list[FractionProgram]:
    return [FractionProgram(a, m) for a in ADD_RULES for m in MUL_RULES]


def enumerate_problems(max_value: int = 10) -> list[FractionProblem]:
    """All problems with numerators/denominators in 1..max_value, both ops."""
    values = range(1, max_value + 1)
    return [
        FractionProblem(Fraction(ln, ld), Fraction(rn, rd), op)
        for op in OPS
        for ln in values
        for ld in values
        for rn in values
        for rd in values
    ]


def parse_problem(text: str) -> FractionProblem:
    """Parse "a/b+c/d" or "a/b*c/d" back into a problem."""
    for op, symbol in OP_SYMBOLS.items():
        if symbol in text:
            left_text, _, right_text = text.partition(symbol)
            ln, _, ld = left_text.strip().partition("/")
            rn, _, rd = right_text.strip().partition("/")
            return FractionProblem(
                Fraction(int(ln), int(ld)), Fraction(int(rn), int(rd)), op
            )
    raise ValueError(f"not a fraction problem: {text!r}")
