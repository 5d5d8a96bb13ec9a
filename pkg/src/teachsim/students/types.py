"""Named student types: which misconception a prior encodes.

A type pins down everything needed to build a student's prior for one task:
for fractions the operation the student gets wrong, for functions the
predicate/intercept pair the student initially credits (one of them spurious),
and for verbs the class the student knows nothing about.
"""

from __future__ import annotations

from dataclasses import dataclass

from teachsim.domains import verbs


@dataclass(frozen=True)
class StudentType:
    name: str
    task: str
    # fractions: the operation the student is confused about ("add" or "mul")
    confused_op: str | None = None
    # functions: the predicate/intercept the student's prior favors
    claimed_predicate: str | None = None
    claimed_intercept: int | None = None
    # verbs: the class with no learned statistics
    unknown_class: str | None = None


def mult_learner() -> StudentType:
    """Correct on addition, over-generalizes addition moves to multiplication."""
    return StudentType(name="mult-learner", task="fractions", confused_op="mul")


def add_learner() -> StudentType:
    """Correct on multiplication, over-generalizes the other way."""
    return StudentType(name="add-learner", task="fractions", confused_op="add")


def predicate_learner(spurious_predicate: str, target_intercept: int) -> StudentType:
    """Wrong about where the function is undefined, right about the intercept."""
    return StudentType(
        name="predicate-learner",
        task="functions",
        claimed_predicate=spurious_predicate,
        claimed_intercept=target_intercept,
    )


def intercept_learner(target_predicate: str, spurious_intercept: int) -> StudentType:
    """Right about where the function is undefined, wrong about the intercept."""
    return StudentType(
        name="intercept-learner",
        task="functions",
        claimed_predicate=target_predicate,
        claimed_intercept=spurious_intercept,
    )


def verb_learner(unknown_class: str) -> StudentType:
    if unknown_class not in verbs.VERB_CLASSES:
        raise ValueError(f"unknown verb class {unknown_class!r}")
    return StudentType(
        name=f"{unknown_class}-learner", task="verbs", unknown_class=unknown_class
    )


def fraction_special_primitives(learner: StudentType) -> frozenset[tuple[str, str]]:
    """The (op, rule) primitives this type's prior favors.

    A student confused about one operation keeps the correct rule for the
    other operation and credits the two transplanted rules for the confused
    one; the correct rule for the confused operation is never special.
    """
    if learner.confused_op == "mul":
        return frozenset({("add", "lcm"), ("mul", "lcm"), ("mul", "mixed")})
    if learner.confused_op == "add":
        return frozenset({("add", "both"), ("add", "mixed"), ("mul", "both")})
    raise ValueError(f"{learner.name} is not a fraction type")
