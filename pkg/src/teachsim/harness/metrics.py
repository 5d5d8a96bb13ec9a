"""Learning-curve and transcript analyses."""

from __future__ import annotations

import numpy as np

from teachsim.domains.functions import INPUTS, Predicate, predicate
from teachsim.harness.conditions import FunctionCondition
from teachsim.harness.episode import EpisodeResult


def auc(curve) -> float:
    """Trapezoidal area under a per-step curve, normalized by the horizon."""
    values = np.asarray(curve, dtype=float)
    if values.size == 0:
        raise ValueError("empty curve")
    if values.size == 1:
        return float(values[0])
    return float(np.trapezoid(values, dx=1.0) / (values.size - 1))


def critical_examples(target: Predicate | str, spurious: Predicate | str) -> list[int]:
    """Inputs where the two predicates disagree (sorted)."""
    if isinstance(target, str):
        target = predicate(target)
    if isinstance(spurious, str):
        spurious = predicate(spurious)
    return [x for x in INPUTS if target(x) != spurious(x)]


def critical_timing(inputs, critical) -> list[int]:
    critical_set = set(critical)
    return [1 if x in critical_set else 0 for x in inputs]


def steps_until_all_critical(inputs, critical) -> int | None:
    """1-based step at which the last critical example appears, None if never."""
    remaining = set(critical)
    for step, x in enumerate(inputs, start=1):
        remaining.discard(x)
        if not remaining:
            return step
    return None


def classify_example_target(task: str, x, condition, corpus=None) -> str:
    """Which misconception an example speaks to, if any.

    Fractions: equal-denominator multiplication exposes the buggy
    multiplication rules; different-denominator addition exposes the buggy
    addition rules.  Functions: undefined-region inputs teach the predicate,
    defined-region inputs teach the line.  Verbs: lemmas of the student's
    unknown class target the misconception (x is a lemma; pass the corpus).
    """
    if task == "fractions":
        equal = x.left.denominator == x.right.denominator
        if x.op == "mul" and equal:
            return "mult-learner"
        if x.op == "add" and not equal:
            return "add-learner"
        return "neither"
    if task == "functions":
        target = condition.target_concept() if isinstance(condition, FunctionCondition) else condition
        return "predicate" if target.predicate(x) else "line"
    if task == "verbs":
        unknown = condition if isinstance(condition, str) else condition.unknown_class
        unknown = unknown.removesuffix("-learner")
        if corpus is None:
            raise ValueError("verb examples need the corpus to resolve their class")
        verb_class = corpus.by_lemma[x].verb_class
        return "targets-misconception" if verb_class == unknown else "known-class"
    raise ValueError(f"unknown task {task!r}")


def type_accuracy_over_time(results: list[EpisodeResult], checkpoints) -> dict[int, float]:
    """Fraction of episodes whose queried type matches the true type, per checkpoint."""
    accuracy = {}
    for checkpoint in checkpoints:
        outcomes = []
        for result in results:
            queried = result.type_queries.get(checkpoint)
            outcomes.append(queried == result.config.student_type)
        accuracy[checkpoint] = float(np.mean(outcomes)) if outcomes else float("nan")
    return accuracy


def magnitude_profile(result: EpisodeResult, condition: FunctionCondition) -> list[int]:
    """|x| of defined-region picks in selection order (function task only)."""
    target = condition.target_concept()
    profile = []
    for record in result.steps:
        x = int(record.example)
        if not target.predicate(x):
            profile.append(abs(x))
    return profile
