"""One teaching episode: the select/guess/label/update loop."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from teachsim.domains import fractions as fraction_domain
from teachsim.domains import functions as function_domain
from teachsim.harness.config import (
    TYPE_QUERY_CHECKPOINTS,
    ExperimentConfig,
    TaskContext,
    build_context,
)
from teachsim.teachers import NotSupported, Observation


@dataclass(frozen=True)
class StepRecord:
    step: int          # 1-based; the curve value at index `step` follows this step
    example: object    # json-friendly identifier of the chosen input
    guess: object
    label: object
    correct: bool
    metric: float


@dataclass
class EpisodeResult:
    config: ExperimentConfig
    curve: list[float]
    steps: list[StepRecord]
    type_queries: dict[int, str | None]

    @property
    def episode_id(self) -> str:
        return self.config.episode_id

    @property
    def guess_accuracy(self) -> float:
        if not self.steps:
            return 0.0
        return sum(s.correct for s in self.steps) / len(self.steps)


def render_value(task: str, value) -> object:
    if task == "functions":
        return function_domain.render_output(value)
    if task == "fractions":
        return str(value)
    return value


def episode_rngs(seed: int) -> tuple[np.random.Generator, ...]:
    student_seq, teacher_seq, pool_seq = np.random.SeedSequence(seed).spawn(3)
    return (
        np.random.default_rng(student_seq),
        np.random.default_rng(teacher_seq),
        np.random.default_rng(pool_seq),
    )


def run_episode(config: ExperimentConfig, context: TaskContext | None = None) -> EpisodeResult:
    config = config.resolved()
    if context is None:
        context = build_context(config)
    student_rng, teacher_rng, pool_rng = episode_rngs(config.seed)
    student = context.make_student(student_rng)
    teacher = context.make_teacher(teacher_rng, pool_rng)

    checkpoints = {c for c in TYPE_QUERY_CHECKPOINTS if c <= config.horizon}
    checkpoints.add(config.horizon)

    curve = [context.metric(student.belief)]
    steps: list[StepRecord] = []
    type_queries: dict[int, str | None] = {}

    for step in range(1, config.horizon + 1):
        index = teacher.select()
        x = context.pool.example(index)
        guess = student.guess(x)
        label = context.label_of(index)
        student.learn(x, label)
        teacher.observe(Observation(x=x, guess=guess, label=label, step=step))
        value = context.metric(student.belief)
        curve.append(value)
        steps.append(
            StepRecord(
                step=step,
                example=context.example_key(index),
                guess=render_value(config.task, guess),
                label=render_value(config.task, label),
                correct=guess == label,
                metric=value,
            )
        )
        if step in checkpoints:
            try:
                type_queries[step] = teacher.query_student_type().name
            except NotSupported:
                type_queries[step] = None

    return EpisodeResult(config=config, curve=curve, steps=steps, type_queries=type_queries)
