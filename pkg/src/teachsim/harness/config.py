"""Experiment configuration and the per-task wiring it resolves to."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from teachsim.domains import fractions, verbs
from teachsim.harness import conditions as cond
from teachsim.students import (
    FRACTION_NOISE,
    FRACTION_PRIOR_C,
    FUNCTION_NOISE,
    FUNCTION_PRIOR_C,
    SimulatedStudent,
    StudentType,
    add_learner,
    fit_corpus_model,
    fraction_prior,
    fraction_space,
    function_prior,
    function_space,
    mult_learner,
    verb_learner,
    verb_prior,
)
from teachsim.students.verbs import VerbTarget
from teachsim.teachers import (
    AdaptiveTeacher,
    ExamplePool,
    NonAdaptiveTeacher,
    ProgramTeachingScorer,
    RandomTeacher,
    RankingTeacher,
    StudentModelBank,
    VerbTeachingScorer,
)

DEFAULT_HORIZONS = {"fractions": 40, "functions": 40, "verbs": 50}
DEFAULT_SEEDS = (0, 1, 2)
TYPE_QUERY_CHECKPOINTS = (10, 20, 30, 40)


@dataclass(frozen=True)
class ExperimentConfig:
    task: str
    condition: str
    policy: str
    student_type: str | None = None
    seed: int = 0
    horizon: int | None = None
    noise: float | None = None
    prior_c: float | None = None
    fraction_max_value: int = 10
    verb_sample_size: int = 500

    def __post_init__(self):
        if self.task not in DEFAULT_HORIZONS:
            raise ValueError(f"unknown task {self.task!r}")

    def resolved(self) -> "ExperimentConfig":
        updates = {}
        if self.horizon is None:
            updates["horizon"] = DEFAULT_HORIZONS[self.task]
        if self.student_type is None:
            if self.task == "functions":
                raise ValueError("function configs must name the student type")
            # For fractions and verbs, the condition names the true type.
            updates["student_type"] = self.condition
        return replace(self, **updates) if updates else self

    @property
    def episode_id(self) -> str:
        return f"{self.task}.{self.condition}.{self.student_type}.{self.policy}.s{self.seed}"


@dataclass
class TaskContext:
    """Everything an episode needs, resolved from a config."""

    config: ExperimentConfig
    pool: ExamplePool
    scorer: object
    candidate_types: list[StudentType]
    true_type: StudentType
    label_of: object          # pool index -> true label
    example_key: object       # pool index -> json-friendly identifier
    make_prior: object        # StudentType -> fresh belief
    metric: object            # student belief -> float
    sample_size: int | None = None

    def make_student(self, rng: np.random.Generator) -> SimulatedStudent:
        return SimulatedStudent(self.make_prior(self.true_type), rng)

    def make_teacher(self, rng: np.random.Generator, pool_rng: np.random.Generator):
        policy = self.config.policy
        if policy == "random":
            return RandomTeacher(self.pool, rng)
        if policy in ("nonadaptive", "nonadaptive-known", "ranking", "ranking-known"):
            known = policy.endswith("-known")
            if known:
                fixed = self.true_type
            else:
                fixed = self.candidate_types[int(rng.integers(len(self.candidate_types)))]
            belief = self.make_prior(fixed)
            if policy.startswith("ranking"):
                return RankingTeacher(self.pool, self.scorer, fixed, belief,
                                      pool_rng, self.sample_size)
            return NonAdaptiveTeacher(self.pool, self.scorer, fixed, belief,
                                      pool_rng, self.sample_size)
        if policy == "adaptive":
            bank = StudentModelBank(
                self.candidate_types,
                [self.make_prior(t) for t in self.candidate_types],
            )
            return AdaptiveTeacher(self.pool, self.scorer, bank, pool_rng, self.sample_size)
        raise ValueError(f"unknown policy {policy!r}")


_VERB_FIT_CACHE: dict = {}


def _verb_fixtures():
    """Corpus, full fit, and target parameters; cached, they never change."""
    if "fit" not in _VERB_FIT_CACHE:
        corpus = verbs.VerbCorpus.bundled()
        fit = fit_corpus_model(corpus)
        _VERB_FIT_CACHE.update(
            corpus=corpus, fit=fit, target=VerbTarget.from_fit(fit)
        )
    return _VERB_FIT_CACHE["corpus"], _VERB_FIT_CACHE["fit"], _VERB_FIT_CACHE["target"]


def build_context(config: ExperimentConfig) -> TaskContext:
    config = config.resolved()
    if config.task == "fractions":
        return _fraction_context(config)
    if config.task == "functions":
        return _function_context(config)
    return _verb_context(config)


def _type_by_name(candidates: list[StudentType], name: str) -> StudentType:
    for t in candidates:
        if t.name == name:
            return t
    raise ValueError(f"student type {name!r} not among {[t.name for t in candidates]}")


def _fraction_context(config: ExperimentConfig) -> TaskContext:
    space = fraction_space(config.fraction_max_value)
    target_index = space.hypothesis_index(fractions.TARGET_PROGRAM)
    scorer = ProgramTeachingScorer(space, target_index)
    candidates = [mult_learner(), add_learner()]
    noise = FRACTION_NOISE if config.noise is None else config.noise
    c = FRACTION_PRIOR_C if config.prior_c is None else config.prior_c
    return TaskContext(
        config=config,
        pool=ExamplePool(space.inputs),
        scorer=scorer,
        candidate_types=candidates,
        true_type=_type_by_name(candidates, config.student_type),
        label_of=lambda i: space.evaluate(target_index, space.inputs[i]),
        example_key=lambda i: str(space.inputs[i]),
        make_prior=lambda t: fraction_prior(space, t, c=c, noise=noise),
        metric=lambda belief: belief.prob_of(target_index),
    )


def _function_context(config: ExperimentConfig) -> TaskContext:
    condition = cond.FUNCTION_CONDITION_BY_ID[config.condition]
    space = function_space()
    target_index = space.hypothesis_index(condition.target_concept())
    scorer = ProgramTeachingScorer(space, target_index)
    candidates = list(condition.student_types())
    noise = FUNCTION_NOISE if config.noise is None else config.noise
    c = FUNCTION_PRIOR_C if config.prior_c is None else config.prior_c
    return TaskContext(
        config=config,
        pool=ExamplePool(space.inputs),
        scorer=scorer,
        candidate_types=candidates,
        true_type=_type_by_name(candidates, config.student_type),
        label_of=lambda i: space.evaluate(target_index, space.inputs[i]),
        example_key=lambda i: space.inputs[i],
        make_prior=lambda t: function_prior(space, t, c=c, noise=noise),
        metric=lambda belief: belief.prob_of(target_index),
    )


def _verb_context(config: ExperimentConfig) -> TaskContext:
    corpus, fit, target = _verb_fixtures()
    vocabulary = fit.vocabulary
    features = vocabulary.encode_many(corpus.lemmas)
    class_indices = np.array([verbs.VERB_CLASSES.index(c) for c in corpus.classes])
    scorer = VerbTeachingScorer(features, class_indices, target)
    candidates = [verb_learner(c) for c in verbs.VERB_CLASSES]
    return TaskContext(
        config=config,
        pool=ExamplePool(corpus.lemmas),
        scorer=scorer,
        candidate_types=candidates,
        true_type=_type_by_name(candidates, config.student_type),
        label_of=lambda i: corpus.examples[i].verb_class,
        example_key=lambda i: corpus.lemmas[i],
        make_prior=lambda t: verb_prior(fit, t),
        metric=lambda belief: belief.log_pdf_of(target),
        sample_size=config.verb_sample_size,
    )
