"""Example-selection policies.

All policies share one protocol: select() returns the next pool index (and
marks it used), observe() feeds back one completed interaction, and
query_student_type() reports the policy's current belief about who it is
teaching.  Labels shown to students always come from the target concept;
guesses influence the adaptive policy's scores but never any belief.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from teachsim.students.types import StudentType
from teachsim.teachers.bank import StudentModelBank
from teachsim.teachers.pool import ExamplePool, PoolExhausted

__all__ = [
    "Observation",
    "Teacher",
    "RandomTeacher",
    "RankingTeacher",
    "NonAdaptiveTeacher",
    "AdaptiveTeacher",
    "NotSupported",
    "PoolExhausted",
    "POLICIES",
]

POLICIES = (
    "random",
    "ranking",
    "ranking-known",
    "nonadaptive",
    "nonadaptive-known",
    "adaptive",
)


class NotSupported(RuntimeError):
    """The policy has no student model to answer with."""


@dataclass(frozen=True)
class Observation:
    x: object
    guess: object
    label: object
    step: int


class Teacher:
    policy = "abstract"

    def select(self) -> int:
        raise NotImplementedError

    def observe(self, obs: Observation) -> None:
        pass

    def query_student_type(self) -> StudentType:
        raise NotSupported(f"{self.policy} does not model the student")


class RandomTeacher(Teacher):
    policy = "random"

    def __init__(self, pool: ExamplePool, rng: np.random.Generator):
        self.pool = pool
        self.rng = rng

    def select(self) -> int:
        unused = self.pool.unused_indices()
        index = int(self.rng.choice(unused))
        self.pool.mark_used(index)
        return index


class _ScoredTeacher(Teacher):
    """Shared machinery for policies that rank candidates with a scorer."""

    def __init__(self, pool: ExamplePool, scorer, pool_rng: np.random.Generator,
                 sample_size: int | None = None):
        self.pool = pool
        self.scorer = scorer
        self.pool_rng = pool_rng
        self.sample_size = sample_size

    def _argmax_select(self, belief) -> int:
        candidates = self.pool.sample_unused(self.pool_rng, self.sample_size)
        scores = self.scorer.scores(belief, candidates)
        index = int(candidates[int(np.argmax(scores))])
        self.pool.mark_used(index)
        return index


class NonAdaptiveTeacher(_ScoredTeacher):
    """Fixed type guess; re-scores each step with its label-updated belief."""

    policy = "nonadaptive"

    def __init__(self, pool, scorer, fixed_type: StudentType, belief,
                 pool_rng, sample_size=None):
        super().__init__(pool, scorer, pool_rng, sample_size)
        self.fixed_type = fixed_type
        self.belief = belief

    def select(self) -> int:
        return self._argmax_select(self.belief)

    def observe(self, obs: Observation) -> None:
        self.belief.update(obs.x, obs.label)

    def query_student_type(self) -> StudentType:
        return self.fixed_type


class RankingTeacher(_ScoredTeacher):
    """Scores the pool once under the fixed type's prior and freezes the order."""

    policy = "ranking"

    def __init__(self, pool, scorer, fixed_type: StudentType, prior_belief,
                 pool_rng, sample_size=None):
        super().__init__(pool, scorer, pool_rng, sample_size)
        self.fixed_type = fixed_type
        self.prior_belief = prior_belief
        self._order: list[int] | None = None
        self._cursor = 0

    def _freeze_order(self) -> None:
        candidates = self.pool.sample_unused(self.pool_rng, self.sample_size)
        scores = self.scorer.scores(self.prior_belief, candidates)
        # Stable sort on negated scores keeps pool order among ties.
        ranked = candidates[np.argsort(-scores, kind="stable")]
        self._order = [int(i) for i in ranked]

    def select(self) -> int:
        if self._order is None:
            self._freeze_order()
        while self._cursor < len(self._order):
            index = self._order[self._cursor]
            self._cursor += 1
            if not self.pool.is_used(index):
                self.pool.mark_used(index)
                return index
        raise PoolExhausted("ranking order exhausted")

    def query_student_type(self) -> StudentType:
        return self.fixed_type


class AdaptiveTeacher(Teacher):
    """Online MAP inference of the student type, then greedy selection under it."""

    policy = "adaptive"

    def __init__(self, pool, scorer, bank: StudentModelBank, pool_rng,
                 sample_size=None):
        self.pool = pool
        self.scorer = scorer
        self.bank = bank
        self.pool_rng = pool_rng
        self.sample_size = sample_size

    def select(self) -> int:
        candidates = self.pool.sample_unused(self.pool_rng, self.sample_size)
        scores = self.scorer.scores(self.bank.map_belief, candidates)
        index = int(candidates[int(np.argmax(scores))])
        self.pool.mark_used(index)
        return index

    def observe(self, obs: Observation) -> None:
        self.bank.observe(obs.x, obs.guess, obs.label)

    def query_student_type(self) -> StudentType:
        return self.bank.map_type
