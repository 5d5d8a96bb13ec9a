"""Bayesian students over enumerated program spaces (fractions, functions).

The space pre-evaluates every hypothesis on every pool input and interns the
outputs as integer codes, so posterior updates and predictive queries reduce
to vectorized comparisons against one row of the output matrix.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from teachsim.domains import fractions, functions
from teachsim.students.types import StudentType, fraction_special_primitives

# Predictive probabilities are floored at this value before entering log-sums,
# so a guess inconsistent with every hypothesis cannot produce -inf.
PREDICTIVE_FLOOR = 1e-6

FRACTION_PRIOR_C = 1e5
FUNCTION_PRIOR_C = 1e4

FRACTION_NOISE = 0.8
FUNCTION_NOISE = 0.05


class ProgramSpace:
    """An enumerated hypothesis space with interned outputs on a fixed pool."""

    def __init__(self, task: str, hypotheses: list, inputs: list):
        self.task = task
        self.hypotheses = list(hypotheses)
        self.inputs = list(inputs)
        self.input_index = {x: j for j, x in enumerate(self.inputs)}
        self._intern: dict = {}
        self._values: list = []
        outputs = np.empty((len(self.hypotheses), len(self.inputs)), dtype=np.int32)
        for i, h in enumerate(self.hypotheses):
            outputs[i] = [self._intern_value(h(x)) for x in self.inputs]
        self.outputs = outputs

    def _intern_value(self, value) -> int:
        code = self._intern.get(value)
        if code is None:
            code = len(self._values)
            self._intern[value] = code
            self._values.append(value)
        return code

    def output_code(self, value) -> int:
        """Interned code of an output value, -1 if no hypothesis produces it."""
        return self._intern.get(value, -1)

    def value_of(self, code: int):
        return self._values[code]

    def hypothesis_index(self, h) -> int:
        return self.hypotheses.index(h)

    def hypothesis_id(self, i: int) -> str:
        return self.hypotheses[i].name

    def evaluate(self, i: int, x) -> object:
        return self._values[self.outputs[i, self.input_index[x]]]


@lru_cache(maxsize=4)
def fraction_space(max_value: int = 10) -> ProgramSpace:
    return ProgramSpace(
        "fractions",
        fractions.enumerate_programs(),
        fractions.enumerate_problems(max_value),
    )


@lru_cache(maxsize=1)
def function_space() -> ProgramSpace:
    return ProgramSpace(
        "functions", functions.enumerate_concepts(), list(functions.INPUTS)
    )


def likelihood_weights(noise: float) -> tuple[float, float]:
    """(consistent, inconsistent) likelihood weights for a noise parameter.

    The noise constants in use span both conventions (0.05 reads as an error
    rate, 0.8 as a consistency weight), so the split is symmetrized: the
    larger share always goes to hypotheses that agree with the label.  Keep
    every interpretation of noise behind this one function.
    """
    return max(noise, 1.0 - noise), min(noise, 1.0 - noise)


class ProgramBelief:
    """Categorical posterior over one ProgramSpace."""

    def __init__(self, space: ProgramSpace, probs: np.ndarray, noise: float,
                 floor: float = PREDICTIVE_FLOOR):
        self.space = space
        self.probs = np.asarray(probs, dtype=float)
        self.noise = noise
        self.floor = floor
        if abs(self.probs.sum() - 1.0) > 1e-9:
            raise ValueError("belief probabilities must sum to 1")

    def copy(self) -> "ProgramBelief":
        return ProgramBelief(self.space, self.probs.copy(), self.noise, self.floor)

    def update(self, x, y) -> None:
        consistent_w, inconsistent_w = likelihood_weights(self.noise)
        column = self.space.outputs[:, self.space.input_index[x]]
        weights = np.where(column == self.space.output_code(y), consistent_w, inconsistent_w)
        self.probs *= weights
        self.probs /= self.probs.sum()

    def predictive_probs(self, x) -> dict:
        """Full predictive distribution over outputs at x (for inspection)."""
        column = self.space.outputs[:, self.space.input_index[x]]
        out: dict = {}
        for code in np.unique(column):
            out[self.space.value_of(code)] = float(self.probs[column == code].sum())
        return out

    def predictive_prob(self, x, guess) -> float:
        code = self.space.output_code(guess)
        if code < 0:
            return self.floor
        column = self.space.outputs[:, self.space.input_index[x]]
        mass = float(self.probs[column == code].sum())
        return max(mass, self.floor)

    def sample_guess(self, x, rng: np.random.Generator):
        i = rng.choice(len(self.probs), p=self.probs)
        return self.space.value_of(self.space.outputs[i, self.space.input_index[x]])

    def prob_of(self, hypothesis_index: int) -> float:
        return float(self.probs[hypothesis_index])

    def map_hypothesis(self):
        return self.space.hypotheses[int(np.argmax(self.probs))]

    def to_doc(self) -> dict:
        return {
            "version": 1,
            "kind": "program",
            "task": self.space.task,
            "noise": self.noise,
            "floor": self.floor,
            "hypotheses": [h.name for h in self.space.hypotheses],
            "probs": self.probs.tolist(),
        }

    @classmethod
    def from_doc(cls, doc: dict, space: ProgramSpace) -> "ProgramBelief":
        if doc.get("version") != 1 or doc.get("kind") != "program":
            raise ValueError("not a version-1 program belief document")
        names = [h.name for h in space.hypotheses]
        if doc["hypotheses"] != names:
            raise ValueError("hypothesis list does not match the given space")
        return cls(space, np.array(doc["probs"]), doc["noise"], doc.get("floor", PREDICTIVE_FLOOR))


def _normalized(weights: np.ndarray) -> np.ndarray:
    return weights / weights.sum()


def fraction_prior(space: ProgramSpace, learner: StudentType,
                   c: float = FRACTION_PRIOR_C, noise: float = FRACTION_NOISE) -> ProgramBelief:
    special = fraction_special_primitives(learner)
    counts = np.array(
        [
            (("add", h.add_rule) in special) + (("mul", h.mul_rule) in special)
            for h in space.hypotheses
        ],
        dtype=float,
    )
    return ProgramBelief(space, _normalized(c ** counts), noise)


def function_prior(space: ProgramSpace, learner: StudentType,
                   c: float = FUNCTION_PRIOR_C, noise: float = FUNCTION_NOISE) -> ProgramBelief:
    counts = np.array(
        [
            (h.predicate.name == learner.claimed_predicate)
            + (h.intercept == learner.claimed_intercept)
            for h in space.hypotheses
        ],
        dtype=float,
    )
    return ProgramBelief(space, _normalized(c ** counts), noise)
