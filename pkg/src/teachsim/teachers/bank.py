"""Per-candidate-type student models for online type inference.

Each candidate type keeps one internal belief, updated with the true labels
the student has seen, and one cumulative log score of how well that belief
predicted the student's actual guesses.  The running argmax is the MAP type.
"""

from __future__ import annotations

import math

import numpy as np

from teachsim.students.types import StudentType


class StudentModelBank:
    def __init__(self, types: list[StudentType], beliefs: list):
        if len(types) != len(beliefs):
            raise ValueError("one belief per candidate type")
        self.types = list(types)
        self.beliefs = list(beliefs)
        self.log_scores = np.zeros(len(types))

    def observe(self, x, guess, label) -> None:
        """Score the guess under each belief as it stood, then absorb the label."""
        for i, belief in enumerate(self.beliefs):
            self.log_scores[i] += math.log(belief.predictive_prob(x, guess))
            belief.update(x, label)

    @property
    def map_index(self) -> int:
        # np.argmax takes the first maximum, which is the candidate-order tie-break.
        return int(np.argmax(self.log_scores))

    @property
    def map_type(self) -> StudentType:
        return self.types[self.map_index]

    @property
    def map_belief(self):
        return self.beliefs[self.map_index]
