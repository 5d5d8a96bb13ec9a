"""Greedy teaching objectives: how good would showing x with its true label be?

A candidate's score is the student model's belief in the target after a
hypothetical update with (x, target(x)): posterior mass for program tasks, log
density of the target parameters for verbs.  Both scorers compute the whole
candidate batch in closed form instead of copying beliefs around.
"""

from __future__ import annotations

import numpy as np

from teachsim.students.program import ProgramBelief, ProgramSpace, likelihood_weights
from teachsim.students.verbs import VerbBelief, VerbTarget


class ProgramTeachingScorer:
    def __init__(self, space: ProgramSpace, target_index: int):
        self.space = space
        self.target_index = target_index
        # consistency[h, x]: does h agree with the target's label at x?
        self.consistency = space.outputs == space.outputs[target_index][None, :]

    def target_label(self, x):
        return self.space.evaluate(self.target_index, x)

    def scores(self, belief: ProgramBelief, candidate_indices: np.ndarray) -> np.ndarray:
        consistent_w, inconsistent_w = likelihood_weights(belief.noise)
        agreeing_mass = belief.probs @ self.consistency[:, candidate_indices]
        numerator = consistent_w * belief.probs[self.target_index]
        return numerator / (inconsistent_w + (consistent_w - inconsistent_w) * agreeing_mass)


class VerbTeachingScorer:
    def __init__(self, features: np.ndarray, class_indices: np.ndarray, target: VerbTarget):
        self.features = features.astype(float)
        self.class_indices = np.asarray(class_indices)
        self.target = target

    def target_label(self, index: int) -> int:
        return int(self.class_indices[index])

    def scores(self, belief: VerbBelief, candidate_indices: np.ndarray) -> np.ndarray:
        """log_pdf_of(target) after a hypothetical labeled update, per candidate.

        The update adds 1 to one Dirichlet count and to one Beta side per
        feature, so the density change telescopes into per-class constants
        plus a dot product with the candidate's feature row.
        """
        alpha = belief.class_counts
        a, b = belief.present, belief.absent
        dirichlet_delta = (
            np.log(alpha.sum()) - np.log(alpha) + np.log(self.target.class_probs)
        )
        present_delta = np.log(a + b) - np.log(a) + np.log(self.target.feature_probs)
        absent_delta = np.log(a + b) - np.log(b) + np.log1p(-self.target.feature_probs)
        per_class_base = dirichlet_delta + absent_delta.sum(axis=1)
        per_class_diff = present_delta - absent_delta

        current = belief.log_pdf_of(self.target)
        classes = self.class_indices[candidate_indices]
        rows = self.features[candidate_indices]
        return current + per_class_base[classes] + np.einsum(
            "ij,ij->i", rows, per_class_diff[classes]
        )
