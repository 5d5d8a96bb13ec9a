"""Naive Bayes verb-class learners with conjugate Dirichlet/Beta beliefs.

A belief is a full set of pseudo-counts: one Dirichlet vector over the four
classes and one (present, absent) Beta pair per class and suffix feature.
Observing a labeled lemma increments counts; the predictive distribution and
the log-density of a target parameter vector have closed forms.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln, logsumexp

from teachsim.domains.verbs import VERB_CLASSES, VerbCorpus, Vocabulary
from teachsim.students.types import StudentType

PREDICTIVE_FLOOR = 1e-6
MODE_CLIP = 1e-6


class VerbBelief:
    def __init__(self, vocabulary: Vocabulary, class_counts: np.ndarray,
                 present: np.ndarray, absent: np.ndarray,
                 floor: float = PREDICTIVE_FLOOR):
        self.vocabulary = vocabulary
        self.classes = VERB_CLASSES
        self.class_counts = np.asarray(class_counts, dtype=float)
        self.present = np.asarray(present, dtype=float)
        self.absent = np.asarray(absent, dtype=float)
        self.floor = floor
        if self.present.shape != (len(self.classes), len(vocabulary)):
            raise ValueError("feature count shape mismatch")
        if np.any(self.class_counts <= 0) or np.any(self.present <= 0) or np.any(self.absent <= 0):
            raise ValueError("pseudo-counts must stay positive")

    @classmethod
    def flat(cls, vocabulary: Vocabulary) -> "VerbBelief":
        k, v = len(VERB_CLASSES), len(vocabulary)
        return cls(vocabulary, np.ones(k), np.ones((k, v)), np.ones((k, v)))

    def copy(self) -> "VerbBelief":
        return VerbBelief(self.vocabulary, self.class_counts.copy(),
                          self.present.copy(), self.absent.copy(), self.floor)

    def class_index(self, verb_class: str) -> int:
        return self.classes.index(verb_class)

    def update(self, lemma: str, verb_class: str) -> None:
        k = self.class_index(verb_class)
        self.class_counts[k] += 1
        active = self.vocabulary.active_indices(lemma)
        mask = np.zeros(len(self.vocabulary), dtype=bool)
        mask[active] = True
        self.present[k, mask] += 1
        self.absent[k, ~mask] += 1

    def _log_class_masses(self, features: np.ndarray) -> np.ndarray:
        """Unnormalized log predictive mass per class for a batch of feature rows."""
        log_p = np.log(self.present) - np.log(self.present + self.absent)
        log_q = np.log(self.absent) - np.log(self.present + self.absent)
        base = np.log(self.class_counts) - np.log(self.class_counts.sum()) + log_q.sum(axis=1)
        return base[None, :] + features.astype(float) @ (log_p - log_q).T

    def predictive(self, lemma: str) -> np.ndarray:
        logits = self._log_class_masses(self.vocabulary.encode(lemma)[None, :])[0]
        return np.exp(logits - logsumexp(logits))

    def predictive_batch(self, features: np.ndarray) -> np.ndarray:
        logits = self._log_class_masses(features)
        return np.exp(logits - logsumexp(logits, axis=1, keepdims=True))

    def predictive_prob(self, lemma: str, guessed_class: str) -> float:
        prob = float(self.predictive(lemma)[self.class_index(guessed_class)])
        return max(prob, self.floor)

    def sample_guess(self, lemma: str, rng: np.random.Generator) -> str:
        return self.classes[rng.choice(len(self.classes), p=self.predictive(lemma))]

    def log_pdf_of(self, target: "VerbTarget") -> float:
        alpha = self.class_counts
        dirichlet_part = (
            gammaln(alpha.sum())
            - gammaln(alpha).sum()
            + ((alpha - 1.0) * np.log(target.class_probs)).sum()
        )
        a, b = self.present, self.absent
        p = target.feature_probs
        beta_part = (
            gammaln(a + b) - gammaln(a) - gammaln(b)
            + (a - 1.0) * np.log(p) + (b - 1.0) * np.log1p(-p)
        ).sum()
        return float(dirichlet_part + beta_part)

    def to_doc(self) -> dict:
        return {
            "version": 1,
            "kind": "verb",
            "floor": self.floor,
            "classes": list(self.classes),
            "vocabulary": list(self.vocabulary.features),
            "class_counts": self.class_counts.tolist(),
            "present": self.present.tolist(),
            "absent": self.absent.tolist(),
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "VerbBelief":
        if doc.get("version") != 1 or doc.get("kind") != "verb":
            raise ValueError("not a version-1 verb belief document")
        if tuple(doc["classes"]) != VERB_CLASSES:
            raise ValueError("class list mismatch")
        vocab = Vocabulary(doc["vocabulary"])
        return cls(vocab, np.array(doc["class_counts"]), np.array(doc["present"]),
                   np.array(doc["absent"]), doc.get("floor", PREDICTIVE_FLOOR))


class VerbTarget:
    """The target parameter vector: posterior mode of the full-corpus fit."""

    def __init__(self, class_probs: np.ndarray, feature_probs: np.ndarray):
        self.class_probs = np.asarray(class_probs, dtype=float)
        self.feature_probs = np.asarray(feature_probs, dtype=float)
        if np.any(self.class_probs <= 0) or np.any(self.class_probs >= 1):
            raise ValueError("class probabilities must be interior")
        if np.any(self.feature_probs <= 0) or np.any(self.feature_probs >= 1):
            raise ValueError("feature probabilities must be interior")

    @classmethod
    def from_fit(cls, belief: VerbBelief, clip: float = MODE_CLIP) -> "VerbTarget":
        alpha = belief.class_counts
        k = len(alpha)
        if np.all(alpha == 1.0):
            class_probs = alpha / alpha.sum()
        else:
            class_probs = (alpha - 1.0) / (alpha.sum() - k)
        a, b = belief.present, belief.absent
        total = a + b
        # Beta(1,1) cells have no mode; fall back to the mean there.
        feature_probs = np.where(total > 2.0, (a - 1.0) / np.maximum(total - 2.0, 1e-12), a / total)
        return cls(
            np.clip(class_probs, clip, 1.0 - clip),
            np.clip(feature_probs, clip, 1.0 - clip),
        )


def fit_corpus_model(corpus: VerbCorpus, vocabulary: Vocabulary | None = None,
                     min_count: int = 5) -> VerbBelief:
    """Flat prior plus one conjugate update per corpus example, vectorized."""
    if vocabulary is None:
        vocabulary = Vocabulary.build(corpus.lemmas, min_count=min_count)
    belief = VerbBelief.flat(vocabulary)
    features = vocabulary.encode_many(corpus.lemmas)
    labels = np.array([belief.class_index(c) for c in corpus.classes])
    for k in range(len(VERB_CLASSES)):
        rows = features[labels == k]
        belief.class_counts[k] += len(rows)
        belief.present[k] += rows.sum(axis=0)
        belief.absent[k] += (~rows).sum(axis=0)
    return belief


def held_in_accuracy(belief: VerbBelief, corpus: VerbCorpus) -> tuple[float, float]:
    """(argmax accuracy, mean probability of the true class) on the corpus."""
    features = belief.vocabulary.encode_many(corpus.lemmas)
    probs = belief.predictive_batch(features)
    labels = np.array([belief.class_index(c) for c in corpus.classes])
    accuracy = float((probs.argmax(axis=1) == labels).mean())
    mean_truth = float(probs[np.arange(len(labels)), labels].mean())
    return accuracy, mean_truth


def verb_prior(fit: VerbBelief, learner: StudentType) -> VerbBelief:
    """Full-corpus counts with the unknown class reset to an uninformed state."""
    belief = fit.copy()
    k = belief.class_index(learner.unknown_class)
    belief.class_counts[k] = 1.0
    belief.present[k, :] = 1.0
    belief.absent[k, :] = 1.0
    return belief
