from teachsim.students.program import (
    FRACTION_NOISE,
    FRACTION_PRIOR_C,
    FUNCTION_NOISE,
    FUNCTION_PRIOR_C,
    PREDICTIVE_FLOOR,
    ProgramBelief,
    ProgramSpace,
    fraction_prior,
    fraction_space,
    function_prior,
    function_space,
    likelihood_weights,
)
from teachsim.students.types import (
    StudentType,
    add_learner,
    fraction_special_primitives,
    intercept_learner,
    mult_learner,
    predicate_learner,
    verb_learner,
)
from teachsim.students.verbs import (
    VerbBelief,
    VerbTarget,
    fit_corpus_model,
    held_in_accuracy,
    verb_prior,
)


class SimulatedStudent:
    """Couples a belief with an rng: guesses by sampling, learns from labels."""

    def __init__(self, belief, rng):
        self.belief = belief
        self.rng = rng

    def guess(self, x):
        return self.belief.sample_guess(x, self.rng)

    def learn(self, x, y) -> None:
        self.belief.update(x, y)


def load_belief(doc: dict, space: ProgramSpace | None = None):
    """Revive a serialized belief; program documents need their space."""
    kind = doc.get("kind")
    if kind == "program":
        if space is None:
            raise ValueError("program belief documents need a ProgramSpace")
        return ProgramBelief.from_doc(doc, space)
    if kind == "verb":
        return VerbBelief.from_doc(doc)
    raise ValueError(f"unknown belief kind {kind!r}")
