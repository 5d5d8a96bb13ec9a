"""Shared fixtures: cached spaces, the verb corpus fit, fake clocks, scripted students."""

from __future__ import annotations

import numpy as np
import pytest

from teachsim.domains.verbs import VerbCorpus
from teachsim.students import fit_corpus_model, fraction_space, function_space
from teachsim.students.verbs import VerbTarget

# Acceptance pass/fail lines, re-printed after the run so they survive capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fspace():
    return fraction_space()


@pytest.fixture(scope="session")
def gspace():
    return function_space()


@pytest.fixture(scope="session")
def corpus():
    return VerbCorpus.bundled()


@pytest.fixture(scope="session")
def verb_fit(corpus):
    return fit_corpus_model(corpus)


@pytest.fixture(scope="session")
def verb_target(verb_fit):
    return VerbTarget.from_fit(verb_fit)


class FakeClock:
    """Millisecond clock under test control."""

    def __init__(self, start: int = 1_000_000):
        self.now = start

    def __call__(self) -> int:
        return self.now

    def advance(self, ms: int) -> None:
        self.now += ms


@pytest.fixture
def clock():
    return FakeClock()


class ScriptedStudent:
    """Plays back a fixed guess sequence; learning is a no-op."""

    def __init__(self, guesses):
        self.guesses = list(guesses)
        self.cursor = 0
        self.learned = []

    def guess(self, x):
        guess = self.guesses[self.cursor]
        self.cursor += 1
        return guess

    def learn(self, x, y):
        self.learned.append((x, y))


@pytest.fixture
def scripted_student():
    return ScriptedStudent


@pytest.fixture
def rng():
    return np.random.default_rng(0)
