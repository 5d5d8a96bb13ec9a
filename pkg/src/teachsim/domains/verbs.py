"""English regular past-tense verb classes and suffix features.

Lemmas are grouped into four classes by how the past form is built, decided by
string matching in a fixed priority order.  Lemmas matching no class (the
irregulars) are excluded at ingestion.  Student models see lemmas through
binary word-final n-gram features over a frequency-thresholded vocabulary.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

VERB_CLASSES = ("+ed", "+d", "+ied", "+consonant+ed")

_VOWELS = frozenset("aeiou")

BUNDLED_CORPUS = "verb_lexicon.tsv"


class NoMatch(ValueError):
    """The (lemma, past) pair fits none of the four classes."""


def classify_lemma(lemma: str, past: str) -> str:
    if not lemma or not past:
        raise ValueError("lemma and past form must be nonempty")
    if lemma.endswith("y") and past == lemma[:-1] + "ied":
        return "+ied"
    if lemma[-1] not in _VOWELS and past == lemma + lemma[-1] + "ed":
        return "+consonant+ed"
    if past == lemma + "d":
        return "+d"
    if past == lemma + "ed":
        return "+ed"
    raise NoMatch(f"({lemma!r}, {past!r}) fits no class")


def apply_class_rule(lemma: str, verb_class: str) -> str:
    """Generate the past form; refuses lemmas whose shape contradicts the class."""
    if verb_class == "+ied":
        if not (len(lemma) > 1 and lemma.endswith("y") and lemma[-2] not in _VOWELS):
            raise ValueError(f"{lemma!r} does not end in consonant+y")
        return lemma[:-1] + "ied"
    if verb_class == "+consonant+ed":
        if lemma[-1] in _VOWELS or lemma.endswith("y"):
            raise ValueError(f"{lemma!r} does not end in a doubling consonant")
        return lemma + lemma[-1] + "ed"
    if verb_class == "+d":
        if not lemma.endswith("e"):
            raise ValueError(f"{lemma!r} does not end in 'e'")
        return lemma + "d"
    if verb_class == "+ed":
        if lemma.endswith("e") or (lemma.endswith("y") and lemma[-2] not in _VOWELS):
            raise ValueError(f"{lemma!r} would fall in another class")
        return lemma + "ed"
    raise ValueError(f"unknown verb class {verb_class!r}")


def suffixes(lemma: str, orders: tuple[int, ...] = (1, 2, 3)) -> tuple[str, ...]:
    """Word-final n-grams, shortest first; orders longer than the lemma are skipped."""
    if not lemma:
        raise ValueError("empty lemma")
    return tuple(lemma[-n:] for n in orders if len(lemma) >= n)


class Vocabulary:
    """A fixed, sorted set of suffix features with index lookup."""

    def __init__(self, features: list[str] | tuple[str, ...], orders: tuple[int, ...] = (1, 2, 3)):
        self.features = tuple(sorted(set(features)))
        self.orders = orders
        self._index = {f: i for i, f in enumerate(self.features)}

    def __len__(self) -> int:
        return len(self.features)

    @classmethod
    def build(cls, lemmas, min_count: int = 5, orders: tuple[int, ...] = (1, 2, 3)) -> "Vocabulary":
        counts = Counter(s for lemma in lemmas for s in suffixes(lemma, orders))
        return cls([f for f, c in counts.items() if c >= min_count], orders)

    def active_indices(self, lemma: str) -> list[int]:
        seen = (self._index.get(s) for s in suffixes(lemma, self.orders))
        return sorted({i for i in seen if i is not None})

    def encode(self, lemma: str) -> np.ndarray:
        vec = np.zeros(len(self.features), dtype=bool)
        vec[self.active_indices(lemma)] = True
        return vec

    def encode_many(self, lemmas) -> np.ndarray:
        mat = np.zeros((len(lemmas), len(self.features)), dtype=bool)
        for row, lemma in enumerate(lemmas):
            mat[row, self.active_indices(lemma)] = True
        return mat

    def save(self, path) -> None:
        Path(path).write_text("".join(f + "\n" for f in self.features), encoding="utf-8")

    @classmethod
    def load(cls, path, orders: tuple[int, ...] = (1, 2, 3)) -> "Vocabulary":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls([line.strip() for line in lines if line.strip()], orders)


@dataclass(frozen=True)
class VerbExample:
    lemma: str
    past: str
    verb_class: str


class VerbCorpus:
    def __init__(self, examples: list[VerbExample], skipped: int = 0):
        self.examples = examples
        self.skipped = skipped
        self.by_lemma = {ex.lemma: ex for ex in examples}

    def __len__(self) -> int:
        return len(self.examples)

    @property
    def lemmas(self) -> list[str]:
        return [ex.lemma for ex in self.examples]

    @property
    def classes(self) -> list[str]:
        return [ex.verb_class for ex in self.examples]

    def class_counts(self) -> dict[str, int]:
        counts = Counter(ex.verb_class for ex in self.examples)
        return {c: counts.get(c, 0) for c in VERB_CLASSES}

    @classmethod
    def from_pairs(cls, pairs) -> "VerbCorpus":
        examples, seen, skipped = [], set(), 0
        for lemma, past in pairs:
            lemma, past = lemma.strip().lower(), past.strip().lower()
            if not lemma or lemma in seen:
                continue
            try:
                verb_class = classify_lemma(lemma, past)
            except NoMatch:
                skipped += 1
                continue
            seen.add(lemma)
            examples.append(VerbExample(lemma, past, verb_class))
        return cls(examples, skipped)

    @classmethod
    def from_tsv(cls, path) -> "VerbCorpus":
        pairs = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                continue
            pairs.append((parts[0], parts[1]))
        return cls.from_pairs(pairs)

    @classmethod
    def bundled(cls) -> "VerbCorpus":
        ref = resources.files("teachsim.domains") / "data" / BUNDLED_CORPUS
        with resources.as_file(ref) as path:
            return cls.from_tsv(path)
