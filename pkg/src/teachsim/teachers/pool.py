"""Candidate example pools with used-set tracking.

Examples live at fixed indices; every selection API works in index space so
tie-breaking by pool order is just "first maximum".
"""

from __future__ import annotations

import numpy as np


class PoolExhausted(RuntimeError):
    """Every example has been used."""


class ExamplePool:
    def __init__(self, examples: list):
        self.examples = list(examples)
        self._used = np.zeros(len(self.examples), dtype=bool)

    def __len__(self) -> int:
        return len(self.examples)

    @property
    def remaining(self) -> int:
        return int((~self._used).sum())

    def unused_indices(self) -> np.ndarray:
        indices = np.flatnonzero(~self._used)
        if len(indices) == 0:
            raise PoolExhausted("no unused examples left")
        return indices

    def sample_unused(self, rng: np.random.Generator, k: int | None) -> np.ndarray:
        """Uniform sample of up to k unused indices, returned in pool order."""
        indices = self.unused_indices()
        if k is None or len(indices) <= k:
            return indices
        picked = rng.choice(indices, size=k, replace=False)
        return np.sort(picked)

    def mark_used(self, index: int) -> None:
        if self._used[index]:
            raise ValueError(f"example {index} already used")
        self._used[index] = True

    def is_used(self, index: int) -> bool:
        return bool(self._used[index])

    def example(self, index: int):
        return self.examples[index]
