"""Position, frequency and joint probability distributions of a walk state."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .qstate import SparseState

# probabilities below this count as structural zeros when building tagging maps
TAGGING_THRESHOLD = 1e-12


@dataclass(frozen=True)
class Distribution:
    """Nonzero bins of a marginal plus the index range they are reported over.

    ``lo``/``hi`` bound the plotting window (e.g. [-t, t] for positions) so
    :meth:`dense` can emit structural-zero bins explicitly.
    """

    support: dict[int, float]
    total: float
    lo: int
    hi: int

    def __getitem__(self, index: int) -> float:
        return self.support.get(index, 0.0)

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        idx = np.arange(self.lo, self.hi + 1)
        return idx, np.array([self.support.get(int(i), 0.0) for i in idx])

    def rows(self):
        for i in range(self.lo, self.hi + 1):
            yield i, self.support.get(i, 0.0)


def _marginal(state: SparseState, axis: int, window) -> Distribution:
    acc: dict[int, list[float]] = defaultdict(list)
    for key, amp in state.items():
        acc[key[axis]].append(abs(amp) ** 2)
    support = {k: math.fsum(v) for k, v in sorted(acc.items())}
    if window is None:
        lo, hi = (min(support), max(support)) if support else (0, 0)
    else:
        lo, hi = window
        lo, hi = min([lo, *support]), max([hi, *support])
    return Distribution(support, math.fsum(support.values()), lo, hi)


def position_distribution(state: SparseState, window: tuple[int, int] | None = None) -> Distribution:
    """P(x) = sum over polarization and frequency of |amplitude|^2."""
    return _marginal(state, 1, window)


def frequency_distribution(state: SparseState, window: tuple[int, int] | None = None) -> Distribution:
    """P(f) = sum over polarization and position of |amplitude|^2."""
    return _marginal(state, 2, window)


def joint_distribution(state: SparseState) -> dict[tuple[int, int], float]:
    acc: dict[tuple[int, int], list[float]] = defaultdict(list)
    for (_, x, f), amp in state.items():
        acc[(x, f)].append(abs(amp) ** 2)
    return {k: math.fsum(v) for k, v in sorted(acc.items())}


@dataclass(frozen=True)
class TaggingResult:
    mapping: dict[int, int] | None
    violations: list[int]

    @property
    def ok(self) -> bool:
        return not self.violations


def tagging_map(state: SparseState, threshold: float = TAGGING_THRESHOLD) -> TaggingResult:
    """Position -> frequency map if every occupied position carries exactly one frequency.

    Otherwise ``mapping`` is None and ``violations`` lists the positions that
    carry two or more frequencies.
    """
    freqs: dict[int, set[int]] = defaultdict(set)
    for (x, f), p in joint_distribution(state).items():
        if p > threshold:
            freqs[x].add(f)
    violations = sorted(x for x, fs in freqs.items() if len(fs) > 1)
    if violations:
        return TaggingResult(None, violations)
    return TaggingResult({x: next(iter(fs)) for x, fs in sorted(freqs.items())}, [])
