"""Variable activity for the branching heuristic.

Two representations of the same decayed-sum score ``q(x, t) = b(x, t) + d * q(x, t-1)``:

* ``exact``: each variable keeps the conflict indices at which it was bumped,
  most recent first, and variables compare lexicographically on these lists.
  For ``d <= 1/2`` this is the order the decayed sums induce, without any
  floating-point ties.
* ``float``: the decayed sums themselves.
"""

from __future__ import annotations

from typing import Iterable

EXACT = "exact"
FLOAT = "float"

RESCALE_LIMIT = 1e100


class ScoreState:
    def __init__(self, num_vars: int, mode: str = EXACT, decay: float = 0.5):
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown score mode {mode!r}")
        if not 0 < decay < 1:
            raise ValueError(f"decay must lie in (0, 1), got {decay}")
        self.num_vars = num_vars
        self.mode = mode
        self.decay = decay
        self.conflicts = 0
        # index 0 unused
        self.stamps: list[tuple[int, ...]] = [()] * (num_vars + 1)
        self._neg: list[tuple[int, ...]] = [()] * (num_vars + 1)
        self.q: list[float] = [0.0] * (num_vars + 1)

    def bump_and_decay(self, variables: Iterable[int]) -> None:
        """Account for one conflict whose learned clause mentions ``variables``."""
        self.conflicts += 1
        t = self.conflicts
        if self.mode == EXACT:
            for v in variables:
                self.stamps[v] = (t,) + self.stamps[v]
                self._neg[v] = (-t,) + self._neg[v]
            return
        d = self.decay
        q = self.q
        for v in range(1, self.num_vars + 1):
            q[v] *= d
        for v in variables:
            q[v] += 1.0
        if max(q) > RESCALE_LIMIT:
            self.q = [x * 1e-100 for x in q]

    def score(self, v: int):
        """Comparable score: bump history in exact mode, decayed sum in float mode."""
        return self.stamps[v] if self.mode == EXACT else self.q[v]

    def sort_key(self, v: int) -> tuple:
        # ascending order puts the preferred variable first; ties go to the lower index
        if self.mode == EXACT:
            return self._neg[v] + (0, v)
        return (-self.q[v], v)

    def ranking(self, variables: Iterable[int] | None = None) -> list[int]:
        if variables is None:
            variables = range(1, self.num_vars + 1)
        return sorted(variables, key=self.sort_key)

    def equal(self, u: int, v: int) -> bool:
        return self.score(u) == self.score(v)
