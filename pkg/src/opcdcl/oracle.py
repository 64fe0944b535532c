"""Predicted learned-clause sequence on OP_n and comparison against solver runs.

The prediction has three phases, all prefix clauses C(j, k) (the first ``k``
variables of column ``j``):

* head: C(1, n-2), C(1, n-3)
* descending cascade: for j = n-2 down to 2, C(j, n-2), C(j, n-3), ..., C(j, j-1)
* tail: C(1, n-4), ..., C(1, 2)
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from opcdcl.cnf import Clause
from opcdcl.engine import SolverConfig, solve
from opcdcl.opgen import OpCodec, generate_op
from opcdcl.proofs import check_learned

MIN_N = 6


def _require(n: int) -> None:
    if n < MIN_N:
        raise ValueError(f"no predicted trace for n={n}: the tail phase needs n >= {MIN_N}")


@dataclass(frozen=True)
class PredictedTrace:
    n: int
    descriptors: tuple[tuple[int, int], ...]  # (column, prefix length)

    @property
    def clauses(self) -> list[Clause]:
        codec = OpCodec(self.n)
        return [codec.prefix_clause(j, k) for j, k in self.descriptors]

    def phases(self) -> dict[str, list[tuple[int, int]]]:
        d = list(self.descriptors)
        cascade_len = self.n * (self.n - 3) // 2
        return {"head": d[:2], "cascade": d[2:2 + cascade_len], "tail": d[2 + cascade_len:]}

    def __len__(self) -> int:
        return len(self.descriptors)


@dataclass(frozen=True)
class TraceDivergence:
    index: int
    expected: Optional[Clause]
    actual: Optional[Clause]


def predicted_trace(n: int) -> PredictedTrace:
    _require(n)
    head = [(1, n - 2), (1, n - 3)]
    cascade = [(j, k) for j in range(n - 2, 1, -1) for k in range(n - 2, j - 2, -1)]
    tail = [(1, k) for k in range(n - 4, 1, -1)]
    return PredictedTrace(n, tuple(head + cascade + tail))


def predicted_conflict_count(n: int) -> int:
    _require(n)
    return n * (n - 1) // 2 - 3


def compare(predicted: PredictedTrace | Sequence[Clause],
            recorded: Sequence[Clause]) -> Optional[TraceDivergence]:
    """None on a match; otherwise the first position where the clause sets differ."""
    expected = predicted.clauses if isinstance(predicted, PredictedTrace) else list(predicted)
    for i in range(max(len(expected), len(recorded))):
        e = expected[i] if i < len(expected) else None
        a = tuple(recorded[i]) if i < len(recorded) else None
        if e is None or a is None or set(e) != set(a):
            return TraceDivergence(i, e, a)
    return None


@dataclass
class TheoremReport:
    n: int
    score_mode: str
    decay: float
    verdict: str
    conflicts: int
    expected_conflicts: int
    trace_match: bool
    matched_clauses: int
    divergence_index: Optional[int]
    final_level: int
    final_decisions: int
    focus_ok: bool
    equal_scores_ok: bool
    rup_ok: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return (self.verdict == "UNSAT" and self.conflicts == self.expected_conflicts
                and self.trace_match and self.focus_ok and self.equal_scores_ok
                and self.final_level == 0 and self.final_decisions == 0
                and self.rup_ok is not False)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"OP_{self.n} [{self.score_mode}, decay={self.decay}]: {status}",
            f"  verdict       {self.verdict}",
            f"  conflicts     {self.conflicts} (predicted {self.expected_conflicts})",
            f"  trace         {self.matched_clauses}/{self.expected_conflicts} clauses matched"
            + ("" if self.trace_match else f", first divergence at {self.divergence_index}"),
            f"  final         level {self.final_level}, {self.final_decisions} decisions on trail",
            f"  focus         {'ok' if self.focus_ok else 'VIOLATED'}",
            f"  equal scores  {'ok' if self.equal_scores_ok else 'VIOLATED'}",
        ]
        if self.rup_ok is not None:
            lines.append(f"  rup           {'ok' if self.rup_ok else 'FAILED'}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        d = asdict(self)
        d["passed"] = self.passed
        return json.dumps(d, sort_keys=True)


def verify_theorem(n: int, config: Optional[SolverConfig] = None,
                   check_proof: bool = False) -> TheoremReport:
    _require(n)
    config = config or SolverConfig()
    if not config.verify_invariants:
        config = SolverConfig(score_mode=config.score_mode, decay=config.decay,
                              verify_invariants=True, capture_graphs=config.capture_graphs)
    formula = generate_op(n)
    result = solve(formula, config)
    prediction = predicted_trace(n)
    div = compare(prediction, result.learned)
    matched = len(prediction) if div is None else div.index
    rup_ok = None
    if check_proof:
        rup_ok = not check_learned(formula.num_vars, formula.clauses, result.learned)
    return TheoremReport(
        n=n, score_mode=config.score_mode, decay=config.decay, verdict=result.verdict,
        conflicts=result.conflicts, expected_conflicts=predicted_conflict_count(n),
        trace_match=div is None, matched_clauses=matched,
        divergence_index=None if div is None else div.index,
        final_level=result.final_level, final_decisions=result.final_decisions_on_trail,
        focus_ok=not result.focus_violations, equal_scores_ok=not result.equal_score_violations,
        rup_ok=rup_ok,
    )
