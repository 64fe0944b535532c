"""Deterministic CDCL core.

Configuration is fixed to the one the Ordering Principle analysis needs:
variable-level VSIDS bumped on the final learned clause and decayed after every
conflict, decisions always assign false, restart after every conflict, no clause
deletion, first-UIP learning, and ties broken towards the lower variable index.

Propagation is strictly FIFO over the trail. Each false literal has its watch
list scanned in clause-database order (originals first, then learned clauses in
learning order) and the first falsified clause ends propagation.
"""

from __future__ import annotations

import json
from bisect import insort
from dataclasses import dataclass, field
from typing import Callable, Literal, Optional

from opcdcl.cnf import Clause, Formula
from opcdcl.proofs import ImplicationGraphSnapshot, snapshot_conflict
from opcdcl.scores import EXACT, FLOAT, ScoreState

DECISION = -1


@dataclass(frozen=True)
class SolverConfig:
    score_mode: Literal["exact", "float"] = EXACT
    decay: float = 0.5
    phase: Literal["false"] = "false"
    restart: Literal["every-conflict"] = "every-conflict"
    deletion: Literal["none"] = "none"
    learning: Literal["first-uip"] = "first-uip"
    verify_invariants: bool = False
    capture_graphs: bool = False

    def __post_init__(self):
        if self.score_mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown score mode {self.score_mode!r}")
        if not 0 < self.decay < 1:
            raise ValueError(f"decay must lie in (0, 1), got {self.decay}")
        if self.score_mode == EXACT and self.decay > 0.5:
            raise ValueError("exact score mode models decay <= 1/2 only")
        fixed = {"phase": "false", "restart": "every-conflict", "deletion": "none", "learning": "first-uip"}
        for name, allowed in fixed.items():
            if getattr(self, name) != allowed:
                raise ValueError(f"{name} is fixed to {allowed!r} in this solver")


# Trace events. Every event serializes to one JSON object with the keys
# kind, literal, level, reason, conflict_index (plus extras for conflicts).

@dataclass(frozen=True)
class Decision:
    literal: int
    level: int
    conflict_index: int
    kind = "decide"

    def to_json(self) -> dict:
        return _event(self.kind, self.literal, self.level, None, self.conflict_index)


@dataclass(frozen=True)
class Propagation:
    literal: int
    level: int
    reason: int
    conflict_index: int
    kind = "propagate"

    def to_json(self) -> dict:
        return _event(self.kind, self.literal, self.level, self.reason, self.conflict_index)


@dataclass(frozen=True)
class ConflictRecord:
    conflict_index: int
    conflict_clause: int
    level: int
    uip_literal: int
    learned: Clause
    backjump_level: int
    scores: dict = field(default_factory=dict)
    graph: Optional[ImplicationGraphSnapshot] = None
    kind = "conflict"

    def to_json(self) -> dict:
        d = _event(self.kind, self.uip_literal, self.level, self.conflict_clause, self.conflict_index)
        d["learned"] = list(self.learned)
        d["backjump_level"] = self.backjump_level
        return d


@dataclass(frozen=True)
class Restart:
    conflict_index: int
    kind = "restart"

    def to_json(self) -> dict:
        return _event(self.kind, None, 0, None, self.conflict_index)


@dataclass(frozen=True)
class Final:
    """Terminal event: ``sat``, or ``unsat`` with the level-0 conflict clause as reason."""

    kind: str
    reason: Optional[int]
    decisions_on_trail: int
    conflict_index: int

    def to_json(self) -> dict:
        d = _event(self.kind, None, 0, self.reason, self.conflict_index)
        d["decisions_on_trail"] = self.decisions_on_trail
        return d


def _event(kind, literal, level, reason, conflict_index) -> dict:
    return {"kind": kind, "literal": literal, "level": level, "reason": reason,
            "conflict_index": conflict_index}


def trace_jsonl(events) -> str:
    return "".join(json.dumps(e.to_json(), separators=(",", ":")) + "\n" for e in events)


@dataclass
class SolveResult:
    verdict: Literal["SAT", "UNSAT"]
    model: Optional[dict[int, bool]]
    conflicts: int
    decisions: int
    propagations: int
    learned: list[Clause]
    final_level: int = 0
    final_decisions_on_trail: int = 0
    events: list = field(default_factory=list)
    focus_violations: list = field(default_factory=list)
    equal_score_violations: list = field(default_factory=list)

    @property
    def records(self) -> list[ConflictRecord]:
        return [e for e in self.events if isinstance(e, ConflictRecord)]

    def summary(self) -> dict:
        return {"verdict": self.verdict, "conflicts": self.conflicts,
                "decisions": self.decisions, "propagations": self.propagations}


class Solver:
    def __init__(self, formula: Formula, config: SolverConfig = SolverConfig(),
                 observer: Optional[Callable] = None):
        formula.check()
        self.formula = formula
        self.config = config
        self.num_vars = n = formula.num_vars
        self.observers: list[Callable] = [observer] if observer else []
        self.events: list = []
        self.recording = bool(config.verify_invariants or observer)

        # val and watches are indexed by signed literal; -v wraps to the upper half
        self.val = [0] * (2 * n + 1)
        self.level = [0] * (n + 1)
        self.reason = [DECISION] * (n + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.watches: list[list[int]] = [[] for _ in range(2 * n + 1)]

        self.clauses: list[Clause] = []   # literal order as given or learned
        self.wlits: list[list[int]] = []  # working copies, watched literals at 0 and 1
        self.num_original = 0
        self.learned: list[Clause] = []

        self.scores = ScoreState(n, config.score_mode, config.decay)
        self.order: list[int] = []
        self.order_pos = 0

        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self._unsat_at_load: Optional[int] = None

        for clause in formula.clauses:
            cid = self._add_clause(clause)
            if cid is not None and self._unsat_at_load is None and self._attach(cid) is not None:
                self._unsat_at_load = cid
        self.num_original = len(self.clauses)
        self._rebuild_order()

    # -- state helpers -------------------------------------------------------

    @property
    def decision_level(self) -> int:
        return len(self.trail_lim)

    def _emit(self, event) -> None:
        self.events.append(event)
        for obs in self.observers:
            obs(event)

    def _enqueue(self, lit: int, reason: int) -> None:
        v = abs(lit)
        self.val[lit] = 1
        self.val[-lit] = -1
        self.level[v] = self.decision_level
        self.reason[v] = reason
        self.trail.append(lit)
        if reason != DECISION:
            self.propagations += 1
            if self.recording:
                self._emit(Propagation(lit, self.decision_level, reason, self.conflicts))

    def push_decision(self, lit: int) -> None:
        """Open a new decision level with ``lit`` assigned true."""
        self.decisions += 1
        self.trail_lim.append(len(self.trail))
        self._enqueue(lit, DECISION)
        if self.recording:
            self._emit(Decision(lit, self.decision_level, self.conflicts))

    def _add_clause(self, clause: Clause) -> Optional[int]:
        cid = len(self.clauses)
        self.clauses.append(tuple(clause))
        self.wlits.append(list(clause))
        if not clause:
            if self._unsat_at_load is None:
                self._unsat_at_load = cid
            return None
        return cid

    def _attach(self, cid: int) -> Optional[int]:
        """Watch a clause under the current (level-0) assignment.

        Returns ``cid`` if the clause is already falsified, else None. A clause
        with a single non-false literal asserts it immediately.
        """
        c = self.wlits[cid]
        val = self.val
        if len(c) == 1:
            lit = c[0]
            if val[lit] == -1:
                return cid
            if val[lit] == 0:
                self._enqueue(lit, cid)
            return None
        # move the first two non-false literals to the watch positions, keeping relative order
        free = [i for i, lit in enumerate(c) if val[lit] != -1]
        if len(free) >= 2:
            picks = free[:2]
        elif len(free) == 1:
            falses = [i for i in range(len(c)) if i != free[0]]
            picks = [free[0], max(falses, key=lambda i: self.level[abs(c[i])])]
        else:
            return cid
        w0, w1 = c[picks[0]], c[picks[1]]
        rest = [lit for i, lit in enumerate(c) if i not in picks]
        c[:] = [w0, w1] + rest
        insort(self.watches[w0], cid)
        insort(self.watches[w1], cid)
        if len(free) == 1 and val[w0] == 0:
            self._enqueue(w0, cid)
        return None

    # -- propagation ---------------------------------------------------------

    def propagate(self) -> Optional[int]:
        """Unit propagation to fixpoint. Returns the first falsified clause, or None."""
        val, watches, wlits = self.val, self.watches, self.wlits
        trail = self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            ws = watches[false_lit]
            i = j = 0
            end = len(ws)
            while i < end:
                cid = ws[i]
                i += 1
                c = wlits[cid]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if val[first] == 1:
                    ws[j] = cid
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    if val[lit] != -1:
                        c[1], c[k] = lit, false_lit
                        insort(watches[lit], cid)
                        break
                else:
                    ws[j] = cid
                    j += 1
                    if val[first] == -1:
                        ws[j:] = ws[i:]
                        self.qhead = len(trail)
                        return cid
                    self._enqueue(first, cid)
            del ws[j:]
        return None

    # -- decisions -----------------------------------------------------------

    def _rebuild_order(self) -> None:
        self.order = self.scores.ranking()
        self.order_pos = 0

    def decide(self) -> Optional[int]:
        """Negative literal of the best unassigned variable, or None if all are assigned.

        Assignments only grow between restarts, so one forward pass over the
        ranking computed at the last restart suffices.
        """
        order, val = self.order, self.val
        while self.order_pos < len(order):
            v = order[self.order_pos]
            if val[v] == 0:
                return -v
            self.order_pos += 1
        return None

    # -- conflict analysis ---------------------------------------------------

    def analyze(self, conflict: int) -> tuple[Clause, int, int]:
        """First-UIP learning. Returns (learned clause, backjump level, uip literal).

        The learned clause lists the negated UIP first, then the lower-level
        literals in the order they were met. Nothing is minimized; literals
        false at level 0 are kept.
        """
        level, reason, trail = self.level, self.reason, self.trail
        current = self.decision_level
        seen = set()
        lower: list[int] = []
        pending = 0
        idx = len(trail) - 1
        lits = self.clauses[conflict]
        p = 0
        while True:
            for q in lits:
                if q == p:
                    continue
                v = abs(q)
                if v in seen:
                    continue
                seen.add(v)
                if level[v] == current:
                    pending += 1
                else:
                    lower.append(q)
            while abs(trail[idx]) not in seen:
                idx -= 1
            p = trail[idx]
            idx -= 1
            pending -= 1
            if pending == 0:
                break
            lits = self.clauses[reason[abs(p)]]
        learned = (-p,) + tuple(lower)
        backjump = max((level[abs(q)] for q in lower), default=0)
        return learned, backjump, p

    # -- main loop -----------------------------------------------------------

    def _restart(self) -> None:
        if not self.trail_lim:
            return
        start = self.trail_lim[0]
        val = self.val
        for lit in self.trail[start:]:
            val[lit] = 0
            val[-lit] = 0
            self.reason[abs(lit)] = DECISION
        del self.trail[start:]
        self.trail_lim.clear()
        self.qhead = len(self.trail)

    def _finish_unsat(self, conflict: Optional[int]) -> SolveResult:
        decisions_on_trail = self.decision_level
        if self.recording:
            self._emit(Final("unsat", conflict, decisions_on_trail, self.conflicts))
        return self._result("UNSAT", None, final_level=self.decision_level,
                            decisions_on_trail=decisions_on_trail)

    def _result(self, verdict, model, final_level=0, decisions_on_trail=0) -> SolveResult:
        res = SolveResult(verdict, model, self.conflicts, self.decisions, self.propagations,
                          list(self.learned), final_level, decisions_on_trail, self.events)
        if self.config.verify_invariants:
            from opcdcl.invariants import assert_equal_scores, assert_focus_lemma
            res.focus_violations = assert_focus_lemma(self.events)
            res.equal_score_violations = assert_equal_scores(self.events)
        return res

    def solve(self) -> SolveResult:
        if self._unsat_at_load is not None:
            return self._finish_unsat(self._unsat_at_load)
        conflict = self.propagate()
        if conflict is not None:
            return self._finish_unsat(conflict)
        self._rebuild_order()
        while True:
            lit = self.decide()
            if lit is None:
                model = {v: self.val[v] == 1 for v in range(1, self.num_vars + 1)}
                if self.recording:
                    self._emit(Final("sat", None, self.decision_level, self.conflicts))
                return self._result("SAT", model, self.decision_level, self.decision_level)
            self.push_decision(lit)
            conflict = self.propagate()
            if conflict is None:
                continue
            learned, backjump, uip = self.analyze(conflict)
            self.conflicts += 1
            self.scores.bump_and_decay(abs(q) for q in learned)
            if self.recording:
                graph = None
                if self.config.capture_graphs:
                    graph = snapshot_conflict(self.trail, self.level, self.reason, self.clauses,
                                              conflict, uip)
                scores = {abs(q): self.scores.score(abs(q)) for q in learned}
                self._emit(ConflictRecord(self.conflicts, conflict, self.decision_level, uip,
                                          learned, backjump, scores, graph))
            self._restart()
            if self.recording:
                self._emit(Restart(self.conflicts))
            self.learned.append(learned)
            cid = self._add_clause(learned)
            falsified = self._attach(cid)
            if falsified is None:
                falsified = self.propagate()
            if falsified is not None:
                return self._finish_unsat(falsified)
            self._rebuild_order()


def solve(formula: Formula, config: SolverConfig = SolverConfig(),
          observer: Optional[Callable] = None) -> SolveResult:
    return Solver(formula, config, observer).solve()
