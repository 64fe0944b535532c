"""Runtime checks of the two heuristic invariants, replayed from a solver event stream.

Focus: once a clause has been learned, every decision picks a variable of the most
recent learned clause while that clause still has an unassigned variable.
Equal scores: right after the bump, all variables of the learned clause score the same.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple


class Violation(NamedTuple):
    conflict_index: int
    message: str


def assert_focus_lemma(events: Iterable) -> list[Violation]:
    violations = []
    assigned: dict[int, int] = {}  # var -> level
    focus: tuple[int, ...] = ()
    for e in events:
        kind = e.kind
        if kind == "propagate":
            assigned[abs(e.literal)] = e.level
        elif kind == "decide":
            v = abs(e.literal)
            open_vars = [u for u in focus if u not in assigned]
            if open_vars and v not in focus:
                violations.append(Violation(
                    e.conflict_index,
                    f"decided on {v} while learned-clause variables {open_vars} were unassigned"))
            assigned[v] = e.level
        elif kind == "conflict":
            focus = tuple(abs(q) for q in e.learned)
        elif kind == "restart":
            assigned = {v: lvl for v, lvl in assigned.items() if lvl == 0}
    return violations


def assert_equal_scores(events: Iterable) -> list[Violation]:
    violations = []
    for e in events:
        if e.kind != "conflict":
            continue
        distinct = {repr(s) for s in e.scores.values()}
        if len(distinct) > 1:
            violations.append(Violation(
                e.conflict_index, f"learned clause variables have {len(distinct)} distinct scores"))
    return violations
