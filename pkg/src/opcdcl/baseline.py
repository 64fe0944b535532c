"""DPLL baseline: unit propagation plus chronological backtracking, no learning.

Branches on the lowest-index unassigned variable, false branch first. On OP
formulas this is the same column-major order the CDCL solver uses for ties.

``solve_dpll`` runs a compiled search; ``solve_dpll_reference`` is the same
algorithm in plain Python and serves as its cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from opcdcl.cnf import Formula


@dataclass
class DpllStats:
    verdict: str
    node_count: int
    max_depth: int
    model: Optional[dict[int, bool]] = None

    def to_text(self) -> str:
        return f"verdict={self.verdict} nodes={self.node_count} max_depth={self.max_depth}\n"


def solve_dpll(formula: Formula) -> DpllStats:
    formula.check()
    if any(len(c) == 0 for c in formula.clauses):
        return DpllStats("UNSAT", 0, 0)
    from opcdcl import _dpll_kernel

    verdict, nodes, depth, model = _dpll_kernel.run(formula.num_vars, formula.clauses)
    return DpllStats(verdict, nodes, depth, model)


def solve_dpll_reference(formula: Formula) -> DpllStats:
    formula.check()
    n = formula.num_vars
    if any(len(c) == 0 for c in formula.clauses):
        return DpllStats("UNSAT", 0, 0)

    val = [0] * (2 * n + 1)  # indexed by signed literal
    trail: list[int] = []
    watches: list[list[list[int]]] = [[] for _ in range(2 * n + 1)]
    units = []
    for clause in formula.clauses:
        c = list(clause)
        if len(c) == 1:
            units.append(c[0])
        else:
            watches[c[0]].append(c)
            watches[c[1]].append(c)

    def assign(lit: int) -> bool:
        if val[lit] == -1:
            return False
        if val[lit] == 0:
            val[lit], val[-lit] = 1, -1
            trail.append(lit)
        return True

    def propagate(head: int) -> bool:
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            ws = watches[false_lit]
            i = 0
            while i < len(ws):
                c = ws[i]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if val[c[0]] == 1:
                    i += 1
                    continue
                for k in range(2, len(c)):
                    if val[c[k]] != -1:
                        c[1], c[k] = c[k], c[1]
                        watches[c[1]].append(c)
                        ws[i] = ws[-1]
                        ws.pop()
                        break
                else:
                    if not assign(c[0]):
                        return False
                    i += 1
        return True

    def undo(to: int) -> None:
        while len(trail) > to:
            lit = trail.pop()
            val[lit] = val[-lit] = 0

    if not all(assign(u) for u in units) or not propagate(0):
        return DpllStats("UNSAT", 0, 0)

    # frames: (trail position before the branch, variable, true branch already tried)
    frames: list[tuple[int, int, bool]] = []
    nodes = 0
    max_depth = 0
    next_var = 1
    while True:
        while next_var <= n and val[next_var] != 0:
            next_var += 1
        if next_var > n:
            model = {v: val[v] == 1 for v in range(1, n + 1)}
            return DpllStats("SAT", nodes, max_depth, model)
        v = next_var
        frames.append((len(trail), v, False))
        max_depth = max(max_depth, len(frames))
        nodes += 1
        pos = len(trail)
        assign(-v)
        ok = propagate(pos)
        while not ok:
            # chronological backtracking to the most recent untried true branch
            while frames and frames[-1][2]:
                frames.pop()
            if not frames:
                return DpllStats("UNSAT", nodes, max_depth)
            pos, v, _ = frames.pop()
            undo(pos)
            frames.append((pos, v, True))
            nodes += 1
            assign(v)
            ok = propagate(pos)
        # every variable below v is still assigned
        next_var = v
