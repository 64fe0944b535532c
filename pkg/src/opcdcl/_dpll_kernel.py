"""Compiled DPLL search with the same branching rule as ``baseline.solve_dpll_reference``.

Node counts depend only on the propagation fixpoint at each node, never on the
order propagation visits clauses, so both implementations count the same tree.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def _code(lit: int) -> int:
    return 2 * abs(lit) + (1 if lit < 0 else 0)


def pack(num_vars: int, clauses) -> tuple:
    """Flatten clauses of length >= 2 into arrays; unit clauses are returned separately."""
    long = [c for c in clauses if len(c) >= 2]
    units = np.array([_code(c[0]) for c in clauses if len(c) == 1], dtype=np.int64)
    starts = np.zeros(len(long) + 1, dtype=np.int64)
    for i, c in enumerate(long):
        starts[i + 1] = starts[i] + len(c)
    lits = np.array([_code(l) for c in long for l in c], dtype=np.int64)
    ncodes = 2 * num_vars + 2
    occ = np.zeros(ncodes, dtype=np.int64)
    for code in lits:
        occ[code] += 1
    wstart = np.zeros(ncodes + 1, dtype=np.int64)
    wstart[1:] = np.cumsum(occ)
    return num_vars, starts, lits, units, wstart


@njit(cache=True)
def _search(num_vars, starts, lits, units, wstart):
    ncodes = 2 * num_vars + 2
    nclauses = len(starts) - 1
    val = np.zeros(ncodes, dtype=np.int8)
    wlist = np.zeros(max(1, wstart[ncodes]), dtype=np.int64)
    wcount = np.zeros(ncodes, dtype=np.int64)
    for c in range(nclauses):
        for k in range(2):
            code = lits[starts[c] + k]
            wlist[wstart[code] + wcount[code]] = c
            wcount[code] += 1
    trail = np.zeros(num_vars + 1, dtype=np.int64)
    tlen = 0
    frame_pos = np.zeros(num_vars + 1, dtype=np.int64)
    frame_var = np.zeros(num_vars + 1, dtype=np.int64)
    frame_tried = np.zeros(num_vars + 1, dtype=np.int8)
    nframes = 0
    nodes = 0
    max_depth = 0

    ok = True
    for u in units:
        if val[u] == -1:
            ok = False
            break
        if val[u] == 0:
            val[u] = 1
            val[u ^ 1] = -1
            trail[tlen] = u
            tlen += 1
    head = 0
    next_var = 1
    pending = ok  # propagate before the first decision
    while True:
        if pending:
            # unit propagation from trail[head:]
            conflict = False
            while head < tlen and not conflict:
                false_code = trail[head] ^ 1
                head += 1
                i = 0
                while i < wcount[false_code]:
                    c = wlist[wstart[false_code] + i]
                    s = starts[c]
                    if lits[s] == false_code:
                        lits[s] = lits[s + 1]
                        lits[s + 1] = false_code
                    first = lits[s]
                    if val[first] == 1:
                        i += 1
                        continue
                    moved = False
                    for k in range(s + 2, starts[c + 1]):
                        code = lits[k]
                        if val[code] != -1:
                            lits[s + 1] = code
                            lits[k] = false_code
                            wlist[wstart[code] + wcount[code]] = c
                            wcount[code] += 1
                            last = wcount[false_code] - 1
                            wlist[wstart[false_code] + i] = wlist[wstart[false_code] + last]
                            wcount[false_code] = last
                            moved = True
                            break
                    if moved:
                        continue
                    if val[first] == -1:
                        conflict = True
                        break
                    val[first] = 1
                    val[first ^ 1] = -1
                    trail[tlen] = first
                    tlen += 1
                    i += 1
            ok = not conflict
            pending = False
        if not ok:
            while nframes > 0 and frame_tried[nframes - 1] == 1:
                nframes -= 1
            if nframes == 0:
                return 20, nodes, max_depth, val
            nframes -= 1
            pos = frame_pos[nframes]
            v = frame_var[nframes]
            while tlen > pos:
                tlen -= 1
                code = trail[tlen]
                val[code] = 0
                val[code ^ 1] = 0
            head = pos
            frame_pos[nframes] = pos
            frame_var[nframes] = v
            frame_tried[nframes] = 1
            nframes += 1
            nodes += 1
            code = 2 * v
            val[code] = 1
            val[code + 1] = -1
            trail[tlen] = code
            tlen += 1
            next_var = v
            pending = True
            continue
        while next_var <= num_vars and val[2 * next_var] != 0:
            next_var += 1
        if next_var > num_vars:
            return 10, nodes, max_depth, val
        v = next_var
        frame_pos[nframes] = tlen
        frame_var[nframes] = v
        frame_tried[nframes] = 0
        nframes += 1
        if nframes > max_depth:
            max_depth = nframes
        nodes += 1
        code = 2 * v + 1
        val[code] = 1
        val[code - 1] = -1
        trail[tlen] = code
        tlen += 1
        pending = True


def run(num_vars: int, clauses) -> tuple[str, int, int, dict[int, bool] | None]:
    status, nodes, depth, val = _search(*pack(num_vars, clauses))
    if status == 10:
        model = {v: bool(val[2 * v] == 1) for v in range(1, num_vars + 1)}
        return "SAT", int(nodes), int(depth), model
    return "UNSAT", int(nodes), int(depth), None
