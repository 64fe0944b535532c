"""Proof logging and independent checking.

* reverse-unit-propagation (RUP) check of learned clauses, using its own
  counter-based propagation so it shares no code with the solver's BCP
* DRAT text export (additions only; this solver never deletes clauses)
* implication-graph snapshots at conflict time and their DOT rendering
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from opcdcl.cnf import Clause

CONFLICT = 0  # node id of the conflict sink


@dataclass(frozen=True)
class ImplicationGraphSnapshot:
    """Conflict ancestry at the moment a conflict is found.

    ``nodes`` maps each true literal to its decision level, in trail order.
    Edges run from antecedent literal to implied literal (or to ``CONFLICT``)
    and carry the database index of the clause responsible.
    """

    nodes: dict[int, int]
    edges: tuple[tuple[int, int, int], ...]
    decisions: frozenset[int]
    conflict_clause: int
    conflict_level: int
    uip: Optional[int]
    conflict_side: frozenset[int]

    def predecessors(self, lit: int) -> list[int]:
        return [a for a, b, _ in self.edges if b == lit]


def snapshot_conflict(trail: Sequence[int], level: Sequence[int], reason: Sequence[int],
                      clauses: Sequence[Clause], conflict: int,
                      uip: Optional[int]) -> ImplicationGraphSnapshot:
    """Collect the literals that reach the conflict through reason edges.

    Implied literals that did not contribute to the conflict are left out.
    ``reason[v] < 0`` marks a decision.
    """
    pos = {lit: i for i, lit in enumerate(trail)}
    edges = []
    stack = []
    found = set()
    for q in clauses[conflict]:
        edges.append((-q, CONFLICT, conflict))
        if -q not in found:
            found.add(-q)
            stack.append(-q)
    while stack:
        lit = stack.pop()
        r = reason[abs(lit)]
        if r < 0:
            continue
        for q in clauses[r]:
            if q == lit:
                continue
            edges.append((-q, lit, r))
            if -q not in found:
                found.add(-q)
                stack.append(-q)
    ordered = sorted(found, key=pos.__getitem__)
    nodes = {lit: level[abs(lit)] for lit in ordered}
    conflict_level = max(nodes.values(), default=0)
    decisions = frozenset(lit for lit in ordered if reason[abs(lit)] < 0)
    conflict_side: frozenset[int] = frozenset()
    if uip is not None and conflict_level > 0:
        conflict_side = frozenset(lit for lit in ordered
                                  if nodes[lit] == conflict_level and pos[lit] > pos[uip])
    edges.sort(key=lambda e: (pos.get(e[1], len(trail)), pos[e[0]]))
    return ImplicationGraphSnapshot(nodes, tuple(edges), decisions, conflict, conflict_level,
                                    uip, conflict_side)


def _default_label(lit: int) -> str:
    return f"{'-' if lit < 0 else '+'}x_{abs(lit)}"


def export_dot(snapshot: ImplicationGraphSnapshot,
               label: Callable[[int], str] = _default_label,
               clause_label: Callable[[int], str] = str,
               title: str = "implication_graph") -> str:
    """Render a snapshot as a DOT digraph.

    The UIP node is drawn red and dashed; the conflict side of the cut sits in a
    dashed red cluster and edges crossing the cut are dashed.
    """
    def node_id(lit: int) -> str:
        return "conflict" if lit == CONFLICT else (f"n{lit}" if lit > 0 else f"m{-lit}")

    out = [f'digraph "{title}" {{', "  rankdir=TB;", '  node [shape=box, fontname="Helvetica"];']
    side = snapshot.conflict_side
    inside = []
    for lit, lvl in snapshot.nodes.items():
        attrs = [f'label="{label(lit)}@{lvl}"']
        if lit == snapshot.uip:
            attrs += ["color=red", "style=dashed", "penwidth=2"]
        elif lit in snapshot.decisions:
            attrs.append("style=bold")
        line = f"  {node_id(lit)} [{', '.join(attrs)}];"
        (inside if lit in side else out).append(line)
    conflict_line = '  conflict [label="CONFLICT", shape=octagon];'
    if snapshot.uip is not None:
        out.append('  subgraph cluster_cut {')
        out.append('    label="1UIP cut"; style=dashed; color=red;')
        out.extend("  " + line for line in inside)
        out.append("  " + conflict_line)
        out.append("  }")
    else:
        out.extend(inside)
        out.append(conflict_line)
    cut_side = side | {CONFLICT}
    for a, b, cid in snapshot.edges:
        attrs = [f'label="{clause_label(cid)}"']
        if snapshot.uip is not None and (a in cut_side) != (b in cut_side):
            attrs += ["style=dashed", "color=red"]
        out.append(f"  {node_id(a)} -> {node_id(b)} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"


class RupChecker:
    """Incremental RUP checking against a growing clause context."""

    def __init__(self, num_vars: int, clauses: Iterable[Clause] = ()):
        self.num_vars = num_vars
        self.clauses: list[Clause] = []
        self.occurs: list[list[int]] = [[] for _ in range(2 * num_vars + 1)]
        self.units: list[int] = []
        self.has_empty = False
        for c in clauses:
            self.add(c)

    def add(self, clause: Clause) -> None:
        cid = len(self.clauses)
        clause = tuple(clause)
        self.clauses.append(clause)
        if not clause:
            self.has_empty = True
        elif len(clause) == 1:
            self.units.append(cid)
        for lit in clause:
            self.occurs[lit].append(cid)

    def check(self, clause: Clause) -> bool:
        """True iff falsifying ``clause`` lets unit propagation over the context reach a conflict."""
        if self.has_empty:
            return True
        value: dict[int, bool] = {}
        false_count: dict[int, int] = {}
        queue: list[int] = []

        def assume(lit: int) -> bool:
            v = abs(lit)
            want = lit > 0
            have = value.get(v)
            if have is None:
                value[v] = want
                queue.append(lit)
                return True
            return have == want

        for lit in clause:
            if not assume(-lit):
                return True
        for cid in self.units:
            if not assume(self.clauses[cid][0]):
                return True
        head = 0
        while head < len(queue):
            lit = queue[head]
            head += 1
            for cid in self.occurs[-lit]:
                cnt = false_count.get(cid, 0) + 1
                false_count[cid] = cnt
                c = self.clauses[cid]
                if cnt == len(c):
                    return True
                if cnt == len(c) - 1:
                    for q in c:
                        have = value.get(abs(q))
                        if have is None:
                            assume(q)
                            break
                        if have == (q > 0):
                            break
        return False


def check_rup(clause: Clause, context: Iterable[Clause], num_vars: Optional[int] = None) -> bool:
    context = [tuple(c) for c in context]
    if num_vars is None:
        num_vars = max((abs(l) for c in context + [tuple(clause)] for l in c), default=0)
    return RupChecker(num_vars, context).check(clause)


def check_learned(num_vars: int, original: Iterable[Clause],
                  learned: Iterable[Clause]) -> list[int]:
    """Indices of learned clauses that are not RUP w.r.t. originals plus earlier lemmas."""
    checker = RupChecker(num_vars, original)
    bad = []
    for i, c in enumerate(learned):
        if not checker.check(c):
            bad.append(i)
        checker.add(c)
    return bad


@dataclass
class ProofLog:
    """Learned-clause additions in learning order; ``unsat`` marks a refutation."""

    additions: list[tuple[int, Clause]]
    unsat: bool

    @classmethod
    def from_result(cls, result) -> "ProofLog":
        return cls([(i + 1, tuple(c)) for i, c in enumerate(result.learned)],
                   result.verdict == "UNSAT")


def export_drat(log: ProofLog) -> str:
    if not log.unsat:
        raise ValueError("DRAT refutation requires an UNSAT run")
    lines = [" ".join(map(str, c)) + " 0" for _, c in log.additions]
    lines.append("0")
    return "\n".join(lines) + "\n"


def parse_drat(text: str) -> list[Clause]:
    out = []
    for line in text.splitlines():
        toks = line.split()
        if not toks:
            continue
        if toks[0] == "d":
            raise ValueError("deletion lines are not produced by this solver")
        lits = [int(t) for t in toks]
        if lits[-1] != 0 or 0 in lits[:-1]:
            raise ValueError(f"malformed DRAT line {line!r}")
        out.append(tuple(lits[:-1]))
    return out
