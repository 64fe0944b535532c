"""CNF data model, DIMACS reading/writing and an exhaustive satisfiability oracle.

Literals are DIMACS-style signed integers: ``v`` is the positive occurrence of
variable ``v`` and ``-v`` its negation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

Clause = tuple[int, ...]

BRUTE_FORCE_MAX_VARS = 26
_CHUNK_BITS = 20


class DimacsError(ValueError):
    """Malformed DIMACS input. ``line`` is 1-based, or None when not tied to a line."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Status(enum.Enum):
    SATISFIED = "satisfied"
    FALSIFIED = "falsified"
    UNDETERMINED = "undetermined"


@dataclass
class Formula:
    num_vars: int
    clauses: list[Clause] = field(default_factory=list)

    def __post_init__(self):
        self.clauses = [tuple(c) for c in self.clauses]

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def check(self, allow_tautologies: bool = False) -> None:
        """Raise ValueError if a literal is out of range or a clause repeats a variable."""
        for idx, clause in enumerate(self.clauses):
            seen = set()
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {idx}: literal {lit} out of range")
                if lit in seen:
                    raise ValueError(f"clause {idx}: duplicate literal {lit}")
                if -lit in seen and not allow_tautologies:
                    raise ValueError(f"clause {idx}: tautology on variable {abs(lit)}")
                seen.add(lit)


def parse_dimacs(text: str | Iterable[str]) -> Formula:
    """Parse DIMACS CNF. Accepts the whole text or an iterable of lines."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    num_vars = num_clauses = None
    clauses: list[Clause] = []
    current: list[int] = []
    current_vars: set[int] = set()
    header_line = 0
    last_line = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        last_line = lineno
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError("malformed header", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError("malformed header", lineno) from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError("malformed header", lineno)
            header_line = lineno
            continue
        if num_vars is None:
            raise DimacsError("clause before header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad token {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current, current_vars = [], set()
                continue
            if abs(lit) > num_vars:
                raise DimacsError(f"literal out of range: {lit}", lineno)
            if abs(lit) in current_vars:
                raise DimacsError(f"variable {abs(lit)} occurs twice in clause", lineno)
            current.append(lit)
            current_vars.add(abs(lit))
    if num_vars is None:
        raise DimacsError("missing header")
    if current:
        raise DimacsError("missing terminating 0", last_line)
    if len(clauses) != num_clauses:
        raise DimacsError(f"header declares {num_clauses} clauses, found {len(clauses)}", header_line)
    return Formula(num_vars, clauses)


def emit_dimacs(formula: Formula) -> str:
    out = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    out.extend(" ".join(map(str, clause + (0,))) for clause in formula.clauses)
    return "\n".join(out) + "\n"


def evaluate(formula: Formula, assignment: Mapping[int, Optional[bool]]) -> Status:
    undetermined = False
    for clause in formula.clauses:
        satisfied = False
        open_lit = False
        for lit in clause:
            val = assignment.get(abs(lit))
            if val is None:
                open_lit = True
            elif val == (lit > 0):
                satisfied = True
                break
        if satisfied:
            continue
        if not open_lit:
            return Status.FALSIFIED
        undetermined = True
    return Status.UNDETERMINED if undetermined else Status.SATISFIED


_pattern_cache: dict[int, list[np.ndarray]] = {}


def _patterns(nbits: int) -> list[np.ndarray]:
    # patterns[v] has bit a set iff bit v of a is set, packed little-endian into uint64 words
    if nbits not in _pattern_cache:
        idx = np.arange(1 << nbits, dtype=np.uint32)
        pats = []
        for v in range(nbits):
            bits = ((idx >> v) & 1).astype(bool)
            packed = np.packbits(bits, bitorder="little")
            pad = (-len(packed)) % 8
            packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
            pats.append(packed.view(np.uint64))
        _pattern_cache[nbits] = pats
    return _pattern_cache[nbits]


def brute_force_sat(formula: Formula) -> Optional[dict[int, bool]]:
    """Exhaustively decide satisfiability. Returns a total model, or None if UNSAT.

    All 2**num_vars assignments are covered: the low variables are evaluated
    bit-parallel, the remaining (at most 6) high variables are enumerated.
    """
    n = formula.num_vars
    if n > BRUTE_FORCE_MAX_VARS:
        raise ValueError(f"brute force refuses {n} variables (bound {BRUTE_FORCE_MAX_VARS})")
    if any(len(c) == 0 for c in formula.clauses):
        return None
    low = min(n, _CHUNK_BITS)
    pats = _patterns(low)
    width = len(pats[0]) if pats else 1
    # mask off padding bits beyond 2**low
    total = 1 << low
    valid_bits = np.zeros(width * 64, dtype=bool)
    valid_bits[:total] = True
    valid = np.packbits(valid_bits, bitorder="little").view(np.uint64)
    zeros = np.zeros(width, dtype=np.uint64)
    ones = ~zeros

    for high in range(1 << (n - low)):
        alive = valid.copy()
        for clause in formula.clauses:
            acc = zeros.copy()
            for lit in clause:
                v = abs(lit) - 1
                if v < low:
                    acc |= pats[v] if lit > 0 else ~pats[v]
                elif ((high >> (v - low)) & 1) == (lit > 0):
                    acc = ones
                    break
            alive &= acc
            if not alive.any():
                break
        nz = np.flatnonzero(alive)
        if len(nz):
            word = int(alive[nz[0]])
            bit = (word & -word).bit_length() - 1
            a = int(nz[0]) * 64 + bit
            model = {v + 1: bool((a >> v) & 1) for v in range(low)}
            model.update({low + v + 1: bool((high >> v) & 1) for v in range(n - low)})
            return model
    return None


def random_kcnf(rng, num_vars: int, num_clauses: int, k: int = 3) -> Formula:
    """Uniform random k-CNF over distinct variables per clause; ``rng`` is a ``random.Random``."""
    k = min(k, num_vars)
    clauses = []
    for _ in range(num_clauses):
        chosen = rng.sample(range(1, num_vars + 1), k)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return Formula(num_vars, clauses)
