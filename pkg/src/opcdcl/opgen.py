"""Ordering Principle formulas with a column-major variable encoding.

``P(i, j)`` reads "element i is smaller than element j"; ``i`` is the row and
``j`` the column. Variables are numbered column by column, rows ascending and
skipping the diagonal, so variable 1 is ``P(2, 1)`` and variable ``n(n-1)`` is
``P(n-1, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from opcdcl.cnf import Clause, Formula


@dataclass(frozen=True)
class OpCodec:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"ordering principle needs n >= 2, got {self.n}")

    @property
    def num_vars(self) -> int:
        return self.n * (self.n - 1)

    def encode(self, i: int, j: int) -> int:
        n = self.n
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ValueError(f"no variable P({i},{j}) for n={n}")
        rank = i if i < j else i - 1
        return (j - 1) * (n - 1) + rank

    def decode(self, var: int) -> tuple[int, int]:
        if not 1 <= var <= self.num_vars:
            raise ValueError(f"variable {var} out of range for n={self.n}")
        j, rank = divmod(var - 1, self.n - 1)
        j += 1
        rank += 1
        i = rank if rank < j else rank + 1
        return i, j

    def column(self, j: int) -> list[int]:
        """Ordered literal sequence of column ``j``: rows ascending, skipping ``j``."""
        if not 1 <= j <= self.n:
            raise ValueError(f"column {j} out of range for n={self.n}")
        return [self.encode(i, j) for i in range(1, self.n + 1) if i != j]

    def prefix_clause(self, j: int, k: int) -> Clause:
        """Positive disjunction of the first ``k`` variables of column ``j``."""
        if not 1 <= k <= self.n - 1:
            raise ValueError(f"prefix length {k} out of range for n={self.n}")
        return tuple(self.column(j)[:k])

    def label(self, lit: int) -> str:
        i, j = self.decode(abs(lit))
        return f"{'-' if lit < 0 else '+'}P_{{{i},{j}}}"

    # clause constructors, literal order as in the clause definitions
    def transitivity(self, i: int, j: int, k: int) -> Clause:
        return (-self.encode(i, j), -self.encode(j, k), self.encode(i, k))

    def antisymmetry(self, i: int, j: int) -> Clause:
        return (-self.encode(i, j), -self.encode(j, i))

    def non_minimality(self, j: int) -> Clause:
        return tuple(self.column(j))


def encode_var(codec: OpCodec, i: int, j: int) -> int:
    return codec.encode(i, j)


def decode_var(codec: OpCodec, var: int) -> tuple[int, int]:
    return codec.decode(var)


def ordered_literal_sequence(codec: OpCodec, j: int) -> list[int]:
    return codec.column(j)


def prefix_clause(codec: OpCodec, j: int, k: int) -> Clause:
    return codec.prefix_clause(j, k)


def generate_op(n: int) -> Formula:
    """OP_n: transitivity clauses in lexicographic (i, j, k) order, then one
    antisymmetry clause per pair i < j, then non-minimality D(1)..D(n)."""
    codec = OpCodec(n)
    clauses = [codec.transitivity(i, j, k) for i, j, k in permutations(range(1, n + 1), 3)]
    clauses += [codec.antisymmetry(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    clauses += [codec.non_minimality(j) for j in range(1, n + 1)]
    return Formula(codec.num_vars, clauses)


def clause_name(codec: OpCodec, clause_index: int) -> str:
    """Human-readable name (A(i,j,k), B(i,j), D(j)) of an original OP clause by database index."""
    n = codec.n
    n_a = n * (n - 1) * (n - 2)
    n_b = n * (n - 1) // 2
    if clause_index < n_a:
        i0, rest = divmod(clause_index, (n - 1) * (n - 2))
        j0, k0 = divmod(rest, n - 2)
        i = i0 + 1
        j = [x for x in range(1, n + 1) if x != i][j0]
        k = [x for x in range(1, n + 1) if x not in (i, j)][k0]
        return f"A({i},{j},{k})"
    if clause_index < n_a + n_b:
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        i, j = pairs[clause_index - n_a]
        return f"B({i},{j})"
    if clause_index < n_a + n_b + n:
        return f"D({clause_index - n_a - n_b + 1})"
    raise IndexError(clause_index)
