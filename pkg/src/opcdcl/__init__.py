"""Deterministic CDCL solver for Ordering Principle formulas, with a trace oracle."""

from opcdcl.cnf import Formula, parse_dimacs, emit_dimacs, evaluate, brute_force_sat
from opcdcl.opgen import OpCodec, generate_op
from opcdcl.engine import Solver, SolverConfig, SolveResult, solve
from opcdcl.oracle import predicted_trace, predicted_conflict_count, verify_theorem

__all__ = [
    "Formula",
    "parse_dimacs",
    "emit_dimacs",
    "evaluate",
    "brute_force_sat",
    "OpCodec",
    "generate_op",
    "Solver",
    "SolverConfig",
    "SolveResult",
    "solve",
    "predicted_trace",
    "predicted_conflict_count",
    "verify_theorem",
]

__version__ = "0.1.0"
