"""Command-line entry point: ``opcdcl {gen,solve,verify,separation,graph}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

from opcdcl.baseline import solve_dpll
from opcdcl.cnf import DimacsError, Formula, emit_dimacs, parse_dimacs
from opcdcl.engine import SolverConfig, solve, trace_jsonl
from opcdcl.opgen import OpCodec, clause_name, generate_op
from opcdcl.oracle import MIN_N, predicted_conflict_count, verify_theorem
from opcdcl.proofs import ProofLog, export_dot, export_drat

EXIT_SAT = 10
EXIT_UNSAT = 20
SEPARATION_MAX_N = 12


@dataclass
class RunManifest:
    command: str
    input: Optional[str] = None
    n: Optional[int] = None
    config: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    seed: Optional[int] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"


class UsageError(Exception):
    pass


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read_formula(path: str) -> Formula:
    if path == "-":
        return parse_dimacs(sys.stdin.read())
    with open(path) as fh:
        return parse_dimacs(fh.read())


def _config(args) -> SolverConfig:
    return SolverConfig(score_mode=args.score_mode, decay=args.decay,
                        verify_invariants=getattr(args, "verify_invariants", False))


def detect_op(formula: Formula) -> Optional[OpCodec]:
    """Return the codec if ``formula`` is exactly the generated OP_n for some n."""
    n = 2
    while n * (n - 1) < formula.num_vars:
        n += 1
    if n * (n - 1) != formula.num_vars or formula.num_vars == 0:
        return None
    return OpCodec(n) if generate_op(n) == formula else None


def cmd_gen(args) -> int:
    if args.n < 2:
        raise UsageError(f"gen needs n >= 2, got {args.n}")
    _write(args.output, emit_dimacs(generate_op(args.n)))
    args.manifest.n = args.n
    args.manifest.outputs["cnf"] = args.output or "-"
    return 0


def cmd_solve(args) -> int:
    formula = _read_formula(args.cnf)
    config = _config(args)
    args.manifest.input = args.cnf
    args.manifest.config = asdict(config)
    result = solve(formula, config, observer=(lambda e: None) if args.trace_out else None)
    print(f"{result.verdict} conflicts={result.conflicts} decisions={result.decisions} "
          f"propagations={result.propagations}")
    if result.verdict == "SAT":
        print("v " + " ".join(str(v if val else -v) for v, val in sorted(result.model.items())) + " 0")
    if config.verify_invariants:
        print(f"focus_violations={len(result.focus_violations)} "
              f"equal_score_violations={len(result.equal_score_violations)}")
    if args.trace_out:
        _write(args.trace_out, trace_jsonl(result.events))
        args.manifest.outputs["trace"] = args.trace_out
    if args.drat_out:
        if result.verdict != "UNSAT":
            print("no DRAT proof for a satisfiable formula", file=sys.stderr)
        else:
            _write(args.drat_out, export_drat(ProofLog.from_result(result)))
            args.manifest.outputs["drat"] = args.drat_out
    return EXIT_SAT if result.verdict == "SAT" else EXIT_UNSAT


def cmd_verify(args) -> int:
    if args.n < MIN_N:
        raise UsageError(f"verify needs n >= {MIN_N}: the predicted trace has no tail phase below that")
    config = SolverConfig(score_mode=args.score_mode, decay=args.decay, verify_invariants=True)
    args.manifest.n = args.n
    args.manifest.config = asdict(config)
    report = verify_theorem(args.n, config, check_proof=args.check_proof)
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    return 0 if report.passed else 1


def separation_rows(n_min: int, n_max: int) -> list[tuple[int, int, int, float]]:
    if not MIN_N <= n_min <= n_max <= SEPARATION_MAX_N:
        raise UsageError(f"separation range must satisfy {MIN_N} <= n_min <= n_max <= {SEPARATION_MAX_N}")
    rows = []
    for n in range(n_min, n_max + 1):
        formula = generate_op(n)
        cdcl = solve(formula)
        dpll = solve_dpll(formula)
        if cdcl.verdict != "UNSAT" or dpll.verdict != "UNSAT":
            raise RuntimeError(f"OP_{n} not refuted (cdcl={cdcl.verdict}, dpll={dpll.verdict})")
        rows.append((n, cdcl.conflicts, dpll.node_count, dpll.node_count / cdcl.conflicts))
    return rows


def cmd_separation(args) -> int:
    rows = separation_rows(args.n_min, args.n_max)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "cdcl_conflicts", "dpll_nodes", "ratio"])
    for n, conflicts, nodes, ratio in rows:
        writer.writerow([n, conflicts, nodes, f"{ratio:.6f}"])
    _write(args.csv_out, buf.getvalue())
    args.manifest.config = {"n_min": args.n_min, "n_max": args.n_max}
    args.manifest.outputs["csv"] = args.csv_out or "-"
    return 0


def cmd_graph(args) -> int:
    formula = _read_formula(args.cnf)
    config = SolverConfig(score_mode=args.score_mode, decay=args.decay, capture_graphs=True)
    result = solve(formula, config, observer=lambda e: None)
    records = result.records
    if not 1 <= args.index <= len(records):
        raise UsageError(f"conflict index {args.index} out of range: run had {len(records)} conflicts")
    snapshot = records[args.index - 1].graph
    codec = detect_op(formula)
    if codec is not None:
        label = codec.label
        n_orig = len(formula.clauses)

        def clause_label(cid: int) -> str:
            return clause_name(codec, cid) if cid < n_orig else f"L{cid - n_orig + 1}"
    else:
        label, clause_label = (lambda lit: f"{'-' if lit < 0 else '+'}x_{abs(lit)}"), str
    _write(args.output, export_dot(snapshot, label, clause_label, title=f"conflict_{args.index}"))
    args.manifest.input = args.cnf
    args.manifest.outputs["dot"] = args.output or "-"
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opcdcl", description=__doc__)
    parser.add_argument("--manifest-out", help="write a JSON run manifest here")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--score-mode", choices=["exact", "float"], default="exact")
        p.add_argument("--decay", type=float, default=0.5)

    p = sub.add_parser("gen", help="write OP_n as DIMACS")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve a DIMACS file (exit 10 SAT / 20 UNSAT)")
    p.add_argument("cnf")
    solver_flags(p)
    p.add_argument("--trace-out", help="JSON-lines event trace")
    p.add_argument("--drat-out", help="DRAT proof (UNSAT only)")
    p.add_argument("--verify-invariants", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a run on OP_n against the predicted learned clauses")
    p.add_argument("n", type=int)
    solver_flags(p)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--check-proof", action="store_true", help="also RUP-check every learned clause")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("separation", help="CDCL conflicts vs DPLL nodes on OP_n")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("--csv-out")
    p.set_defaults(func=cmd_separation)

    p = sub.add_parser("graph", help="DOT implication graph of one conflict (1-based index)")
    p.add_argument("cnf")
    p.add_argument("index", type=int)
    solver_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.manifest = RunManifest(command=args.command)
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"opcdcl {args.command}: {exc}", file=sys.stderr)
        return 2
    except DimacsError as exc:
        print(f"opcdcl {args.command}: parse error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"opcdcl {args.command}: {exc}", file=sys.stderr)
        return 1
    if args.manifest_out:
        with open(args.manifest_out, "w") as fh:
            fh.write(args.manifest.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
