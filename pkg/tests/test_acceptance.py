"""Acceptance gate A1-A9. Each test prints one PASS/FAIL line for its criterion."""

import contextlib
import random
import time

import pytest

from opcdcl.cli import separation_rows
from opcdcl.cnf import Status, brute_force_sat, evaluate, random_kcnf
from opcdcl.engine import Decision, SolverConfig, solve, trace_jsonl
from opcdcl.opgen import OpCodec, generate_op
from opcdcl.oracle import compare, predicted_conflict_count, predicted_trace, verify_theorem
from opcdcl.proofs import ProofLog, RupChecker, check_learned, export_drat, parse_drat

from test_oracle import OP6_LISTING, OP7_LISTING, listing_clauses

THEOREM_RANGE = range(6, 31)
MODES = {
    "exact": SolverConfig(),
    "float 0.5": SolverConfig(score_mode="float", decay=0.5),
    "float 0.25": SolverConfig(score_mode="float", decay=0.25),
}

RESULTS: dict[str, str] = {}


@contextlib.contextmanager
def criterion(name, detail=""):
    try:
        yield
    except BaseException as exc:
        RESULTS[name] = f"{name} FAIL {exc!s:.200}"
        print(RESULTS[name])
        raise
    RESULTS[name] = f"{name} PASS {detail}".rstrip()
    print(RESULTS[name])


@pytest.fixture(scope="module")
def exact_runs():
    return {n: solve(generate_op(n), observer=lambda e: None) for n in THEOREM_RANGE}


def test_a1_theorem_trace():
    start = time.perf_counter()
    with criterion("A1", "n=6..30 traces match"):
        for n in THEOREM_RANGE:
            rep = verify_theorem(n)
            assert rep.verdict == "UNSAT", n
            assert rep.conflicts == n * (n - 1) // 2 - 3, n
            assert rep.trace_match, (n, rep.divergence_index)
        elapsed = time.perf_counter() - start
        assert elapsed < 10, f"took {elapsed:.1f}s"
    RESULTS["A1"] += f" in {elapsed:.1f}s"


def test_a2_paper_listings():
    with criterion("A2", "OP_6 and OP_7 listings"):
        for n, listing in ((6, OP6_LISTING), (7, OP7_LISTING)):
            learned = solve(generate_op(n)).learned
            expected = listing_clauses(n, listing)
            assert len(learned) == len(expected)
            assert [set(c) for c in learned] == [set(c) for c in expected], n


def test_a3_final_derivation(exact_runs):
    with criterion("A3", "terminal conflict at level 0, no decisions"):
        for n, r in exact_runs.items():
            assert r.verdict == "UNSAT"
            assert (r.final_level, r.final_decisions_on_trail) == (0, 0), n
            final = r.events[-1]
            assert final.kind == "unsat" and final.decisions_on_trail == 0


def test_a4_invariants():
    with criterion("A4", "0 violations in exact, float 0.5, float 0.25"):
        for mode, config in MODES.items():
            for n in THEOREM_RANGE:
                rep = verify_theorem(n, config)
                assert rep.focus_ok and rep.equal_scores_ok, (mode, n)
                assert rep.trace_match, (mode, n)


def test_a5_proof_soundness(exact_runs):
    with criterion("A5", "all lemmas RUP, DRAT sizes exact"):
        for n, r in exact_runs.items():
            f = generate_op(n)
            assert check_learned(f.num_vars, f.clauses, r.learned) == [], n
            proof = parse_drat(export_drat(ProofLog.from_result(r)))
            assert len(proof) == predicted_conflict_count(n) + 1 and proof[-1] == (), n
            checker = RupChecker(f.num_vars, f.clauses)
            for lemma in proof[:-1]:
                checker.add(lemma)
            assert checker.check(()), n


def test_a6_random_correctness():
    rng = random.Random(20240601)
    counts = {"SAT": 0, "UNSAT": 0}
    with criterion("A6", ""):
        for _ in range(500):
            nv = rng.randint(3, 20)
            f = random_kcnf(rng, nv, rng.randint(1, 90), k=3)
            r = solve(f)
            model = brute_force_sat(f)
            assert r.verdict == ("SAT" if model is not None else "UNSAT"), f
            counts[r.verdict] += 1
            if r.verdict == "SAT":
                assert evaluate(f, r.model) is Status.SATISFIED
            else:
                assert check_learned(f.num_vars, f.clauses, r.learned) == []
        assert counts["SAT"] and counts["UNSAT"]
    RESULTS["A6"] += f" 500 formulas ({counts['SAT']} SAT, {counts['UNSAT']} UNSAT)"


@pytest.mark.slow
def test_a7_separation():
    with criterion("A7", ""):
        rows = separation_rows(6, 10)
        ratios = [ratio for _, _, _, ratio in rows]
        assert all(a < b for a, b in zip(ratios, ratios[1:])), rows
    RESULTS["A7"] += " ratios " + ", ".join(f"{r:.1f}" for r in ratios)


def test_a8_determinism():
    with criterion("A8", "n=12 traces byte-identical"):
        blobs = [trace_jsonl(solve(generate_op(12), observer=lambda e: None).events).encode()
                 for _ in range(2)]
        assert blobs[0] == blobs[1]
        assert compare(predicted_trace(12), solve(generate_op(12)).learned) is None


def decisions(n, config):
    return [e.literal for e in solve(generate_op(n), config, observer=lambda e: None).events
            if isinstance(e, Decision)]


def test_a9_score_order_equivalence():
    with criterion("A9", "decision sequences equal for n=6..15"):
        for n in range(6, 16):
            exact = decisions(n, MODES["exact"])
            approx = decisions(n, MODES["float 0.25"])
            assert exact and exact == approx, n
            assert all(lit < 0 and abs(lit) <= OpCodec(n).num_vars for lit in exact)
