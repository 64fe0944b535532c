import json

import pytest

from opcdcl.engine import SolverConfig
from opcdcl.opgen import OpCodec
from opcdcl.oracle import compare, predicted_conflict_count, predicted_trace, verify_theorem

# learned clause listings for OP_6 and OP_7, as (row, column) pairs
OP6_LISTING = [
    [(2, 1), (3, 1), (4, 1), (5, 1)],
    [(2, 1), (3, 1), (4, 1)],
    [(1, 4), (2, 4), (3, 4), (5, 4)],
    [(1, 4), (2, 4), (3, 4)],
    [(1, 3), (2, 3), (4, 3), (5, 3)],
    [(1, 3), (2, 3), (4, 3)],
    [(1, 3), (2, 3)],
    [(1, 2), (3, 2), (4, 2), (5, 2)],
    [(1, 2), (3, 2), (4, 2)],
    [(1, 2), (3, 2)],
    [(1, 2)],
    [(2, 1), (3, 1)],
]

OP7_LISTING = [
    [(2, 1), (3, 1), (4, 1), (5, 1), (6, 1)],
    [(2, 1), (3, 1), (4, 1), (5, 1)],
    [(1, 5), (2, 5), (3, 5), (4, 5), (6, 5)],
    [(1, 5), (2, 5), (3, 5), (4, 5)],
    [(1, 4), (2, 4), (3, 4), (5, 4), (6, 4)],
    [(1, 4), (2, 4), (3, 4), (5, 4)],
    [(1, 4), (2, 4), (3, 4)],
    [(1, 3), (2, 3), (4, 3), (5, 3), (6, 3)],
    [(1, 3), (2, 3), (4, 3), (5, 3)],
    [(1, 3), (2, 3), (4, 3)],
    [(1, 3), (2, 3)],
    [(1, 2), (3, 2), (4, 2), (5, 2), (6, 2)],
    [(1, 2), (3, 2), (4, 2), (5, 2)],
    [(1, 2), (3, 2), (4, 2)],
    [(1, 2), (3, 2)],
    [(1, 2)],
    [(2, 1), (3, 1), (4, 1)],
    [(2, 1), (3, 1)],
]


def listing_clauses(n, listing):
    c = OpCodec(n)
    return [tuple(c.encode(i, j) for i, j in clause) for clause in listing]


@pytest.mark.parametrize("n, listing", [(6, OP6_LISTING), (7, OP7_LISTING)])
def test_prediction_equals_listing(n, listing):
    assert predicted_trace(n).clauses == listing_clauses(n, listing)


def test_head_block():
    assert predicted_trace(6).phases()["head"] == [(1, 4), (1, 3)]


def test_refuses_small_n():
    for fn in (predicted_trace, predicted_conflict_count, verify_theorem):
        with pytest.raises(ValueError):
            fn(5)


@pytest.mark.parametrize("n, count", [(6, 12), (7, 18), (10, 42)])
def test_conflict_count(n, count):
    assert predicted_conflict_count(n) == count


@pytest.mark.parametrize("n", range(6, 41))
def test_length_and_block_structure(n):
    p = predicted_trace(n)
    assert len(p) == predicted_conflict_count(n)
    phases = p.phases()
    assert len(phases["head"]) == 2 and len(phases["tail"]) == n - 5
    cascade = phases["cascade"]
    for j in range(2, n - 1):
        block = [k for col, k in cascade if col == j]
        assert block == list(range(n - 2, j - 2, -1))
        assert len(block) == n - j
    assert cascade[-1] == (2, 1)
    assert p.clauses[len(phases["head"]) + len(cascade) - 1] == (OpCodec(n).encode(1, 2),)


def test_compare():
    p = predicted_trace(7)
    assert compare(p, p.clauses) is None
    altered = list(p.clauses)
    altered[5] = altered[5] + (OpCodec(7).encode(6, 1),)
    div = compare(p, altered)
    assert div.index == 5 and div.expected == p.clauses[5]
    assert compare(p, p.clauses[:-1]).index == len(p) - 1


def test_compare_ignores_literal_order():
    p = predicted_trace(6)
    assert compare(p, [tuple(reversed(c)) for c in p.clauses]) is None


@pytest.mark.parametrize("n, conflicts", [(6, 12), (7, 18), (9, 33), (30, 432)])
def test_verify_theorem(n, conflicts):
    rep = verify_theorem(n)
    assert rep.passed
    assert (rep.verdict, rep.conflicts, rep.trace_match, rep.focus_ok, rep.equal_scores_ok) == \
        ("UNSAT", conflicts, True, True, True)


def test_report_serializations():
    rep = verify_theorem(6, SolverConfig(score_mode="float", decay=0.25), check_proof=True)
    doc = json.loads(rep.to_json())
    assert doc["passed"] and doc["conflicts"] == 12 and doc["rup_ok"] is True
    text = rep.to_text()
    assert "PASS" in text and "12/12 clauses matched" in text
