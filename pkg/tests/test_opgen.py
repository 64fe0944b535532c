import pytest
from hypothesis import given
from hypothesis import strategies as st

from opcdcl.cnf import brute_force_sat
from opcdcl.opgen import (OpCodec, clause_name, decode_var, encode_var, generate_op,
                          ordered_literal_sequence, prefix_clause)


def column_major(n):
    """P(2,1), ..., P(n,1), P(1,2), ..., P(n-1,n), listed directly."""
    return [(i, j) for j in range(1, n + 1) for i in range(1, n + 1) if i != j]


def test_encode_examples():
    c = OpCodec(6)
    listing = column_major(6)
    assert encode_var(c, 2, 1) == 1
    assert encode_var(c, 1, 2) == listing.index((1, 2)) + 1 == 6
    assert encode_var(c, 5, 6) == listing.index((5, 6)) + 1 == 30


def test_decode_examples():
    c = OpCodec(6)
    assert decode_var(c, 1) == (2, 1)
    assert decode_var(c, 6) == (1, 2)
    with pytest.raises(ValueError):
        decode_var(c, 31)


@pytest.mark.parametrize("i, j", [(3, 3), (0, 1), (7, 1), (1, 7)])
def test_encode_domain_errors(i, j):
    with pytest.raises(ValueError):
        OpCodec(6).encode(i, j)


@given(st.integers(2, 40))
def test_encode_decode_bijection(n):
    c = OpCodec(n)
    listing = column_major(n)
    assert [c.encode(i, j) for i, j in listing] == list(range(1, n * (n - 1) + 1))
    assert [c.decode(v) for v in range(1, c.num_vars + 1)] == listing


def count_definition_sets(n):
    triples = sum(1 for i in range(1, n + 1) for j in range(1, n + 1) for k in range(1, n + 1)
                  if i != j and j != k and i != k)
    pairs = sum(1 for i in range(1, n + 1) for j in range(1, n + 1) if i < j)
    return triples, pairs, n


def test_op6_counts():
    f = generate_op(6)
    a, b, d = count_definition_sets(6)
    assert (a, b, d) == (120, 15, 6)
    assert f.num_vars == 30
    assert f.num_clauses == a + b + d == 141


def test_op2_clauses_and_unsat():
    c = OpCodec(2)
    p12, p21 = c.encode(1, 2), c.encode(2, 1)
    f = generate_op(2)
    assert f.clauses == [(-p12, -p21), (p21,), (p12,)]
    assert brute_force_sat(f) is None


def test_op3_d1_literal_order():
    c = OpCodec(3)
    f = generate_op(3)
    d1 = f.clauses[-3]
    assert d1 == (c.encode(2, 1), c.encode(3, 1))


def test_clause_order_and_names():
    n = 5
    c = OpCodec(n)
    f = generate_op(n)
    n_a = n * (n - 1) * (n - 2)
    assert f.clauses[0] == c.transitivity(1, 2, 3)
    assert f.clauses[n_a - 1] == c.transitivity(5, 4, 3)
    assert f.clauses[n_a] == c.antisymmetry(1, 2)
    assert f.clauses[-1] == c.non_minimality(5)
    names = [clause_name(c, i) for i in range(f.num_clauses)]
    assert names[0] == "A(1,2,3)" and names[n_a] == "B(1,2)" and names[-1] == "D(5)"
    assert len(set(names)) == f.num_clauses


@pytest.mark.parametrize("n", [2, 3, 4])
def test_small_op_unsat(n):
    assert brute_force_sat(generate_op(n)) is None


def test_generate_rejects_small_n():
    with pytest.raises(ValueError):
        generate_op(1)


def test_ordered_literal_sequences():
    c = OpCodec(6)
    e = c.encode
    assert ordered_literal_sequence(c, 1) == [e(2, 1), e(3, 1), e(4, 1), e(5, 1), e(6, 1)]
    assert ordered_literal_sequence(c, 4) == [e(1, 4), e(2, 4), e(3, 4), e(5, 4), e(6, 4)]
    assert ordered_literal_sequence(c, 6) == [e(1, 6), e(2, 6), e(3, 6), e(4, 6), e(5, 6)]
    with pytest.raises(ValueError):
        ordered_literal_sequence(c, 7)


def test_prefix_clauses():
    c = OpCodec(6)
    e = c.encode
    assert prefix_clause(c, 1, 4) == (e(2, 1), e(3, 1), e(4, 1), e(5, 1))
    assert prefix_clause(c, 4, 3) == (e(1, 4), e(2, 4), e(3, 4))
    assert prefix_clause(c, 2, 1) == (e(1, 2),)
    for k in (0, 6):
        with pytest.raises(ValueError):
            prefix_clause(c, 1, k)


@given(st.integers(3, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_prefix_nesting(data):
    n, j = data
    c = OpCodec(n)
    d = set(c.non_minimality(j))
    if j >= 2:
        assert set(c.prefix_clause(j, n - 2)) < d
    for k in range(1, n - 1):
        assert set(c.prefix_clause(j, k)) < set(c.prefix_clause(j, k + 1))
