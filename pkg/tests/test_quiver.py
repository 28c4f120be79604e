from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import skew_matrices
from cvectors.quiver import (
    FORK345,
    MARKOV,
    Q233,
    ExchangeMatrix,
    FramedSeed,
    SignCoherenceError,
    apply_sequence,
    is_reduced,
    mutate_extended,
    mutate_matrix,
    sign_vector,
    structural_predicates,
    topological_order,
    walk,
)


def test_rejects_non_skew_and_names_entry():
    with pytest.raises(ValueError, match=r"b\[1\]\[2\]"):
        ExchangeMatrix(((0, 1), (2, 0)))
    with pytest.raises(ValueError, match="not zero"):
        ExchangeMatrix(((1, 0), (0, 0)))
    with pytest.raises(ValueError, match="square"):
        ExchangeMatrix(((0, 1, 2), (-1, 0, 0)))


def test_one_step_on_q():
    seed = apply_sequence(Q233, [1])
    assert seed.b.b == ((0, -2, 3), (2, 0, -3), (-3, 3, 0))
    assert seed.c == ((-1, 0, 0), (0, 1, 0), (3, 0, 1))
    assert seed.history == (1,)


def test_empty_sequence_is_identity():
    seed = apply_sequence(MARKOV, [])
    assert seed.b == MARKOV
    assert seed.c == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert sign_vector(seed) == (1, 1, 1)


def test_labels_are_one_based():
    with pytest.raises(IndexError):
        mutate_extended(FramedSeed.initial(Q233), 0)
    with pytest.raises(IndexError):
        mutate_extended(FramedSeed.initial(Q233), 4)


def test_mixed_sign_row_is_reported():
    bad = FramedSeed(Q233, ((1, -1, 0), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(SignCoherenceError):
        sign_vector(bad)


def test_structural_predicates():
    s = structural_predicates(MARKOV)
    assert s.skew and s.abundant and s.complete and not s.acyclic
    acyc = ExchangeMatrix(((0, 1, 1), (-1, 0, 1), (-1, -1, 0)))
    s = structural_predicates(acyc)
    assert s.acyclic and not s.abundant
    assert topological_order(acyc) == (1, 2, 3)
    with pytest.raises(ValueError, match="cycle"):
        topological_order(MARKOV)


def test_weights_are_lexicographic():
    assert Q233.weights() == (2, 3, 3)
    assert FORK345.weights() == (3, 5, 4)


def test_walk_returns_all_prefixes():
    seeds = walk(Q233, [1, 2, 3])
    assert [s.history for s in seeds] == [(), (1,), (1, 2), (1, 2, 3)]


@given(skew_matrices(), st.data())
@settings(max_examples=200, deadline=None)
def test_matches_naive_oracle(b, data):
    n = len(b)
    w = data.draw(st.lists(st.integers(1, n), max_size=5))
    c_ref, b_ref = oracles.c_matrix(b, w)
    seed = apply_sequence(b, w)
    assert [list(r) for r in seed.c] == c_ref
    assert [list(r) for r in seed.b.b] == b_ref


@given(skew_matrices(), st.data())
@settings(max_examples=200, deadline=None)
def test_mutation_is_involutive(b, data):
    n = len(b)
    w = data.draw(st.lists(st.integers(1, n), max_size=4))
    k = data.draw(st.integers(1, n))
    seed = apply_sequence(b, w)
    twice = mutate_extended(mutate_extended(seed, k), k)
    assert twice.b == seed.b and twice.c == seed.c


@given(skew_matrices(), st.data())
@settings(max_examples=100, deadline=None)
def test_unframed_mutation_agrees(b, data):
    k = data.draw(st.integers(1, len(b)))
    assert mutate_matrix(ExchangeMatrix(b), k) == mutate_extended(FramedSeed.initial(b), k).b


@given(skew_matrices(), st.data())
@settings(max_examples=100, deadline=None)
def test_sign_coherence_along_walks(b, data):
    n = len(b)
    w = data.draw(st.lists(st.integers(1, n), max_size=6))
    seed = apply_sequence(b, w)
    assert len(sign_vector(seed)) == n


def test_is_reduced():
    assert is_reduced([1, 2, 1])
    assert not is_reduced([1, 1])
    assert is_reduced([])
