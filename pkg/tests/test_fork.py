from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from cvectors.fork import (
    ForkViolation,
    certify_point_of_return,
    cyclic_signed_ordering,
    find_point_of_return,
    fork_linear_ordering,
    has_vortex,
    is_fork_preserving,
    last_green_vertex,
    random_fork,
    random_fork_preserving_sequence,
    reweight_fork,
)
from cvectors.quiver import FORK345, MARKOV, Q233, ExchangeMatrix, apply_sequence, structural_predicates


def test_example_fork():
    cert = find_point_of_return(FORK345)
    assert cert.point_of_return == 2
    assert cert.inbound == {1} and cert.outbound == {3}
    assert fork_linear_ordering(cert, FORK345) == (2, 1, 3)


def test_markov_and_q_are_not_forks():
    # the arrow j -> i must outweigh both arrows through r; ties fail
    assert find_point_of_return(MARKOV) is None
    assert find_point_of_return(Q233) is None


def test_inequality_uses_arrow_direction():
    # same magnitudes as the fork but the long arrow reversed: the quiver
    # becomes acyclic, hence no fork
    flipped = ExchangeMatrix(((0, 3, 5), (-3, 0, 4), (-5, -4, 0)))
    assert structural_predicates(flipped).acyclic
    assert find_point_of_return(flipped) is None


def test_point_of_return_moves_to_last_mutation():
    for w in ([1], [3], [1, 3], [3, 1, 3, 2]):
        seed = apply_sequence(FORK345, w)
        assert certify_point_of_return(seed.b, w[-1]) is not None


def test_is_fork_preserving_rejections():
    assert is_fork_preserving(FORK345, [1, 3])[0]
    assert not is_fork_preserving(FORK345, [2])[0]
    assert not is_fork_preserving(FORK345, [1, 1])[0]
    with pytest.raises(ValueError):
        is_fork_preserving(MARKOV, [1])


def test_last_green_vertex_example():
    seed = apply_sequence(FORK345, [1])
    cert = certify_point_of_return(seed.b, 1)
    assert last_green_vertex(seed, cert) == 2
    assert cyclic_signed_ordering(seed, cert) == (2, 3, 1)


def test_forks_have_no_vortex():
    for s in range(30):
        assert not has_vortex(random_fork(5, 7, s))


def test_vortex_detected():
    # apex 4 is a source over the oriented triangle 1 -> 2 -> 3 -> 1
    v = ExchangeMatrix(((0, 2, -2, -2), (-2, 0, 2, -2), (2, -2, 0, -2), (2, 2, 2, 0)))
    assert has_vortex(v)


@given(st.integers(3, 6), st.integers(3, 9), st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_random_fork_is_fork(n, mw, seed):
    b = random_fork(n, mw, seed)
    cert = find_point_of_return(b)
    assert cert is not None
    assert cert.inbound and cert.outbound
    assert max(b.weights()) <= mw and min(b.weights()) >= 2


@given(st.integers(3, 5), st.integers(0, 2**32), st.integers(1, 8))
@settings(max_examples=100, deadline=None)
def test_random_sequences_preserve_forks(n, seed, length):
    b = random_fork(n, 6, seed)
    w = random_fork_preserving_sequence(b, length, random.Random(seed))
    ok, why = is_fork_preserving(b, w)
    assert ok, why


@given(st.integers(3, 5), st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_reweight_keeps_signs(n, seed):
    b = random_fork(n, 5, seed)
    twin = reweight_fork(b, 9, seed + 1)
    assert twin.sign_pattern() == b.sign_pattern()
    assert find_point_of_return(twin) is not None


def test_random_fork_is_deterministic():
    assert random_fork(5, 7, 11) == random_fork(5, 7, 11)


def test_random_fork_rejects_small_inputs():
    with pytest.raises(ValueError):
        random_fork(2, 5, 0)
    with pytest.raises(ValueError):
        random_fork(4, 2, 0)


def test_violation_type():
    assert issubclass(ForkViolation, RuntimeError)
