import pytest

from src.algebra.mf import verify
from src.algebra.skewpoly import SignSystem
from src.graphs.quadgraph import QuadGraph
from src.invariants.rank import (
    bound_witness,
    high_rank,
    high_rank_threshold,
    is_rank_one,
    is_smooth,
    rank_bounds,
    rank_one_witness,
)


def test_anticommuting_quadric_has_rank_one():
    bounds = rank_bounds(SignSystem.constant(3, -1))
    assert (bounds.lo, bounds.hi, bounds.exact) == (1, 1, 1)


def test_commutative_three_space_has_rank_two():
    eps = SignSystem.constant(3, 1)
    bounds = rank_bounds(eps)
    assert bounds.exact == 2
    assert high_rank(eps) == "yes"
    assert verify(bound_witness(eps)).ok


def test_interval_when_undecided():
    eps = SignSystem.constant(6, 1)
    bounds = rank_bounds(eps)
    assert (bounds.lo, bounds.hi) == (2, 3)
    assert bounds.exact is None
    assert high_rank(eps) == "unknown"
    assert bound_witness(eps) is None


def test_high_rank_no():
    eps = QuadGraph.from_edges(5, [(1, 2)]).to_sign_system()
    assert rank_bounds(eps).hi == 2
    assert high_rank_threshold(5) == 3
    assert high_rank(eps) == "no"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rank_one_witness_exists_exactly_when_all_triangles_negative(n):
    for mask in range(1 << (n * (n - 1) // 2)):
        eps = QuadGraph(n, mask).to_sign_system()
        witness = rank_one_witness(eps)
        assert (witness is not None) == is_rank_one(eps)
        if witness is not None:
            assert verify(witness).ok


def test_bounds_are_ordered():
    for mask in range(1 << 10):
        bounds = rank_bounds(QuadGraph(5, mask).to_sign_system())
        assert 1 <= bounds.lo <= bounds.hi


def test_smoothness():
    assert is_smooth(SignSystem.constant(4, 1))
    assert is_smooth(SignSystem.constant(4, -1))
