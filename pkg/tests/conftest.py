"""
Shared fixtures: the representative graphs of the classification tables and
small matrix factorizations used across the suites.
"""
import itertools

import pytest

from src.algebra.mf import MatrixFactorization
from src.algebra.skewpoly import SignSystem, SkewPoly, f_eps
from src.graphs.quadgraph import QuadGraph
from src.utils.config import get_settings

# (edges, ell, N) per representative, in table order
TABLE_N4 = [
    ([], 6, 8),
    ([(1, 2)], 1, 2),
    ([(1, 2), (3, 4)], 0, 2),
]

TABLE_N5 = [
    ([], 10, 16),
    ([(1, 2), (2, 3)], 2, 4),
    ([(1, 2), (2, 3), (3, 4)], 0, 1),
    ([(1, 2)], 3, 4),
    ([(1, 2), (3, 4)], 0, 1),
    ([(1, 2), (2, 3), (4, 5)], 1, 4),
    ([(1, 2), (2, 3), (1, 3), (4, 5)], 0, 1),
]

TABLE_N6 = [
    ([], 15, 32),
    ([(1, 2), (2, 3)], 4, 8),
    ([(1, 2), (2, 3), (1, 3)], 3, 8),
    ([(1, 2), (2, 3), (3, 4)], 1, 2),
    ([(1, 2), (2, 3), (3, 4), (1, 4)], 3, 8),
    ([(1, 2), (2, 3), (3, 4), (4, 5)], 0, 2),
    ([(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)], 0, 2),
    ([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6)], 1, 2),
    ([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)], 0, 2),
    ([(1, 2)], 6, 8),
    ([(1, 2), (3, 4)], 1, 2),
    ([(1, 2), (2, 3), (4, 5)], 1, 2),
    ([(1, 2), (3, 4), (5, 6)], 0, 2),
    ([(1, 2), (2, 3), (1, 3), (4, 5)], 0, 2),
    ([(1, 2), (2, 3), (3, 4), (5, 6)], 0, 2),
    ([(1, 2), (2, 3), (3, 4), (1, 4), (5, 6)], 2, 8),
]

TABLES = {4: TABLE_N4, 5: TABLE_N5, 6: TABLE_N6}

# Point scheme components per representative, same order as the tables; each
# entry is the vanishing set S of V(x_s : s in S), () for the whole space.
COMPONENTS_N4 = [
    list(itertools.combinations(range(1, 5), 2)),
    [(1, 2), (3,), (4,)],
    [()],
]

COMPONENTS_N5 = [
    list(itertools.combinations(range(1, 6), 3)),
    [(1, 4), (1, 5), (3, 4), (3, 5), (1, 2, 3), (2, 4, 5)],
    [(1, 2), (2, 5), (3, 5), (3, 4), (1, 4)],
    [(3, 4), (3, 5), (4, 5), (1, 2, 3), (1, 2, 4), (1, 2, 5)],
    [(5,), (1, 2), (3, 4)],
    [(1,), (3,), (2, 4, 5)],
    [()],
]

COMPONENTS_N6 = [
    list(itertools.combinations(range(1, 7), 4)),
    [(1, 4, 5), (1, 4, 6), (1, 5, 6), (3, 4, 5), (3, 4, 6), (3, 5, 6),
     (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 3, 6), (2, 4, 5, 6)],
    [(4, 5), (4, 6), (5, 6), (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 3, 6)],
    [(1, 2, 5), (1, 2, 6), (1, 4, 5), (1, 4, 6), (2, 5, 6), (3, 5, 6),
     (3, 4, 5), (3, 4, 6), (1, 2, 3, 4)],
    [(1, 2, 5), (1, 2, 6), (1, 4, 5), (1, 4, 6), (2, 3, 5), (2, 3, 6),
     (3, 4, 5), (3, 4, 6), (1, 2, 3, 4), (1, 3, 5, 6), (2, 4, 5, 6)],
    [(3, 6), (1, 2, 3), (1, 2, 5), (1, 4, 5), (1, 4, 6), (2, 5, 6), (3, 4, 5)],
    [(1, 2, 3), (1, 2, 5), (1, 3, 6), (1, 4, 5), (1, 4, 6), (2, 3, 4), (2, 4, 6),
     (2, 5, 6), (3, 4, 5), (3, 5, 6)],
    [(4,), (6,), (1, 2, 3, 5)],
    [()],
    [(3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6), (1, 2, 3, 4), (1, 2, 3, 5),
     (1, 2, 3, 6), (1, 2, 4, 5), (1, 2, 4, 6), (1, 2, 5, 6)],
    [(5, 6), (1, 2, 5), (1, 2, 6), (3, 4, 5), (3, 4, 6), (1, 2, 3, 4)],
    [(1, 6), (3, 6), (1, 2, 3), (1, 4, 5), (3, 4, 5), (2, 4, 5, 6)],
    [(1, 2), (3, 4), (5, 6)],
    [(6,), (4, 5), (1, 2, 3)],
    [(1, 2), (1, 4), (3, 4), (2, 5, 6), (3, 5, 6)],
    [(1, 2), (1, 4), (2, 3), (3, 4), (1, 3, 5, 6), (2, 4, 5, 6)],
]

COMPONENTS = {4: COMPONENTS_N4, 5: COMPONENTS_N5, 6: COMPONENTS_N6}

SIX_CYCLE_EDGES = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]


def table_graphs(n):
    return [(QuadGraph.from_edges(n, edges), ell, N) for edges, ell, N in TABLES[n]]


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached per process; env overrides set in a test need a clean cache."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def seed():
    return 20240611


@pytest.fixture
def six_cycle():
    """Six-cycle plus an isolated seventh vertex."""
    return QuadGraph.from_edges(7, SIX_CYCLE_EDGES)


@pytest.fixture
def anticommuting3():
    """k_{-1}[x1, x2, x3]"""
    return SignSystem.constant(3, -1)


@pytest.fixture
def linear_sum_mf(anticommuting3):
    """(x1 + x2 + x3)^2 = f over k_{-1}[x1, x2, x3]."""
    ctx = anticommuting3
    form = SkewPoly.linear(ctx, [1, 1, 1])
    return MatrixFactorization.build(ctx, f_eps(ctx), [0], [1], [[form]], [[form]])


@pytest.fixture
def broken_mf(anticommuting3):
    """(x1 + x2)^2 misses x3^2."""
    ctx = anticommuting3
    form = SkewPoly.linear(ctx, [1, 1, 0])
    return MatrixFactorization.build(ctx, f_eps(ctx), [0], [1], [[form]], [[form]])
