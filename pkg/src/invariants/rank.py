# src/invariants/rank.py
"""
Bounds on rank f_eps = min{r : f = u1 v1 + ... + ur vr, ui, vi linear}.

The rank is decided exactly only in the rank-one case; otherwise an interval
[lo, hi] is reported, with hi = min(ceil(n/2), dimension of a simple C(A)-module).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional

from src.algebra.mf import MatrixFactorization
from src.algebra.skewpoly import SQRT_MINUS_ONE, ONE, SignSystem, SkewPoly, f_eps
from src.graphs.pointscheme import all_triangles_negative
from src.invariants.clifford import center_dim_oracle, min_module_dim, presentation

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class RankBounds:
    lo: int
    hi: int

    @property
    def exact(self) -> Optional[int]:
        return self.lo if self.lo == self.hi else None

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "exact": self.exact}


def is_rank_one(eps: SignSystem) -> bool:
    """f_eps factors as a product of two linear forms iff every triangle is negative."""
    return all_triangles_negative(eps)


def rank_bounds(eps: SignSystem) -> RankBounds:
    lo = 1 if is_rank_one(eps) else 2
    hi = min((eps.n + 1) // 2, min_module_dim(eps))
    if hi < lo:
        LOGGER.warning("rank bounds inverted for %s: lo=%d hi=%d", eps.edges(), lo, hi)
    return RankBounds(lo, hi)


def high_rank_threshold(n: int) -> int:
    return (n + 1) // 2


def high_rank(eps: SignSystem) -> str:
    """'yes', 'no' or 'unknown' for rank f >= ceil(n/2)."""
    bounds = rank_bounds(eps)
    threshold = high_rank_threshold(eps.n)
    if bounds.lo >= threshold:
        return "yes"
    if bounds.hi < threshold:
        return "no"
    return "unknown"


def is_smooth(eps: SignSystem) -> bool:
    """C(A_eps) is semisimple: the trace form of its regular representation is nondegenerate."""
    return center_dim_oracle(presentation(eps)).radical_zero


# ===== Witnesses =====

def rank_one_witness(eps: SignSystem) -> Optional[MatrixFactorization]:
    """
    f = (sum a_i x_i)(sum a_i^-1 x_i) with a_1 = 1 and a_j^2 = -eps_1j,
    or None when some triangle is positive.
    """
    if not is_rank_one(eps):
        return None
    alphas = [ONE] + [ONE if eps.eps[0][j] == -1 else SQRT_MINUS_ONE for j in range(1, eps.n)]
    left = SkewPoly.linear(eps, alphas)
    right = SkewPoly.linear(eps, [ONE / a for a in alphas])
    return MatrixFactorization.build(eps, f_eps(eps), [0], [1], [[left]], [[right]])


def example_rank_two_witness() -> MatrixFactorization:
    """[[x, y + iz], [y - iz, -x]] squares to (x^2 + y^2 + z^2) E over k[x, y, z]."""
    ctx = SignSystem.constant(3, 1, names=("x", "y", "z"))
    x, y, z = (SkewPoly.var(ctx, i) for i in (1, 2, 3))
    matrix = [[x, y + z.scale(SQRT_MINUS_ONE)], [y - z.scale(SQRT_MINUS_ONE), -x]]
    return MatrixFactorization.build(ctx, f_eps(ctx), [0, 0], [1, 1], matrix, matrix)


def sign_pattern_factorizations(n: int) -> List[MatrixFactorization]:
    """The 2^(n-1) factorizations (x1 ± x2 ± ... ± xn)^2 = f over k_{-1}[x1..xn]."""
    ctx = SignSystem.constant(n, -1)
    f = f_eps(ctx)
    out = []
    for signs in itertools.product((1, -1), repeat=n - 1):
        form = SkewPoly.linear(ctx, (1,) + signs)
        out.append(MatrixFactorization.build(ctx, f, [0], [1], [[form]], [[form]]))
    return out


def bound_witness(eps: SignSystem) -> Optional[MatrixFactorization]:
    """A factorization attaining an exact rank, when one is known."""
    bounds = rank_bounds(eps)
    if bounds.exact == 1:
        return rank_one_witness(eps)
    if bounds.exact == 2 and eps == SignSystem.constant(3, 1):
        return example_rank_two_witness()
    return None
