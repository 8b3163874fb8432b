# src/invariants/clifford.py
"""
The finite-dimensional algebra C(A_eps): generators t_i (i != base) with
t_i^2 = 1 and t_i t_j + c_ij t_j t_i = 0, c_ij = eps_{b,i} eps_{ij} eps_{j,b}.

It is a twisted group algebra of (Z/2)^m, m = n - 1; its Wedderburn shape is
read off the F2 rank of the anticommutation form B.

Dependencies:
    - numpy (F2 matrix of the form, traces of the regular representation)
    - sympy (DomainMatrix ranks for the center oracle and the trace form)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.algebra.skewpoly import SignSystem
from src.utils.config import get_settings
from src.utils.errors import CapExceeded
from src.utils.helpers import iter_bits

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CliffordPresentation:
    """comm[a][b] for a != b; the diagonal is stored as -1 (t_a commutes with itself)."""
    n: int
    base: int
    generators: Tuple[int, ...]
    comm: Tuple[Tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def dimension(self) -> int:
        return 1 << self.m


@dataclass(frozen=True)
class CliffordStructure:
    m: int
    B: Tuple[Tuple[int, ...], ...]
    rank: int
    components: int
    block: int

    @property
    def descriptor(self) -> int:
        return self.components

    def form(self) -> np.ndarray:
        return np.array(self.B, dtype=np.uint8).reshape(self.m, self.m)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "B": [list(row) for row in self.B],
            "rank_B": self.rank,
            "components": self.components,
            "block": self.block,
            "descriptor": self.descriptor,
        }


@dataclass(frozen=True)
class OracleResult:
    center_dim: int
    radical_zero: bool
    dimension: int


def presentation(eps: SignSystem, base: Optional[int] = None) -> CliffordPresentation:
    """
    Presentation of C(A_eps) relative to a base vertex (default n).

    Args:
        eps: sign system
        base: 1-based base vertex

    Returns:
        CliffordPresentation on the generators V minus {base}
    """
    base = eps.n if base is None else base
    eps.check_index(base)
    b = base - 1
    gens = [v for v in range(eps.n) if v != b]
    e = eps.eps
    comm = tuple(
        tuple(-1 if gi == gj else e[b][gi] * e[gi][gj] * e[gj][b] for gj in gens)
        for gi in gens
    )
    return CliffordPresentation(eps.n, base, tuple(v + 1 for v in gens), comm)


def gf2_rank(rows: List[int], n_cols: int) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    work = rows[:]
    rank = 0
    row_idx = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and (work[r] >> col) & 1:
                work[r] ^= work[row_idx]
        rank += 1
        row_idx += 1
        if row_idx == len(work):
            break
    return rank


def structure_of(pres: CliffordPresentation) -> CliffordStructure:
    m = pres.m
    B = tuple(
        tuple(1 if a != b and pres.comm[a][b] == 1 else 0 for b in range(m))
        for a in range(m)
    )
    rows = [sum(bit << b for b, bit in enumerate(row)) for row in B]
    rank = gf2_rank(rows, m)
    # B is alternating, so its rank is even
    return CliffordStructure(m, B, rank, 1 << (m - rank), 1 << (rank // 2))


def structure(eps: SignSystem, base: Optional[int] = None) -> CliffordStructure:
    """Wedderburn shape k^components x M_block(k) of C(A_eps)."""
    return structure_of(presentation(eps, base))


def descriptor(eps: SignSystem) -> int:
    """N with uCM(A_eps) ≅ D^b(mod k^N)."""
    return structure(eps).components


def min_module_dim(eps: SignSystem) -> int:
    """Dimension of the simple C(A_eps)-modules."""
    return structure(eps).block


# ===== Brute-force oracle =====

def word_sign(pres: CliffordPresentation, a: int, b: int) -> int:
    """t^a t^b = sign * t^(a xor b) on square-free words."""
    sign = 1
    for j in iter_bits(b):
        for i in iter_bits(a >> (j + 1)):
            sign *= -pres.comm[i + j + 1][j]
    return sign


def trace_form(pres: CliffordPresentation) -> DomainMatrix:
    """Gram matrix Tr(L_{t^a t^b}) of the regular representation on the word basis."""
    size = 1 << pres.m
    words = np.arange(size)
    traces = np.zeros(size, dtype=np.int64)
    for c in range(size):
        # L_{t^c} maps t^w to ±t^(c xor w); only fixed words sit on the diagonal
        fixed = np.flatnonzero((words ^ c) == words)
        traces[c] = sum(word_sign(pres, c, int(w)) for w in fixed)
    gram = {}
    for a in range(size):
        for b in np.flatnonzero(traces[words ^ a]):
            b = int(b)
            gram.setdefault(a, {})[b] = QQ(word_sign(pres, a, b) * int(traces[a ^ b]))
    return DomainMatrix(gram, (size, size), QQ)


def center_dim_oracle(pres: CliffordPresentation) -> OracleResult:
    """
    Center dimension from the linear system z t_i = t_i z on the 2^m word
    basis, and semisimplicity from the rank of the trace form.
    """
    m = pres.m
    cap = get_settings().oracle_max_generators
    if m > cap:
        raise CapExceeded(f"center oracle is capped at {cap} generators, got {m}")
    size = 1 << m

    # rows (i, word) collect the coefficient of t^(word) in t_i z - z t_i
    system = {}
    for i in range(m):
        gen = 1 << i
        for a in range(size):
            coefficient = word_sign(pres, gen, a) - word_sign(pres, a, gen)
            if coefficient:
                system.setdefault(i * size + (a ^ gen), {})[a] = QQ(coefficient)
    rank = 0
    if system:
        rank = DomainMatrix(system, (m * size, size), QQ).rank()
    center = size - rank

    radical_zero = trace_form(pres).rank() == size
    LOGGER.debug("center oracle m=%d: center=%d radical_zero=%s", m, center, radical_zero)
    return OracleResult(center, radical_zero, size)
