# src/graphs/pointscheme.py
"""
Point scheme of A_eps as a union of coordinate subspaces.

The negative triangles {i, j, k} (eps_ij eps_jk eps_ki = -1) each cut out
V(xi) ∪ V(xj) ∪ V(xk); the irreducible components are V(x_s : s in S) for
the inclusion-minimal transversals S of that hypergraph.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.algebra.skewpoly import SignSystem
from src.graphs.quadgraph import permutation_array
from src.utils.config import get_settings
from src.utils.errors import CapExceeded
from src.utils.helpers import bits_to_mask, iter_bits

LOGGER = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class PointScheme:
    """Components are 1-based index sets S, each V(x_s : s in S) ≅ P^(n-1-|S|)."""
    n: int
    neg_triangles: Tuple[Triple, ...]
    components: Tuple[Tuple[int, ...], ...]
    ell: int

    def dimension(self, component: Tuple[int, ...]) -> int:
        return self.n - 1 - len(component)

    def dimensions(self) -> Tuple[int, ...]:
        return tuple(sorted(self.dimension(c) for c in self.components))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "negative_triangles": [list(t) for t in self.neg_triangles],
            "components": [
                {"vanishing": list(c), "dimension": self.dimension(c)} for c in self.components
            ],
            "ell": self.ell,
        }


def negative_triangles(eps: SignSystem) -> List[Triple]:
    """All {i, j, k} (1-based, sorted) whose sign product is -1."""
    e = eps.eps
    return [
        (i + 1, j + 1, k + 1)
        for i, j, k in itertools.combinations(range(eps.n), 3)
        if e[i][j] * e[j][k] * e[k][i] == -1
    ]


def all_triangles_negative(eps: SignSystem) -> bool:
    return len(negative_triangles(eps)) == eps.n * (eps.n - 1) * (eps.n - 2) // 6


def _minimal_transversals(n: int, edges: List[int]) -> List[int]:
    """Inclusion-minimal vertex sets (bitmasks) meeting every hyperedge."""
    found: List[int] = []
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = bits_to_mask(combo)
            if any(found_mask & mask == found_mask for found_mask in found):
                continue
            if all(edge & mask for edge in edges):
                found.append(mask)
    return found


def components(eps: SignSystem) -> PointScheme:
    """
    Irreducible components of the point scheme.

    Args:
        eps: sign system with n at most the configured cap

    Returns:
        PointScheme with components ordered by size, then lexicographically
    """
    cap = get_settings().pointscheme_max_vertices
    if eps.n > cap:
        raise CapExceeded(f"point scheme enumeration is capped at n={cap}, got {eps.n}")
    triangles = negative_triangles(eps)
    edges = [bits_to_mask(v - 1 for v in t) for t in triangles]
    minimal = _minimal_transversals(eps.n, edges)
    comps = sorted(
        (tuple(v + 1 for v in iter_bits(mask)) for mask in minimal),
        key=lambda c: (len(c), c),
    )
    ell = sum(1 for c in comps if len(c) == eps.n - 2)
    LOGGER.debug("point scheme n=%d: %d negative triangles, %d components", eps.n, len(triangles), len(comps))
    return PointScheme(eps.n, tuple(triangles), tuple(comps), ell)


def count_lines(eps: SignSystem) -> int:
    """
    Number of P^1 components: pairs {a, b} such that every triangle {a, b, s}
    is negative (the complement of such a pair is a minimal transversal).
    """
    e = eps.eps
    count = 0
    for a, b in itertools.combinations(range(eps.n), 2):
        if all(e[a][b] * e[b][s] * e[s][a] == -1 for s in range(eps.n) if s not in (a, b)):
            count += 1
    return count


def invariant(eps: SignSystem) -> Tuple[int, Tuple[int, ...], Tuple[int, ...]]:
    """
    Canonical key of the component hypergraph up to coordinate permutation:
    (n, smallest sorted tuple of relabelled component masks, dimension multiset).
    """
    scheme = components(eps)
    masks = [bits_to_mask(v - 1 for v in c) for c in scheme.components]
    if eps.n <= 1 or not any(masks):
        return eps.n, tuple(sorted(masks)), scheme.dimensions()
    perms = permutation_array(eps.n)
    images = np.zeros((len(perms), len(masks)), dtype=np.int64)
    for col, mask in enumerate(masks):
        for v in iter_bits(mask):
            images[:, col] |= np.left_shift(1, perms[:, v])
    images.sort(axis=1)
    best = np.lexsort(images.T[::-1])[0]
    return eps.n, tuple(int(x) for x in images[best]), scheme.dimensions()
