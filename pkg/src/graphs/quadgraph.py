# src/graphs/quadgraph.py
"""
Graph calculus on G_eps: mutation, relative mutation, Knörrer and two-points
reductions, mutation-class enumeration and the reduction engine.

Edges are stored as a bitmask over unordered pairs in colex order
(pair (i, j), i < j, 0-based, has bit j*(j-1)/2 + i), so the graphs whose
last vertex is isolated are exactly the masks below 2^C(n-1, 2).

Dependencies:
    - numpy (vectorised permutation tables, bit kernels)
    - scipy.sparse.csgraph (orbits as connected components)
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from src.algebra.skewpoly import SignSystem
from src.utils.config import get_settings
from src.utils.errors import IndexOutOfRange, MalformedInput, NoIsolatedVertex, UnsupportedSize
from src.utils.helpers import iter_bits, popcount

LOGGER = logging.getLogger(__name__)


# ================= Pair indexing =================

def pair_index(i: int, j: int) -> int:
    """Colex index of the 0-based pair {i, j}."""
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


@lru_cache(maxsize=None)
def pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    """0-based pairs in bit order."""
    return tuple((i, j) for j in range(n) for i in range(j))


@lru_cache(maxsize=None)
def star_mask(n: int, v: int) -> int:
    """All pairs through the 0-based vertex v."""
    mask = 0
    for u in range(n):
        if u != v:
            mask |= 1 << pair_index(u, v)
    return mask


# ================= QuadGraph =================

@dataclass(frozen=True)
class QuadGraph:
    """Graph on vertices 1..n; an edge {i, j} means eps_ij = +1."""
    n: int
    mask: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise MalformedInput(f"vertex count must be >= 0, got {self.n}")
        if self.mask < 0 or self.mask >> (self.n * (self.n - 1) // 2):
            raise MalformedInput(f"edge mask {self.mask} does not fit n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "QuadGraph":
        mask = 0
        for i, j in edges:
            if i == j:
                raise MalformedInput(f"loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexOutOfRange(f"edge ({i},{j}) outside 1..{n}")
            mask |= 1 << pair_index(i - 1, j - 1)
        return cls(n, mask)

    @classmethod
    def from_sign_system(cls, eps: SignSystem) -> "QuadGraph":
        return cls.from_edges(eps.n, eps.edges())

    @classmethod
    def empty(cls, n: int) -> "QuadGraph":
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> "QuadGraph":
        return cls(n, (1 << (n * (n - 1) // 2)) - 1)

    def to_sign_system(self) -> SignSystem:
        return SignSystem.from_edges(self.n, self.edges())

    @cached_property
    def adjacency(self) -> Tuple[int, ...]:
        """Neighbour bitmask per 0-based vertex."""
        adj = [0] * self.n
        for bit in iter_bits(self.mask):
            i, j = pairs(self.n)[bit]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    def edges(self) -> List[Tuple[int, int]]:
        """Sorted 1-based edge list."""
        return sorted((i + 1, j + 1) for i, j in (pairs(self.n)[b] for b in iter_bits(self.mask)))

    def has_edge(self, i: int, j: int) -> bool:
        self.check_vertex(i)
        self.check_vertex(j)
        return i != j and bool(self.mask >> pair_index(i - 1, j - 1) & 1)

    @property
    def edge_count(self) -> int:
        return popcount(self.mask)

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return popcount(self.adjacency[v - 1])

    def neighbours(self, v: int) -> List[int]:
        self.check_vertex(v)
        return [u + 1 for u in iter_bits(self.adjacency[v - 1])]

    def isolated_vertices(self) -> List[int]:
        return [v + 1 for v in range(self.n) if not self.adjacency[v]]

    def check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise IndexOutOfRange(f"vertex {v} outside 1..{self.n}")

    def induced(self, keep: Sequence[int]) -> "QuadGraph":
        """Full subgraph on the 1-based vertices ``keep``, relabelled 1..len(keep) in that order."""
        position = {v: k for k, v in enumerate(keep)}
        edges = [
            (position[i] + 1, position[j] + 1)
            for i, j in self.edges()
            if i in position and j in position
        ]
        return QuadGraph.from_edges(len(keep), edges)

    def relabel(self, perm: Sequence[int]) -> "QuadGraph":
        """Vertex v (1-based) becomes perm[v-1] (1-based)."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise MalformedInput(f"{perm} is not a permutation of 1..{self.n}")
        return QuadGraph.from_edges(self.n, [(perm[i - 1], perm[j - 1]) for i, j in self.edges()])

    def __str__(self):
        return f"n={self.n}; edges=" + ",".join(f"{i}-{j}" for i, j in self.edges())


# ================= The four operations =================

def mutate(g: QuadGraph, v: int) -> QuadGraph:
    """Complement every pair through v, keep the rest."""
    g.check_vertex(v)
    return QuadGraph(g.n, g.mask ^ star_mask(g.n, v - 1))


def isolated_witnesses(g: QuadGraph, j: int, k: int) -> List[int]:
    return [i for i in g.isolated_vertices() if i not in (j, k)]


def relative_mutate(g: QuadGraph, j: int, k: int, force: bool = False) -> QuadGraph:
    """
    XOR the neighbourhood of j with that of k; the pair {j, k} is kept.

    Refuses (NoIsolatedVertex) unless some vertex other than j, k is isolated;
    ``force`` applies the formal operation anyway.
    """
    g.check_vertex(j)
    g.check_vertex(k)
    if j == k:
        raise MalformedInput("relative mutation needs two distinct vertices")
    if not force and not isolated_witnesses(g, j, k):
        raise NoIsolatedVertex(f"no isolated vertex outside {{{j}, {k}}}")
    mask = g.mask
    k_adj = g.adjacency[k - 1]
    for w in iter_bits(k_adj):
        if w not in (j - 1, k - 1):
            mask ^= 1 << pair_index(j - 1, w)
    return QuadGraph(g.n, mask)


def find_isolated_segment(g: QuadGraph) -> Optional[Tuple[int, int]]:
    """First edge (lexicographic) whose endpoints both have degree 1."""
    for i, j in g.edges():
        if g.degree(i) == 1 and g.degree(j) == 1:
            return i, j
    return None


def knorrer_reduce(g: QuadGraph) -> Optional[QuadGraph]:
    """Drop an isolated segment, or None."""
    segment = find_isolated_segment(g)
    if segment is None:
        return None
    keep = [v for v in range(1, g.n + 1) if v not in segment]
    return g.induced(keep)


def two_points_reduce(g: QuadGraph) -> Optional[QuadGraph]:
    """Drop the smallest isolated vertex when at least two are isolated, or None."""
    isolated = g.isolated_vertices()
    if len(isolated) < 2:
        return None
    keep = [v for v in range(1, g.n + 1) if v != isolated[0]]
    return g.induced(keep)


def switch(g: QuadGraph, vertices: Iterable[int]) -> QuadGraph:
    """Mutate at every vertex of the set (Seidel switching)."""
    mask = g.mask
    for v in vertices:
        g.check_vertex(v)
        mask ^= star_mask(g.n, v - 1)
    return QuadGraph(g.n, mask)


def switching_normal_form(g: QuadGraph, v: Optional[int] = None) -> QuadGraph:
    """The graph of the switching class in which v (default n) is isolated."""
    v = g.n if v is None else v
    return switch(g, g.neighbours(v))


# ================= Canonical forms =================

@lru_cache(maxsize=None)
def _permutation_table(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    perms[r] is the r-th permutation of range(n); weights[r, b] is the bit value
    of pair b after applying perms[r].
    """
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    weights = np.zeros((len(perms), len(pairs(n))), dtype=np.int64)
    for b, (i, j) in enumerate(pairs(n)):
        pi, pj = perms[:, i], perms[:, j]
        lo, hi = np.minimum(pi, pj), np.maximum(pi, pj)
        weights[:, b] = np.left_shift(1, hi * (hi - 1) // 2 + lo)
    return perms, weights


def _check_canonical_size(n: int) -> None:
    limit = get_settings().classify_max_vertices
    if n > limit:
        raise UnsupportedSize(f"canonical forms are enumerated for n <= {limit}, got {n}")


def canonical_form(g: QuadGraph) -> QuadGraph:
    """Relabelling of g with the smallest edge mask."""
    if g.n <= 1 or not g.mask:
        return g
    _check_canonical_size(g.n)
    perms, weights = _permutation_table(g.n)
    cols = list(iter_bits(g.mask))
    totals = weights[:, cols].sum(axis=1)
    return QuadGraph(g.n, int(totals.min()))


def canonical_key(g: QuadGraph) -> int:
    """Minimum edge mask over all vertex permutations."""
    return canonical_form(g).mask


def is_isomorphic(g: QuadGraph, h: QuadGraph) -> bool:
    return g.n == h.n and g.edge_count == h.edge_count and canonical_key(g) == canonical_key(h)


def switching_class(g: QuadGraph) -> List[QuadGraph]:
    """All 2^(n-1) graphs switching-equivalent to g (subsets not containing n)."""
    out = []
    for subset in range(1 << max(g.n - 1, 0)):
        out.append(switch(g, [v + 1 for v in iter_bits(subset)]))
    return out


@dataclass(frozen=True)
class MutationClass:
    """Orbit of graphs under mutations and relabelling."""
    n: int
    representative: QuadGraph
    size: int
    switching_classes: int

    @property
    def key(self) -> Tuple[int, int]:
        return self.representative.edge_count, self.representative.mask


def class_representative(g: QuadGraph) -> QuadGraph:
    """Fewest edges first, then smallest canonical mask, over the whole orbit of g."""
    candidates = switching_class(g)
    fewest = min(h.edge_count for h in candidates)
    forms = {canonical_form(h) for h in candidates if h.edge_count == fewest}
    return min(forms, key=lambda h: h.mask)


def class_of(g: QuadGraph) -> Tuple[int, int]:
    """Key identifying the mutation class of g."""
    rep = class_representative(g)
    return rep.edge_count, rep.mask


def are_mutation_equivalent(g: QuadGraph, h: QuadGraph) -> bool:
    return g.n == h.n and class_of(g) == class_of(h)


# ================= Classification =================

def _bit(masks: np.ndarray, b: int) -> np.ndarray:
    return (masks >> b) & 1


def _permute_and_isolate(masks: np.ndarray, n: int, perm: Sequence[int]) -> np.ndarray:
    """
    Relabel every graph by ``perm`` and switch so that the last vertex is
    isolated; returns the resulting masks (all below 2^C(n-1, 2)).
    """
    inverse = [0] * n
    for a, image in enumerate(perm):
        inverse[image] = a
    last = n - 1

    def relabelled(c: int, d: int) -> np.ndarray:
        return _bit(masks, pair_index(inverse[c], inverse[d]))

    side = {x: relabelled(x, last) for x in range(last)}
    out = np.zeros_like(masks)
    for b, (a, c) in enumerate(pairs(last)):
        value = relabelled(a, c) ^ side[a] ^ side[c]
        out |= value << b
    return out


def classify(n: int) -> List[MutationClass]:
    """
    Partition all 2^C(n,2) graphs on n vertices into mutation classes.

    Every switching class has exactly one member with vertex n isolated, so the
    orbits are the connected components of the adjacent-transposition action on
    those 2^C(n-1,2) graphs.
    """
    settings = get_settings()
    if not 1 <= n <= settings.classify_max_vertices:
        raise UnsupportedSize(f"classify supports 1 <= n <= {settings.classify_max_vertices}, got {n}")

    count = 1 << ((n - 1) * (n - 2) // 2)
    masks = np.arange(count, dtype=np.int64)
    rows, cols = [masks], [masks]
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        rows.append(masks)
        cols.append(_permute_and_isolate(masks, n, perm))
    row = np.concatenate(rows)
    col = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(row), dtype=np.int8), (row, col)), shape=(count, count))
    n_components, labels = connected_components(graph, directed=False)

    members = np.bincount(labels, minlength=n_components)
    _, first = np.unique(labels, return_index=True)
    switching_size = 1 << (n - 1)
    classes = []
    for label in range(n_components):
        seed = QuadGraph(n, int(masks[first[label]]))
        classes.append(
            MutationClass(
                n=n,
                representative=class_representative(seed),
                size=int(members[label]) * switching_size,
                switching_classes=int(members[label]),
            )
        )
    classes.sort(key=lambda c: c.key)
    LOGGER.info("classify n=%d: %d classes over %d graphs", n, len(classes), sum(c.size for c in classes))
    return classes


# ================= Reduction engine =================

@dataclass(frozen=True)
class TraceStep:
    operation: str
    params: Dict[str, int]
    graph: QuadGraph
    vertices: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "params": dict(self.params),
            "graph": str(self.graph),
            "vertices": list(self.vertices),
        }


@dataclass
class ReductionTrace:
    """
    ``vertices`` on each step lists the original labels of the current vertices.
    ``terminal`` is None when the search got stuck.
    """
    start: QuadGraph
    steps: List[TraceStep] = field(default_factory=list)
    multiplicity_log2: int = 0
    terminal: Optional[QuadGraph] = None
    base_descriptor: Optional[int] = None

    @property
    def stuck(self) -> bool:
        return self.terminal is None

    @property
    def descriptor(self) -> Optional[int]:
        if self.base_descriptor is None:
            return None
        return (1 << self.multiplicity_log2) * self.base_descriptor

    def to_dict(self) -> dict:
        return {
            "start": str(self.start),
            "steps": [step.to_dict() for step in self.steps],
            "multiplicity_log2": self.multiplicity_log2,
            "terminal": str(self.terminal) if self.terminal is not None else "Stuck",
            "descriptor": self.descriptor,
        }


def base_descriptor(g: QuadGraph) -> Optional[int]:
    """1 for a single vertex, 2 for a single edge, else None."""
    if g.n == 1:
        return 1
    if g.n == 2 and g.edge_count == 1:
        return 2
    return None


def _moves(g: QuadGraph):
    for v in range(1, g.n + 1):
        yield "mutate", {"v": v}, mutate(g, v)
    if not g.isolated_vertices():
        return
    for j in range(1, g.n + 1):
        for k in range(1, g.n + 1):
            if j != k and isolated_witnesses(g, j, k):
                yield "relative_mutate", {"j": j, "k": k}, relative_mutate(g, j, k)


def _reducible(g: QuadGraph) -> bool:
    return (
        base_descriptor(g) is not None
        or len(g.isolated_vertices()) >= 2
        or find_isolated_segment(g) is not None
    )


def _search(g: QuadGraph, budget: int) -> Optional[List[Tuple[str, Dict[str, int], QuadGraph]]]:
    """Breadth-first path of (relative) mutations to a reducible graph."""
    parents: Dict[QuadGraph, Optional[Tuple[QuadGraph, str, Dict[str, int]]]] = {g: None}
    queue = deque([g])
    while queue:
        current = queue.popleft()
        if _reducible(current):
            path = []
            node = current
            while parents[node] is not None:
                prev, op, params = parents[node]
                path.append((op, params, node))
                node = prev
            return list(reversed(path))
        for op, params, nxt in _moves(current):
            if nxt in parents:
                continue
            if len(parents) >= budget:
                LOGGER.debug("search budget %d exhausted at %s", budget, g)
                return None
            parents[nxt] = (current, op, params)
            queue.append(nxt)
    return None


def reduce_to_base(g: QuadGraph, search_budget: Optional[int] = None) -> ReductionTrace:
    """
    Reduce g to a single vertex or a single edge.

    Two-points reductions (each doubling the descriptor) and Knörrer reductions
    are applied greedily; when neither applies, a breadth-first search over
    mutations and admissible relative mutations looks for a graph where one does.
    """
    budget = search_budget if search_budget is not None else get_settings().search_budget
    trace = ReductionTrace(start=g)
    labels = tuple(range(1, g.n + 1))
    current = g
    while True:
        base = base_descriptor(current)
        if base is not None:
            trace.terminal = current
            trace.base_descriptor = base
            return trace
        if current.n == 0:
            return trace

        isolated = current.isolated_vertices()
        if len(isolated) >= 2:
            dropped = isolated[0]
            current = two_points_reduce(current)
            labels = tuple(v for pos, v in enumerate(labels, start=1) if pos != dropped)
            trace.multiplicity_log2 += 1
            trace.steps.append(TraceStep("two_points_reduce", {"removed": dropped}, current, labels))
            continue

        segment = find_isolated_segment(current)
        if segment is not None:
            current = knorrer_reduce(current)
            labels = tuple(v for pos, v in enumerate(labels, start=1) if pos not in segment)
            trace.steps.append(
                TraceStep("knorrer_reduce", {"i": segment[0], "j": segment[1]}, current, labels)
            )
            continue

        path = _search(current, budget)
        if not path:
            LOGGER.info("reduction stuck at %s", current)
            return trace
        for op, params, nxt in path:
            trace.steps.append(TraceStep(op, params, nxt, labels))
        current = path[-1][2]


def permutation_array(n: int) -> np.ndarray:
    """All permutations of range(n) as rows, in itertools order."""
    _check_canonical_size(n)
    return _permutation_table(n)[0]
