# src/reports/scans.py
"""
Exhaustive scans over every sign system on n vertices.

The per-mask kernels work directly on edge bitmasks (see quadgraph) and are
cross-checked against the module-level invariants in the test suite.
"""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from src.graphs.quadgraph import QuadGraph, isolated_witnesses, pair_index, relative_mutate
from src.invariants.clifford import gf2_rank
from src.reports.classification import expected_descriptor
from src.utils.config import get_settings
from src.utils.errors import UnsupportedSize

LOGGER = logging.getLogger(__name__)

MAX_EXAMPLES = 20


# ================= Bitmask kernels =================

def _negative(mask: int, i: int, j: int, k: int) -> bool:
    """Odd number of non-edges on the triangle {i, j, k}."""
    edges = (mask >> pair_index(i, j) & 1) + (mask >> pair_index(j, k) & 1) + (mask >> pair_index(i, k) & 1)
    return edges % 2 == 0


def lines_from_mask(n: int, mask: int) -> int:
    """Pairs {a, b} all of whose triangles are negative."""
    count = 0
    for b in range(n):
        for a in range(b):
            if all(_negative(mask, a, b, s) for s in range(n) if s != a and s != b):
                count += 1
    return count


def descriptor_from_mask(n: int, mask: int) -> int:
    """2^(m - rank B) with base vertex n and m = n - 1."""
    m = n - 1
    base = n - 1
    rows = []
    for i in range(m):
        row = 0
        for j in range(m):
            if i != j and not _negative(mask, base, i, j):
                row |= 1 << j
        rows.append(row)
    return 1 << (m - gf2_rank(rows, m))


# ================= Threshold scan over all sign systems =================

@dataclass
class SignSystemScan:
    n: int
    total: int = 0
    histogram: Dict[Tuple[int, int], int] = field(default_factory=dict)
    violation_count: int = 0
    violation_examples: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "histogram": [
                {"ell": ell, "descriptor": N, "count": count}
                for (ell, N), count in sorted(self.histogram.items())
            ],
            "violations": self.violation_count,
            "violation_examples": self.violation_examples,
        }


def _scan_chunk(args: Tuple[int, int, int]) -> Tuple[Counter, int, List[int]]:
    n, start, stop = args
    histogram: Counter = Counter()
    violations = 0
    examples: List[int] = []
    for mask in range(start, stop):
        ell = lines_from_mask(n, mask)
        N = descriptor_from_mask(n, mask)
        histogram[(ell, N)] += 1
        if expected_descriptor(n, ell) != N:
            violations += 1
            if len(examples) < MAX_EXAMPLES:
                examples.append(mask)
    return histogram, violations, examples


def sign_system_scan(n: int, threads: Optional[int] = None, progress: bool = False) -> SignSystemScan:
    """
    Check the ell -> N bands on all 2^C(n,2) sign systems.

    The mask range is split into chunks; with threads > 1 they run in a process pool.
    """
    if not 1 <= n <= 7:
        raise UnsupportedSize(f"sign-system scan covers 1 <= n <= 7, got {n}")
    threads = threads or get_settings().threads
    total = 1 << (n * (n - 1) // 2)
    num_chunks = max(threads * 4, 1)
    chunk_size = (total + num_chunks - 1) // num_chunks
    chunks = [(n, i, min(i + chunk_size, total)) for i in range(0, total, chunk_size)]

    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            results = list(tqdm(executor.map(_scan_chunk, chunks), total=len(chunks), disable=not progress))
    else:
        results = [_scan_chunk(chunk) for chunk in tqdm(chunks, disable=not progress)]

    report = SignSystemScan(n=n, total=total)
    histogram: Counter = Counter()
    examples: List[int] = []
    for chunk_histogram, violations, chunk_examples in results:
        histogram.update(chunk_histogram)
        report.violation_count += violations
        examples.extend(chunk_examples)
    report.histogram = dict(histogram)
    report.violation_examples = [str(QuadGraph(n, mask)) for mask in sorted(examples)[:MAX_EXAMPLES]]
    LOGGER.info("sign-system scan n=%d: %d systems, %d violations", n, total, report.violation_count)
    return report


# ================= Relative mutation without an isolated vertex =================

@dataclass
class RelativeMutationSurvey:
    """Descriptor changes under relative mutation, split by whether a witness vertex exists."""
    n: int
    with_witness: Dict[str, int] = field(default_factory=lambda: {"preserved": 0, "changed": 0})
    without_witness: Dict[str, int] = field(default_factory=lambda: {"preserved": 0, "changed": 0})
    changed_examples: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "with_isolated_vertex": self.with_witness,
            "without_isolated_vertex": self.without_witness,
            "changed_examples": self.changed_examples,
        }


def relative_mutation_survey(n: int) -> RelativeMutationSurvey:
    """Apply every relative mutation to every graph on n vertices and compare descriptors."""
    if not 3 <= n <= 6:
        raise UnsupportedSize(f"relative-mutation survey covers 3 <= n <= 6, got {n}")
    survey = RelativeMutationSurvey(n=n)
    for mask in range(1 << (n * (n - 1) // 2)):
        g = QuadGraph(n, mask)
        before = descriptor_from_mask(n, mask)
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if j == k:
                    continue
                after = descriptor_from_mask(n, relative_mutate(g, j, k, force=True).mask)
                bucket = survey.with_witness if isolated_witnesses(g, j, k) else survey.without_witness
                key = "preserved" if after == before else "changed"
                bucket[key] += 1
                if key == "changed" and len(survey.changed_examples) < MAX_EXAMPLES:
                    survey.changed_examples.append(f"{g} with j={j}, k={k}: N {before} -> {after}")
    return survey
