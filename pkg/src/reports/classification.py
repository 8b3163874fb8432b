# src/reports/classification.py
"""
Classification report per vertex count and the threshold scan that compares
the number of P^1 components with the descriptor N.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from scipy.special import comb

from src.graphs.pointscheme import PointScheme, components
from src.graphs.quadgraph import MutationClass, QuadGraph, ReductionTrace, classify, reduce_to_base
from src.invariants.clifford import CliffordStructure, structure
from src.invariants.rank import RankBounds, high_rank, is_smooth, rank_bounds
from src.utils.config import get_settings
from src.utils.errors import UnsupportedSize

LOGGER = logging.getLogger(__name__)

TOOL_VERSION = "1.0.0"


# ================= Classification =================

@dataclass
class ClassRow:
    class_id: int
    representative: QuadGraph
    size: int
    switching_classes: int
    clifford: CliffordStructure
    point_scheme: PointScheme
    rank: RankBounds
    high_rank: str
    smooth: bool
    trace: Optional[ReductionTrace] = None

    @property
    def descriptor(self) -> int:
        return self.clifford.descriptor

    @property
    def consistent(self) -> bool:
        """The reduction trace, when it terminates, lands on the same descriptor."""
        if self.trace is None or self.trace.stuck:
            return True
        return self.trace.descriptor == self.descriptor

    def to_dict(self) -> dict:
        return {
            "class_id": self.class_id,
            "representative": str(self.representative),
            "size": self.size,
            "switching_classes": self.switching_classes,
            "clifford": self.clifford.to_dict(),
            "descriptor": self.descriptor,
            "point_scheme": self.point_scheme.to_dict(),
            "ell": self.point_scheme.ell,
            "rank": self.rank.to_dict(),
            "high_rank": self.high_rank,
            "smooth": self.smooth,
            "trace": self.trace.to_dict() if self.trace is not None else None,
            "consistent": self.consistent,
        }


@dataclass
class ClassificationReport:
    n: int
    classes: List[ClassRow] = field(default_factory=list)
    version: str = TOOL_VERSION

    @property
    def total_graphs(self) -> int:
        return sum(row.size for row in self.classes)

    @property
    def ok(self) -> bool:
        expected = 1 << (self.n * (self.n - 1) // 2)
        return self.total_graphs == expected and all(row.consistent for row in self.classes)

    def descriptor_groups(self) -> Dict[int, List[int]]:
        groups: Dict[int, List[int]] = {}
        for row in self.classes:
            groups.setdefault(row.descriptor, []).append(row.class_id)
        return groups

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "version": self.version,
            "totals": {"classes": len(self.classes), "graphs": self.total_graphs},
            "classes": [row.to_dict() for row in self.classes],
            "ok": self.ok,
        }


def analyze_graph(g: QuadGraph, class_id: int = 0, size: int = 0, switching_classes: int = 0,
                  trace_budget: Optional[int] = None, with_trace: bool = True) -> ClassRow:
    """All invariants of one graph."""
    eps = g.to_sign_system()
    trace = reduce_to_base(g, trace_budget) if with_trace else None
    return ClassRow(
        class_id=class_id,
        representative=g,
        size=size,
        switching_classes=switching_classes,
        clifford=structure(eps),
        point_scheme=components(eps),
        rank=rank_bounds(eps),
        high_rank=high_rank(eps),
        smooth=is_smooth(eps),
        trace=trace,
    )


def _analyze_class(job) -> ClassRow:
    class_id, mc, budget, with_traces = job
    return analyze_graph(
        mc.representative,
        class_id=class_id,
        size=mc.size,
        switching_classes=mc.switching_classes,
        trace_budget=budget,
        with_trace=with_traces,
    )


def build_classification(n: int, with_traces: bool = True, threads: Optional[int] = None) -> ClassificationReport:
    """Invariants per mutation class; with threads > 1 the classes are analysed in a process pool."""
    settings = get_settings()
    threads = threads or settings.threads
    budget = settings.n7_trace_budget if n >= 7 else settings.search_budget
    mutation_classes: List[MutationClass] = classify(n)
    jobs = [(class_id, mc, budget, with_traces) for class_id, mc in enumerate(mutation_classes, start=1)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(_analyze_class, jobs))
    else:
        rows = [_analyze_class(job) for job in jobs]
    report = ClassificationReport(n=n, classes=rows)
    LOGGER.info("classification n=%d: %d classes (threads=%d)", n, len(report.classes), threads)
    return report


def cmd_classify(n: int, with_traces: bool = True, threads: Optional[int] = None) -> ClassificationReport:
    if not 3 <= n <= 7:
        raise UnsupportedSize(f"classify reports cover 3 <= n <= 7, got {n}")
    return build_classification(n, with_traces=with_traces, threads=threads)


# ================= Threshold scan =================

def expected_descriptor(n: int, ell: int) -> Optional[int]:
    """
    Descriptor predicted from the number of P^1 components.

    odd n:  ell = 0 -> 1, C(2i-1, 2) < ell <= C(2i+1, 2) -> 4^i
    even n: ell <= 1 -> 2, C(2i, 2) < ell <= C(2i+2, 2) -> 2 * 4^i
    """
    if ell < 0:
        return None
    if n % 2:
        if ell == 0:
            return 1
        i = 1
        while True:
            if comb(2 * i - 1, 2, exact=True) < ell <= comb(2 * i + 1, 2, exact=True):
                return 4 ** i
            i += 1
    if ell <= 1:
        return 2
    i = 1
    while True:
        if comb(2 * i, 2, exact=True) < ell <= comb(2 * i + 2, 2, exact=True):
            return 2 * 4 ** i
        i += 1


@dataclass
class ScanRow:
    class_id: int
    representative: QuadGraph
    ell: int
    descriptor: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.descriptor == self.expected

    def to_dict(self) -> dict:
        return {
            "class_id": self.class_id,
            "representative": str(self.representative),
            "ell": self.ell,
            "descriptor": self.descriptor,
            "expected": self.expected,
            "ok": self.ok,
        }


@dataclass
class ConjectureScanReport:
    n: int
    rows: List[ScanRow] = field(default_factory=list)

    @property
    def violations(self) -> List[ScanRow]:
        return [row for row in self.rows if not row.ok]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "classes": len(self.rows),
            "rows": [row.to_dict() for row in self.rows],
            "violations": [row.to_dict() for row in self.violations],
        }


def cmd_conjecture_scan(n: int) -> ConjectureScanReport:
    """(ell, N) per mutation class against the threshold bands."""
    if not 1 <= n <= 7:
        raise UnsupportedSize(f"conjecture-scan covers n <= 7, got {n}")
    report = ConjectureScanReport(n=n)
    for class_id, mc in enumerate(classify(n), start=1):
        eps = mc.representative.to_sign_system()
        ell = components(eps).ell
        report.rows.append(
            ScanRow(class_id, mc.representative, ell, structure(eps).descriptor, expected_descriptor(n, ell))
        )
    LOGGER.info("conjecture scan n=%d: %d violations", n, len(report.violations))
    return report
