# src/ui/tables.py
"""
Plain-text tables for the command line.

Dependencies:
    - pandas (tabular layout)
"""
from __future__ import annotations

from typing import Any, Iterable, List, Optional, Sequence

import pandas as pd

from src.graphs.pointscheme import PointScheme
from src.graphs.quadgraph import ReductionTrace


def fmt_value(value: Any, default: str = "N/A") -> str:
    if value is None:
        return default
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def render_frame(rows: List[dict], columns: Optional[Sequence[str]] = None) -> str:
    if not rows:
        return "(empty)"
    df = pd.DataFrame(rows, columns=columns)
    return df.map(fmt_value).to_string(index=False)


# ===== Reports =====

def render_classification(report) -> str:
    rows = []
    for row in report.classes:
        rows.append({
            "class": row.class_id,
            "representative": ",".join(f"{i}{j}" for i, j in row.representative.edges()) or "-",
            "size": row.size,
            "N": row.descriptor,
            "block": row.clifford.block,
            "ell": row.point_scheme.ell,
            "components": row.point_scheme.dimensions(),
            "rank": f"[{row.rank.lo},{row.rank.hi}]",
            "high rank": row.high_rank,
            "smooth": row.smooth,
            "trace": "-" if row.trace is None else ("Stuck" if row.trace.stuck else row.trace.descriptor),
        })
    header = f"n={report.n}: {len(report.classes)} classes, {report.total_graphs} graphs"
    return header + "\n" + render_frame(rows)


def render_conjecture_scan(report) -> str:
    rows = [
        {"class": r.class_id, "representative": str(r.representative), "ell": r.ell,
         "N": r.descriptor, "expected": r.expected, "ok": r.ok}
        for r in report.rows
    ]
    footer = f"violations: {len(report.violations)}"
    return render_frame(rows) + "\n" + footer


def render_sign_system_scan(report) -> str:
    rows = [
        {"ell": ell, "N": N, "count": count}
        for (ell, N), count in sorted(report.histogram.items())
    ]
    lines = [f"n={report.n}: {report.total} sign systems", render_frame(rows), f"violations: {report.violation_count}"]
    lines.extend(report.violation_examples)
    return "\n".join(lines)


def component_lines(scheme: PointScheme, names: Optional[Sequence[str]] = None) -> List[str]:
    """Lines like 'V(x3,x4) ≅ P^2'."""
    names = names or [f"x{i}" for i in range(1, scheme.n + 1)]
    out = []
    for comp in scheme.components:
        inside = ",".join(names[i - 1] for i in comp)
        out.append(f"V({inside}) ≅ P^{scheme.dimension(comp)}")
    return out


def render_point_scheme(scheme: PointScheme, names: Optional[Sequence[str]] = None) -> str:
    lines = component_lines(scheme, names)
    lines.append(f"P^1 components: {scheme.ell}")
    return "\n".join(lines)


def render_trace(trace: ReductionTrace) -> str:
    rows = [
        {"step": k, "operation": step.operation, "params": step.params, "graph": str(step.graph)}
        for k, step in enumerate(trace.steps, start=1)
    ]
    terminal = "Stuck" if trace.stuck else f"{trace.terminal} (N = {trace.descriptor})"
    return f"start: {trace.start}\n" + render_frame(rows) + f"\nterminal: {terminal}"


def render_series(label: str, values: Iterable[int]) -> str:
    return f"{label}: " + ", ".join(str(int(v)) for v in values)
