# src/data/report_codec.py
"""
Decoders for the JSON emitted by the report types' ``to_dict``.

Each ``decode_*`` inverts one ``to_dict``; graphs travel in their text form
and derived fields (``ok``, ``descriptor``, totals) are recomputed, not read.
"""
from typing import Any, List, Optional

from src.algebra.hilbert import HilbertReport
from src.algebra.mf import VerificationReport
from src.algebra.skewpoly import SignSystem
from src.data.codec import _require, decode_terms
from src.data.graph_format import parse_graph_text
from src.graphs.pointscheme import PointScheme
from src.graphs.quadgraph import ReductionTrace, TraceStep
from src.invariants.clifford import CliffordStructure
from src.invariants.rank import RankBounds
from src.reports.classification import ClassificationReport, ClassRow, ConjectureScanReport, ScanRow
from src.reports.harness import HarnessReport
from src.reports.scans import RelativeMutationSurvey, SignSystemScan
from src.utils.errors import MalformedInput, SkewQuadricError


def _list(obj: Any, key: str) -> List[Any]:
    value = _require(obj, key)
    if not isinstance(value, list):
        raise MalformedInput(f"field {key!r} must be a list")
    return value


def _int(obj: Any, key: str) -> int:
    try:
        return int(_require(obj, key))
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"field {key!r} must be an integer") from e


# ================= Invariants =================

def decode_rank_bounds(obj: Any) -> RankBounds:
    return RankBounds(_int(obj, "lo"), _int(obj, "hi"))


def decode_clifford_structure(obj: Any) -> CliffordStructure:
    B = tuple(tuple(int(b) for b in row) for row in _list(obj, "B"))
    return CliffordStructure(
        m=_int(obj, "m"),
        B=B,
        rank=_int(obj, "rank_B"),
        components=_int(obj, "components"),
        block=_int(obj, "block"),
    )


def decode_point_scheme(obj: Any) -> PointScheme:
    triangles = tuple(tuple(int(v) for v in t) for t in _list(obj, "negative_triangles"))
    comps = tuple(tuple(int(v) for v in _list(c, "vanishing")) for c in _list(obj, "components"))
    return PointScheme(_int(obj, "n"), triangles, comps, _int(obj, "ell"))


# ================= Reduction traces =================

def decode_trace_step(obj: Any) -> TraceStep:
    params = _require(obj, "params")
    if not isinstance(params, dict):
        raise MalformedInput("trace step params must be an object")
    return TraceStep(
        operation=str(_require(obj, "operation")),
        params={str(k): int(v) for k, v in params.items()},
        graph=parse_graph_text(str(_require(obj, "graph"))),
        vertices=tuple(int(v) for v in _list(obj, "vertices")),
    )


def decode_trace(obj: Any) -> ReductionTrace:
    terminal_text = _require(obj, "terminal")
    terminal = None if terminal_text == "Stuck" else parse_graph_text(str(terminal_text))
    k = _int(obj, "multiplicity_log2")
    descriptor = _require(obj, "descriptor")
    return ReductionTrace(
        start=parse_graph_text(str(_require(obj, "start"))),
        steps=[decode_trace_step(step) for step in _list(obj, "steps")],
        multiplicity_log2=k,
        terminal=terminal,
        base_descriptor=None if descriptor is None else int(descriptor) >> k,
    )


# ================= Classification and scans =================

def decode_class_row(obj: Any) -> ClassRow:
    trace = _require(obj, "trace")
    return ClassRow(
        class_id=_int(obj, "class_id"),
        representative=parse_graph_text(str(_require(obj, "representative"))),
        size=_int(obj, "size"),
        switching_classes=_int(obj, "switching_classes"),
        clifford=decode_clifford_structure(_require(obj, "clifford")),
        point_scheme=decode_point_scheme(_require(obj, "point_scheme")),
        rank=decode_rank_bounds(_require(obj, "rank")),
        high_rank=str(_require(obj, "high_rank")),
        smooth=bool(_require(obj, "smooth")),
        trace=None if trace is None else decode_trace(trace),
    )


def decode_classification(obj: Any) -> ClassificationReport:
    return ClassificationReport(
        n=_int(obj, "n"),
        classes=[decode_class_row(row) for row in _list(obj, "classes")],
        version=str(_require(obj, "version")),
    )


def decode_scan_row(obj: Any) -> ScanRow:
    return ScanRow(
        class_id=_int(obj, "class_id"),
        representative=parse_graph_text(str(_require(obj, "representative"))),
        ell=_int(obj, "ell"),
        descriptor=_int(obj, "descriptor"),
        expected=_int(obj, "expected"),
    )


def decode_conjecture_scan(obj: Any) -> ConjectureScanReport:
    return ConjectureScanReport(n=_int(obj, "n"), rows=[decode_scan_row(row) for row in _list(obj, "rows")])


def decode_sign_system_scan(obj: Any) -> SignSystemScan:
    histogram = {
        (_int(entry, "ell"), _int(entry, "descriptor")): _int(entry, "count")
        for entry in _list(obj, "histogram")
    }
    return SignSystemScan(
        n=_int(obj, "n"),
        total=_int(obj, "total"),
        histogram=histogram,
        violation_count=_int(obj, "violations"),
        violation_examples=[str(x) for x in _list(obj, "violation_examples")],
    )


def decode_relative_mutation_survey(obj: Any) -> RelativeMutationSurvey:
    def counts(key: str) -> dict:
        raw = _require(obj, key)
        return {"preserved": _int(raw, "preserved"), "changed": _int(raw, "changed")}

    return RelativeMutationSurvey(
        n=_int(obj, "n"),
        with_witness=counts("with_isolated_vertex"),
        without_witness=counts("without_isolated_vertex"),
        changed_examples=[str(x) for x in _list(obj, "changed_examples")],
    )


# ================= Checks =================

def decode_harness_report(obj: Any) -> HarnessReport:
    return HarnessReport(
        seed=_int(obj, "seed"),
        cases=_int(obj, "cases"),
        checks=_int(obj, "checks"),
        failures=[str(x) for x in _list(obj, "failures")],
    )


def decode_hilbert_report(obj: Any) -> HilbertReport:
    series = _require(obj, "series")
    if not isinstance(series, dict):
        raise MalformedInput("field 'series' must be an object")
    return HilbertReport(
        n=_int(obj, "n"),
        max_degree=_int(obj, "max_degree"),
        series={str(k): [int(c) for c in v] for k, v in series.items()},
        failures=[str(x) for x in _list(obj, "failures")],
    )


def decode_verification_report(obj: Any, ctx: Optional[SignSystem] = None) -> VerificationReport:
    """Residual polynomials live in the factorization's sign system ``ctx``."""
    residuals = []
    for entry in _list(obj, "residuals"):
        if ctx is None:
            raise MalformedInput("decoding residuals needs the factorization's sign system")
        try:
            residual = decode_terms(ctx, _list(entry, "terms"))
        except SkewQuadricError:
            raise
        except (TypeError, ValueError) as e:
            raise MalformedInput(f"invalid residual {entry!r}: {e}") from e
        residuals.append((str(_require(entry, "product")), _int(entry, "row") - 1, _int(entry, "col") - 1, residual))
    return VerificationReport(
        homogeneity=[str(x) for x in _list(obj, "homogeneity")],
        residuals=residuals,
        f_issues=[str(x) for x in _list(obj, "f_issues")],
    )
