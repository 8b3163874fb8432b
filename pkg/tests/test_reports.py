import numpy as np
import pytest

from conftest import TABLES, table_graphs
from src.graphs.pointscheme import count_lines
from src.graphs.quadgraph import QuadGraph, class_of
from src.invariants.clifford import descriptor
from src.reports.classification import cmd_classify, cmd_conjecture_scan, expected_descriptor
from src.reports.harness import random_mf, run_property_harness
from src.reports.scans import (
    descriptor_from_mask,
    lines_from_mask,
    relative_mutation_survey,
    sign_system_scan,
)
from src.ui.tables import component_lines, render_classification, render_conjecture_scan, render_sign_system_scan
from src.graphs.pointscheme import components
from src.utils.errors import UnsupportedSize


# ===== classification =====

@pytest.mark.parametrize("n", [4, 5, 6])
def test_classification_matches_tables(n):
    report = cmd_classify(n, with_traces=(n < 6))
    assert len(report.classes) == len(TABLES[n])
    assert report.ok
    rows = {class_of(row.representative): row for row in report.classes}
    for g, ell, N in table_graphs(n):
        row = rows[class_of(g)]
        assert row.descriptor == N, str(g)
        assert row.point_scheme.ell == ell, str(g)


def test_five_vertex_descriptor_groups():
    report = cmd_classify(5)
    groups = report.descriptor_groups()
    assert sorted(len(ids) for ids in groups.values()) == [1, 3, 3]
    assert sorted(groups) == [1, 4, 16]


def test_three_vertex_classes():
    report = cmd_classify(3)
    descriptors = {row.representative.edge_count: row.descriptor for row in report.classes}
    assert descriptors == {0: 4, 1: 1}
    assert report.total_graphs == 8


def test_classification_report_is_serialisable():
    data = cmd_classify(4).to_dict()
    assert data["totals"] == {"classes": 3, "graphs": 64}
    assert data["ok"] is True
    assert [c["class_id"] for c in data["classes"]] == [1, 2, 3]


def test_classify_in_process_pool_matches_serial():
    serial = cmd_classify(5, threads=1)
    pooled = cmd_classify(5, threads=2)
    assert pooled == serial
    assert [row.class_id for row in pooled.classes] == list(range(1, len(serial.classes) + 1))


def test_classify_range():
    with pytest.raises(UnsupportedSize):
        cmd_classify(2)
    with pytest.raises(UnsupportedSize):
        cmd_classify(8)


def test_render_classification():
    text = render_classification(cmd_classify(4))
    assert text.splitlines()[0] == "n=4: 3 classes, 64 graphs"
    assert "representative" in text


# ===== threshold bands =====

@pytest.mark.parametrize("n, ell, N", [
    (4, 6, 8), (4, 1, 2), (4, 0, 2),
    (5, 10, 16), (5, 3, 4), (5, 1, 4), (5, 0, 1),
    (6, 15, 32), (6, 2, 8), (6, 6, 8), (6, 1, 2),
    (7, 0, 1), (7, 3, 4), (7, 4, 16), (7, 21, 64),
])
def test_expected_descriptor(n, ell, N):
    assert expected_descriptor(n, ell) == N


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_conjecture_scan_has_no_violations(n):
    report = cmd_conjecture_scan(n)
    assert report.violations == []
    assert "violations: 0" in render_conjecture_scan(report)


@pytest.mark.slow
def test_seven_vertex_scan_flags_six_cycle(six_cycle):
    report = cmd_conjecture_scan(7)
    flagged = {class_of(row.representative) for row in report.violations}
    assert class_of(six_cycle) in flagged


def test_six_cycle_breaks_the_band(six_cycle):
    eps = six_cycle.to_sign_system()
    assert components(eps).ell == 0
    assert descriptor(eps) == 4
    assert expected_descriptor(7, 0) != 4


# ===== exhaustive kernels =====

@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_mask_kernels_agree_with_invariants(n):
    for mask in range(1 << (n * (n - 1) // 2)):
        eps = QuadGraph(n, mask).to_sign_system()
        assert lines_from_mask(n, mask) == count_lines(eps)
        assert descriptor_from_mask(n, mask) == descriptor(eps)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_sign_system_scan(n):
    scan = sign_system_scan(n, threads=1)
    assert scan.ok
    assert scan.total == 2 ** (n * (n - 1) // 2)
    assert sum(scan.histogram.values()) == scan.total


def test_sign_system_scan_in_process_pool():
    single = sign_system_scan(4, threads=1)
    pooled = sign_system_scan(4, threads=2)
    assert pooled.histogram == single.histogram
    assert "violations: 0" in render_sign_system_scan(pooled)


@pytest.mark.slow
def test_sign_system_scan_six_vertices():
    assert sign_system_scan(6, threads=2).ok


def test_sign_system_scan_range():
    with pytest.raises(UnsupportedSize):
        sign_system_scan(8)


def test_relative_mutation_survey():
    survey = relative_mutation_survey(4)
    assert survey.with_witness["changed"] == 0
    assert survey.with_witness["preserved"] > 0
    assert sum(survey.without_witness.values()) > 0


# ===== harness =====

def test_property_harness(seed):
    report = run_property_harness(seed, cases=8)
    assert report.ok, report.failures
    assert report.checks > 8


def test_random_factorizations_cover_rank_three(seed):
    rng = np.random.default_rng(seed)
    shapes = {(mf.ctx.n, mf.r) for mf in (random_mf(rng) for _ in range(200))}
    assert all(1 <= n <= 4 and 1 <= r <= 3 for n, r in shapes)
    assert max(r for _, r in shapes) == 3
    assert max(n for n, _ in shapes) == 4


@pytest.mark.slow
def test_property_harness_large_corpus(seed):
    report = run_property_harness(seed + 1, cases=100)
    assert report.ok, report.failures


def test_component_lines():
    eps = QuadGraph.from_edges(4, [(1, 2)]).to_sign_system()
    assert component_lines(components(eps)) == ["V(x3) ≅ P^2", "V(x4) ≅ P^2", "V(x1,x2) ≅ P^1"]
