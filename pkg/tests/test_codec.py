import json

import pytest

from src.algebra.skewpoly import SignSystem, SkewPoly, theta_sign
from src.data.codec import (
    decode_mf,
    decode_morphism,
    decode_poly,
    decode_sign_system,
    decode_substitution,
    encode_mf,
    encode_morphism,
    encode_poly,
    encode_substitution,
)
from src.data.graph_format import graph_from_json, graph_to_json, load_graph, parse_graph_text
from src.data.report_codec import (
    decode_classification,
    decode_conjecture_scan,
    decode_harness_report,
    decode_hilbert_report,
    decode_relative_mutation_survey,
    decode_sign_system_scan,
    decode_verification_report,
)
from src.algebra.hilbert import hilbert_checks
from src.algebra.mf import identity_morphism, verify
from src.graphs.quadgraph import QuadGraph
from src.invariants.rank import example_rank_two_witness
from src.reports.classification import cmd_classify, cmd_conjecture_scan
from src.reports.harness import run_property_harness
from src.reports.scans import relative_mutation_survey, sign_system_scan
from src.utils.errors import IndexOutOfRange, MalformedInput
from src.utils.helpers import dump_json


def test_sign_system_from_edges():
    eps = decode_sign_system({"n": 3, "edges": [[1, 2]]})
    assert eps == QuadGraph.from_edges(3, [(1, 2)]).to_sign_system()


def test_sign_system_needs_matrix_or_edges():
    with pytest.raises(MalformedInput):
        decode_sign_system({"n": 3})
    with pytest.raises(MalformedInput):
        decode_sign_system({"eps": [[1]]})


def test_poly_round_trip(anticommuting3):
    p = SkewPoly.linear(anticommuting3, ["1/2", "i", 0]) * SkewPoly.var(anticommuting3, 3)
    data = encode_poly(p)
    assert decode_poly(json.loads(json.dumps(data))) == p


def test_poly_terms_are_validated(anticommuting3):
    bad = {"n": 3, "eps": [list(r) for r in anticommuting3.eps], "terms": [{"coeff": "1", "exps": [1, 0]}]}
    with pytest.raises(MalformedInput):
        decode_poly(bad)
    bad["terms"] = [{"coeff": "one", "exps": [1, 0, 0]}]
    with pytest.raises(MalformedInput):
        decode_poly(bad)


def test_mf_round_trip_keeps_names():
    mf = example_rank_two_witness()
    decoded = decode_mf(json.loads(dump_json(encode_mf(mf))))
    assert decoded == mf
    assert decoded.ctx.variable_names() == ("x", "y", "z")


def test_morphism_and_substitution_round_trip(linear_sum_mf):
    mu = identity_morphism(linear_sum_mf)
    assert decode_morphism(encode_morphism(mu)) == mu
    theta = theta_sign(linear_sum_mf.ctx, [1])
    assert decode_substitution(encode_substitution(theta)) == theta


def test_mf_missing_field(linear_sum_mf):
    data = encode_mf(linear_sum_mf)
    del data["Phi1"]
    with pytest.raises(MalformedInput):
        decode_mf(data)


def test_mf_rank_must_match_shifts(linear_sum_mf):
    data = encode_mf(linear_sum_mf)
    data["r"] = 2
    with pytest.raises(MalformedInput):
        decode_mf(data)


def test_emission_is_deterministic(linear_sum_mf):
    assert dump_json(encode_mf(linear_sum_mf)) == dump_json(encode_mf(decode_mf(encode_mf(linear_sum_mf))))


# ===== graphs =====

def test_parse_graph_text():
    g = parse_graph_text("n=6; edges=1-2,2-3,3-4")
    assert g == QuadGraph.from_edges(6, [(1, 2), (2, 3), (3, 4)])
    assert parse_graph_text("n=3") == QuadGraph(3, 0)
    assert parse_graph_text(" n = 4 ; edges = 1-2 , 3-4 ;") == QuadGraph.from_edges(4, [(1, 2), (3, 4)])


@pytest.mark.parametrize("text", ["edges=1-2", "n=3; edges=1-2-3", "n=x", "n=3; edges=a-b"])
def test_parse_graph_text_rejects(text):
    with pytest.raises(MalformedInput):
        parse_graph_text(text)


def test_parse_graph_text_out_of_range():
    with pytest.raises(IndexOutOfRange):
        parse_graph_text("n=3; edges=1-5")


def test_graph_json_and_files(tmp_path):
    g = QuadGraph.from_edges(5, [(1, 2), (4, 5)])
    data = graph_to_json(g)
    assert data == {"n": 5, "edges": [[1, 2], [4, 5]]}
    assert graph_from_json(data) == g
    assert load_graph(json.dumps(data)) == g
    path = tmp_path / "graph.txt"
    path.write_text(str(g), encoding="utf-8")
    assert load_graph(str(path)) == g
    with pytest.raises(MalformedInput):
        load_graph(str(tmp_path / "missing.txt"))
    with pytest.raises(MalformedInput):
        graph_from_json({"edges": []})


def test_sign_system_equality_ignores_names():
    assert SignSystem.constant(2, 1, names=("u", "v")) == SignSystem.constant(2, 1)


# ===== report round trips =====

def _reencode(report):
    return json.loads(dump_json(report.to_dict()))


def test_classification_round_trip():
    report = cmd_classify(4)
    decoded = decode_classification(_reencode(report))
    assert decoded == report
    assert decoded.to_dict() == report.to_dict()


def test_conjecture_scan_round_trip():
    report = cmd_conjecture_scan(5)
    assert decode_conjecture_scan(_reencode(report)) == report


def test_sign_system_scan_round_trip():
    report = sign_system_scan(4, threads=1)
    decoded = decode_sign_system_scan(_reencode(report))
    assert decoded == report
    assert sum(decoded.histogram.values()) == decoded.total


def test_survey_and_harness_round_trip(seed):
    survey = relative_mutation_survey(4)
    assert decode_relative_mutation_survey(_reencode(survey)) == survey
    harness = run_property_harness(seed, 2)
    assert decode_harness_report(_reencode(harness)) == harness


def test_hilbert_report_round_trip():
    report = hilbert_checks(3, 5)
    assert decode_hilbert_report(_reencode(report)) == report


def test_verification_report_round_trip(broken_mf):
    report = verify(broken_mf)
    assert report.residuals
    assert decode_verification_report(_reencode(report), broken_mf.ctx) == report
    with pytest.raises(MalformedInput):
        decode_verification_report(_reencode(report))


def test_report_decoders_reject_missing_fields():
    data = _reencode(cmd_conjecture_scan(4))
    del data["rows"][0]["ell"]
    with pytest.raises(MalformedInput):
        decode_conjecture_scan(data)
    with pytest.raises(MalformedInput):
        decode_classification({"n": 3, "version": "x", "classes": "none"})
