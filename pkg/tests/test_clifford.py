import pytest

from conftest import table_graphs
from src.algebra.skewpoly import SignSystem
from src.graphs.quadgraph import QuadGraph
from src.invariants.clifford import (
    center_dim_oracle,
    descriptor,
    gf2_rank,
    min_module_dim,
    presentation,
    structure,
    trace_form,
    word_sign,
)
from src.utils.errors import CapExceeded, IndexOutOfRange


def test_gf2_rank():
    assert gf2_rank([0b01, 0b10], 2) == 2
    assert gf2_rank([0b11, 0b11], 2) == 1
    assert gf2_rank([0b011, 0b110, 0b101], 3) == 2
    assert gf2_rank([], 0) == 0


def test_commutative_three_space_is_a_matrix_algebra():
    result = structure(SignSystem.constant(3, 1))
    assert result.rank == 2
    assert (result.components, result.block) == (1, 2)


def test_anticommuting_three_space_is_commutative():
    result = structure(SignSystem.constant(3, -1))
    assert result.rank == 0
    assert (result.components, result.block) == (4, 1)


def test_presentation_generators():
    pres = presentation(SignSystem.constant(4, -1), base=2)
    assert pres.generators == (1, 3, 4)
    assert pres.dimension == 8
    with pytest.raises(IndexOutOfRange):
        presentation(SignSystem.constant(4, -1), base=5)


def test_word_sign_relations():
    pres = presentation(QuadGraph.from_edges(4, [(1, 2)]).to_sign_system())
    for i in range(pres.m):
        assert word_sign(pres, 1 << i, 1 << i) == 1
        for j in range(pres.m):
            if i != j:
                forward = word_sign(pres, 1 << i, 1 << j)
                backward = word_sign(pres, 1 << j, 1 << i)
                assert forward == -pres.comm[i][j] * backward


@pytest.mark.parametrize("n", [4, 5, 6])
def test_descriptors_match_tables(n):
    for g, _, N in table_graphs(n):
        assert descriptor(g.to_sign_system()) == N, str(g)


def test_six_cycle_descriptor(six_cycle):
    assert descriptor(six_cycle.to_sign_system()) == 4


def test_descriptor_independent_of_base():
    eps = QuadGraph.from_edges(5, [(1, 2), (2, 3), (4, 5)]).to_sign_system()
    values = {structure(eps, base).components for base in range(1, 6)}
    assert values == {4}


@pytest.mark.parametrize("n", [2, 3, 4, 5, pytest.param(6, marks=pytest.mark.slow)])
def test_structure_independent_of_base_for_every_graph(n):
    for mask in range(1 << (n * (n - 1) // 2)):
        eps = QuadGraph(n, mask).to_sign_system()
        shapes = {(s.components, s.block) for s in (structure(eps, base) for base in range(1, n + 1))}
        assert len(shapes) == 1, QuadGraph(n, mask)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_oracle_agrees_with_rank_formula(n):
    for mask in range(1 << (n * (n - 1) // 2)):
        eps = QuadGraph(n, mask).to_sign_system()
        result = structure(eps)
        oracle = center_dim_oracle(presentation(eps))
        assert oracle.center_dim == result.components
        assert oracle.radical_zero
        assert result.components * result.block ** 2 == 2 ** (n - 1)


@pytest.mark.slow
def test_oracle_agrees_on_six_vertices():
    for mask in range(1 << 15):
        eps = QuadGraph(6, mask).to_sign_system()
        result = structure(eps)
        assert center_dim_oracle(presentation(eps)).center_dim == result.components


def test_min_module_dim():
    assert min_module_dim(SignSystem.constant(5, 1)) == 4
    assert min_module_dim(SignSystem.constant(5, -1)) == 1


def test_oracle_cap(monkeypatch):
    monkeypatch.setenv("SKEWQ_ORACLE_MAX_GENERATORS", "2")
    with pytest.raises(CapExceeded):
        center_dim_oracle(presentation(SignSystem.constant(4, -1)))


def test_to_dict():
    data = structure(SignSystem.constant(3, 1)).to_dict()
    assert data == {"m": 2, "B": [[0, 1], [1, 0]], "rank_B": 2, "components": 1, "block": 2, "descriptor": 1}


def test_trace_form_of_two_anticommuting_generators():
    form = trace_form(presentation(SignSystem.constant(3, 1)))
    entries = [[int(x) for x in row] for row in form.to_Matrix().tolist()]
    assert entries == [[4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 4, 0], [0, 0, 0, -4]]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_trace_form_is_nondegenerate(n):
    for mask in range(1 << (n * (n - 1) // 2)):
        pres = presentation(QuadGraph(n, mask).to_sign_system())
        assert trace_form(pres).rank() == pres.dimension
