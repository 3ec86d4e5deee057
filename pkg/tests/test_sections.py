import itertools
import random

import pytest

from torichyp import fixtures as fx
from torichyp.errors import EmptySectionsError, InputError, NotNefError
from torichyp.sections import (
    alcoved_fan_check,
    dual_basis_moves,
    fiber_graph_connected,
    fiber_points,
    has_connected_sections,
    is_idp,
    lifted_moves,
    markov_criterion_check,
    section_graph,
    span_condition,
    sumset,
)
from torichyp.toric import is_nef, sections


def brute_edges(D, Es):
    """Edge set straight from the definition: translated multiple sets meet."""
    verts = [(i, u) for i, E in enumerate(Es) for u in sections(E)]
    mults = [set(sections(D - E)) for E in Es]
    out = set()
    for a, b in itertools.combinations(range(len(verts)), 2):
        (i, ua), (j, ub) = verts[a], verts[b]
        A = {tuple(x + y for x, y in zip(ua, q)) for q in mults[i]}
        B = {tuple(x + y for x, y in zip(ub, q)) for q in mults[j]}
        if A & B:
            out.add((a, b))
    return out


@pytest.fixture(scope="module")
def example32():
    f = fx.get("P1xP1")
    return f.D("D"), [f.D("E1"), f.D("E2")]


def test_example_graph(example32):
    D, Es = example32
    g = section_graph(D, Es)
    assert len(g.vertices) == 7
    assert len(g.block(0)) == 4 and len(g.block(1)) == 3
    assert g.is_connected()
    assert not g.is_connected(g.block(0))
    assert not g.is_connected(g.block(1))
    assert set(g.edges) == brute_edges(D, Es)


def test_example_span(example32):
    D, Es = example32
    assert span_condition(D, Es[:1]).holds
    assert has_connected_sections(D, Es).verdict


def test_vertex_order(example32):
    D, Es = example32
    g = section_graph(D, Es)
    assert list(g.vertices) == sorted(g.vertices)


def test_p3_2H_H(P3):
    H = P3.D("H")
    assert has_connected_sections(2 * H, [H]).verdict
    assert span_condition(H, [H]).holds


def test_single_section_block(P3):
    H = P3.D("H")
    g = section_graph(H, [P3.fan.zero(), H])
    assert len(g.block(0)) == 1


def test_empty_sections_rejected(P3):
    H = P3.D("H")
    with pytest.raises(EmptySectionsError):
        section_graph(2 * H, [-1 * H])
    with pytest.raises(InputError):
        section_graph(H, [])


def test_example_62_configuration(P2xP1):
    a = b = 2
    D = P2xP1.combo(A=a, B=b)
    Es = [P2xP1.combo(A=a - 1, B=b), P2xP1.combo(A=a, B=b - 1)]
    assert has_connected_sections(D, Es).verdict


def test_span_failure_witness():
    R = fx.get("Reeve").D("R")
    rep = span_condition(2 * R, [R])
    assert not rep.holds and rep.uncovered in sections(2 * R)
    full = has_connected_sections(2 * R, [R])
    assert not full.verdict and full.as_dict()["uncovered_point"] == list(rep.uncovered)


def test_edges_match_definition_random():
    rng = random.Random(2)
    for name in ["P2xP1", "P1cubed", "BlP3", "P3"]:
        f = fx.get(name)
        for _ in range(3):
            Es = []
            for _ in range(rng.randint(1, 2)):
                Es.append(sum((rng.randint(0, 1) * g for g in f.nef), f.fan.zero()) + f.nef[0])
            D = sum(Es[1:], Es[0]) + f.nef[-1]
            g = section_graph(D, Es)
            assert set(g.edges) == brute_edges(D, Es)
            for a, b in g.edges:
                assert g.adjacent(b, a)


def test_idp_examples(P3):
    H = P3.D("H")
    assert is_idp(H, H).holds
    for name in fx.THREEFOLDS:
        A = fx.get(name).ample
        assert is_idp(2 * A, 2 * A).holds, name


def test_reeve_not_idp():
    R = fx.get("Reeve").D("R")
    res = is_idp(R, R)
    assert not res.holds
    pts = sections(R)
    # brute force: the gap point is a lattice point of P(2R) missed by all pair sums
    assert res.gap in set(sections(2 * R)) - sumset(pts, pts)
    assert res.gap == (1, 1, 1) or len(pts) == 4


def test_idp_needs_nef(BlP3):
    with pytest.raises(NotNefError):
        is_idp(BlP3.D("E"), BlP3.D("H"))


def test_fiber_full_kernel_connected():
    A = [[1, 1, 1]]
    b = [3]
    pts = fiber_points(A, b)
    assert len(pts) == 10
    G = sorted({tuple(x - y for x, y in zip(p, q)) for p in pts for q in pts if p != q})
    assert fiber_graph_connected(A, b, G)


def test_fiber_no_moves():
    A = [[1, 1, 1]]
    assert not fiber_graph_connected(A, [2], [])
    assert fiber_graph_connected(A, [0], [])


def test_fiber_moves_validated():
    with pytest.raises(InputError):
        fiber_graph_connected([[1, 1]], [2], [(1, 0)])


def test_fiber_simple_moves():
    A = [[1, 1, 1]]
    assert fiber_graph_connected(A, [4], [(1, -1, 0), (0, 1, -1)])
    assert not fiber_graph_connected(A, [4], [(1, -1, 0)])


@pytest.mark.parametrize("name", ["P3", "P2xP1", "P1cubed", "BlP3"])
def test_type_a_dual_basis_moves(name):
    f = fx.get(name)
    assert alcoved_fan_check(f.fan)
    sm, G = lifted_moves(f.fan, dual_basis_moves(f.fan.lattice_rank))
    for k in (1, 2):
        D = k * f.ample
        assert fiber_graph_connected(sm.A, sm.b(D), G)


def test_alcoved():
    assert alcoved_fan_check(fx.get("P1cubed").fan)
    assert alcoved_fan_check(fx.get("BlP3").fan)
    assert not alcoved_fan_check(fx.get("WPS2").fan)


@pytest.mark.parametrize("name", ["P2xP1", "P1cubed"])
def test_markov_examples(name):
    A = fx.get(name).ample
    assert markov_criterion_check(A, A)
    assert has_connected_sections(2 * A, [A]).verdict


def test_markov_agrees_on_fixtures():
    for name in fx.THREEFOLDS:
        f = fx.get(name)
        E = f.ample
        for E2 in f.nef + [E]:
            if markov_criterion_check(E, E2):
                assert has_connected_sections(E + E2, [E]).verdict


def test_markov_empty_sections(P3):
    with pytest.raises(EmptySectionsError):
        markov_criterion_check(P3.D("H"), -1 * P3.D("H"))
