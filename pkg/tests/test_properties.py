from fractions import Fraction

from hypothesis import given, settings, strategies as st

from torichyp import fixtures as fx
from torichyp.bounds import triple_intersection
from torichyp.lattice import matmul, smith_normal_form
from torichyp.polytope import LatticePolytope, ehrhart_volume_oracle, minkowski_sum
from torichyp.sections import has_connected_sections, is_idp, section_graph
from torichyp.toric import divisor_polytope, is_cartier, sections

from conftest import det_oracle

SMOOTH = ["P3", "P2xP1", "P1cubed", "BlP3", "WPS2resolved"]
small = st.integers(-1, 2)


def divisor(name, coeffs):
    f = fx.get(name)
    return f.fan.divisor(coeffs[: f.fan.num_rays])


coeff_lists = st.lists(small, min_size=6, max_size=6)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMOOTH), coeff_lists, coeff_lists, coeff_lists)
def test_triple_symmetric(name, a, b, c):
    D1, D2, D3 = divisor(name, a), divisor(name, b), divisor(name, c)
    v = triple_intersection(D1, D2, D3)
    assert v == triple_intersection(D2, D1, D3) == triple_intersection(D3, D2, D1) == triple_intersection(D1, D3, D2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMOOTH), coeff_lists, coeff_lists, coeff_lists, coeff_lists)
def test_triple_additive(name, a, a2, b, c):
    D1, D1b, D2, D3 = (divisor(name, x) for x in (a, a2, b, c))
    assert triple_intersection(D1 + D1b, D2, D3) == triple_intersection(D1, D2, D3) + triple_intersection(D1b, D2, D3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMOOTH), coeff_lists, coeff_lists, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_triple_equivalence_invariant(name, a, b, m):
    D1, D2 = divisor(name, a), divisor(name, b)
    assert triple_intersection(D1.principal_shift(m), D2, D2) == triple_intersection(D1, D2, D2)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_factorisation(A):
    s = smith_normal_form(A)
    assert [tuple(r) for r in matmul(matmul(s.U, A), s.V)] == [tuple(r) for r in s.S]
    assert abs(det_oracle(s.U)) == 1 and abs(det_oracle(s.V)) == 1
    d = [x for x in s.diagonal if x]
    assert all(y % x == 0 for x, y in zip(d, d[1:]))


pts3 = st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(pts3)
def test_hull_volume_matches_ehrhart(pts):
    P = LatticePolytope.from_points(pts)
    assert all(P.contains(p) for p in pts)
    assert P.volume == ehrhart_volume_oracle(P)


@settings(max_examples=40, deadline=None)
@given(pts3, pts3)
def test_minkowski_contains_sums(p, q):
    P, Q = LatticePolytope.from_points(p), LatticePolytope.from_points(q)
    S = minkowski_sum(P, Q)
    for a in P.vertices:
        for b in Q.vertices:
            assert S.contains(tuple(x + y for x, y in zip(a, b)))
    assert S.volume >= P.volume and S.volume >= Q.volume


nef_coeffs = st.lists(st.integers(0, 2), min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["P2xP1", "P1cubed", "BlP3", "WPS2resolved", "WPS3resolved"]), nef_coeffs, nef_coeffs)
def test_section_graph_symmetric_and_translation_invariant(name, x, y):
    f = fx.get(name)
    E = sum((c * g for c, g in zip(x, f.nef)), f.ample)
    D = E + sum((c * g for c, g in zip(y, f.nef)), f.fan.zero())
    g1 = section_graph(D, [E])
    m = (1, -2, 1)
    g2 = section_graph(D.principal_shift(m), [E.principal_shift(m)])
    assert len(g1.vertices) == len(g2.vertices)
    assert len(g1.edges) == len(g2.edges)
    assert all((min(a, b), max(a, b)) in g1.edges for a, b in g1.edges)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["P3", "P2xP1", "P1cubed", "BlP3"]), nef_coeffs, nef_coeffs)
def test_type_a_connected_sections(name, x, y):
    f = fx.get(name)
    E = sum((c * g for c, g in zip(x, f.nef)), f.fan.zero())
    E2 = sum((c * g for c, g in zip(y, f.nef)), f.ample)  # big
    if not sections(E):
        return
    assert has_connected_sections(E + E2, [E]).verdict


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["P3", "P2xP1", "P1cubed", "BlP3"]), nef_coeffs)
def test_idp_pairs_on_smooth_threefolds(name, x):
    f = fx.get(name)
    E = sum((c * g for c, g in zip(x, f.nef)), f.ample)
    assert is_idp(E, E).holds
