import random
from fractions import Fraction

import pytest

from torichyp import fixtures as fx
from torichyp.errors import InputError, UnboundedError
from torichyp.polytope import LatticePolytope, cube, ehrhart_volume_oracle, minkowski_sum, simplex
from torichyp.toric import divisor_polytope


def vertex_oracle(P):
    """Lattice points not in the hull of the remaining lattice points."""
    pts = P.lattice_points
    out = []
    for p in pts:
        rest = [q for q in pts if q != p]
        if not rest or not LatticePolytope.from_points(rest).contains(p):
            out.append(p)
    return sorted(out)


def test_cube_vertices():
    assert len(cube(3).vertices) == 8


def test_prism_vertices(P2xP1):
    P = divisor_polytope(P2xP1.combo(A=1, B=1))
    assert len(P.vertices) == 6
    assert list(P.vertices) == vertex_oracle(P)


def test_blowup_polytope_has_six_vertices(BlP3):
    # simplex of side a+b with a corner cut at depth b: 3 + 3 vertices
    for a, b in [(1, 1), (1, 2), (2, 1)]:
        P = divisor_polytope(BlP3.combo(H=a, L=b))
        assert list(P.vertices) == vertex_oracle(P)
        assert len(P.vertices) == 6


def test_unbounded_is_an_error():
    P = LatticePolytope([(1, 0), (0, 1)], [0, 0])
    assert not P.is_bounded
    with pytest.raises(UnboundedError):
        P.vertices


def test_lattice_points_segment():
    P = LatticePolytope([(1,), (-1,)], [0, 2])
    assert P.lattice_points == ((0,), (1,), (2,))


def test_lattice_points_2H_on_P3(P3):
    assert len(divisor_polytope(2 * P3.D("H")).lattice_points) == 10


def test_lattice_points_example_rectangle():
    f = fx.get("P1xP1")
    pts = set(divisor_polytope(f.D("D")).lattice_points)
    # sections 1, x, x^2, y, xy, x^2 y
    assert pts == {(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)}


def test_rational_vertices():
    P = LatticePolytope([(2, 0), (0, 1), (-1, -1)], [-1, 0, 2])
    assert Fraction(1, 2) in {v[0] for v in P.vertices}
    assert not P.is_lattice
    assert set(P.lattice_points) == {(1, 0), (1, 1), (2, 0)}
    assert P.volume == ehrhart_volume_oracle(P)


@pytest.mark.parametrize("P, vol", [(cube(3), 1), (simplex(3), Fraction(1, 6))])
def test_volume_small(P, vol):
    assert P.volume == vol == ehrhart_volume_oracle(P)


def test_volume_prism(P2xP1):
    P = divisor_polytope(P2xP1.combo(A=2, B=3))
    assert P.volume == 6 == ehrhart_volume_oracle(P)


def test_volume_zero_for_flat():
    P = LatticePolytope.from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert P.dim == 2 and P.volume == 0


def test_minkowski_with_origin(P2xP1):
    P = divisor_polytope(P2xP1.combo(A=2, B=1))
    Q = minkowski_sum(P, LatticePolytope.from_points([(0, 0, 0)]))
    assert Q.vertices == P.vertices


def test_minkowski_segments():
    sq = minkowski_sum(LatticePolytope.from_points([(0, 0), (1, 0)]), LatticePolytope.from_points([(0, 0), (0, 1)]))
    assert set(sq.vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert sq.volume == 1


def test_minkowski_PH_PH(P3):
    H = P3.D("H")
    S = minkowski_sum(divisor_polytope(H), divisor_polytope(H))
    assert S.vertices == divisor_polytope(2 * H).vertices
    assert S.lattice_points == divisor_polytope(2 * H).lattice_points


def test_minkowski_dimension_mismatch():
    with pytest.raises(InputError):
        minkowski_sum(cube(2), cube(3))


def test_cube_facets():
    fs = cube(3).facets()
    assert len(fs) == 6 and all(f.interior_count == 0 for f in fs)


def test_facets_p2xp1(P2xP1):
    counts = sorted(f.interior_count for f in divisor_polytope(P2xP1.combo(A=4, B=3)).facets())
    a, b = 4, 3
    assert (a - 1) * (b - 1) in counts and (a - 1) * (a - 2) // 2 in counts
    assert counts == [3, 3, 6, 6, 6]


def test_facets_wps():
    f = fx.get("WPS2")
    counts = {x.interior_count for x in divisor_polytope(2 * f.D("H")).facets()}
    n, m = 2, 2
    assert counts == {(n * m - 1) * (n * m - 2) // 2, (m - 1) * (n * m - 2) // 2} == {3, 1}


def test_facet_points_nested(P2xP1):
    P = divisor_polytope(P2xP1.combo(A=3, B=2))
    for f in P.facets():
        assert set(f.interior_points) <= set(f.points) <= set(P.lattice_points)


def test_redundant_inequalities_ignored_by_facets():
    P = LatticePolytope([(1, 0), (0, 1), (-1, 0), (0, -1), (-1, -1)], [0, 0, 1, 1, 5])
    assert len(P.facets()) == 4
    assert P.irredundant == (0, 1, 2, 3)


def _random_polytope(rng):
    pts = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(rng.randint(4, 7))]
    return LatticePolytope.from_points(pts)


def test_random_hulls_contain_points_and_match_oracle():
    rng = random.Random(5)
    done = 0
    while done < 25:
        P = _random_polytope(rng)
        if not P.is_full_dimensional:
            continue
        done += 1
        assert P.volume == ehrhart_volume_oracle(P)
        hull = LatticePolytope.from_points(P.vertices)
        assert all(hull.contains(u) for u in P.lattice_points)
        shift = (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
        T = P.translate(shift)
        assert T.volume == P.volume
        assert sorted(f.interior_count for f in T.facets()) == sorted(f.interior_count for f in P.facets())
        Q = _random_polytope(rng)
        S = minkowski_sum(P, Q)
        sums = {tuple(a + b for a, b in zip(p, q)) for p in P.lattice_points for q in Q.lattice_points}
        assert sums <= set(S.lattice_points)
        assert set(S.vertices) <= {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
