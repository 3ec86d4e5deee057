import random
from fractions import Fraction

import pytest

from conftest import det_oracle, determinantal_divisors
from torichyp.lattice import (
    NonIntegralSolution,
    det,
    integer_kernel,
    mat_vec,
    matmul,
    rank,
    smith_normal_form,
    solve_integer,
    solve_rational,
    transpose,
)

P2XP1_IOTA = [[1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 1], [0, 0, -1]]


def check_snf(A):
    s = smith_normal_form(A)
    assert [list(r) for r in matmul(matmul(s.U, A), s.V)] == [list(r) for r in s.S]
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    m, n = len(A), len(A[0])
    assert all(s.S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    d = s.invariant_factors
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    return s


def test_snf_identity():
    s = check_snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert s.S == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_snf_already_diagonal():
    assert check_snf([[2, 0], [0, 4]]).diagonal == (2, 4)


def test_snf_p2xp1_iota():
    s = check_snf(P2XP1_IOTA)
    assert s.invariant_factors == (1, 1, 1)
    assert len(P2XP1_IOTA) - s.rank == 2  # cokernel Z^2
    assert determinantal_divisors(P2XP1_IOTA) == [1, 1, 1]
    t = check_snf(transpose(P2XP1_IOTA))
    assert t.invariant_factors == (1, 1, 1)


def test_snf_needs_divisibility_fix():
    s = check_snf([[2, 0], [0, 3]])
    assert s.diagonal == (1, 6)
    s = check_snf([[6, 0, 0], [0, 10, 0], [0, 0, 15]])
    assert s.diagonal == (1, 30, 30)
    assert determinantal_divisors([[6, 0, 0], [0, 10, 0], [0, 0, 15]]) == [1, 30, 30]


def test_snf_random_against_minors():
    rng = random.Random(7)
    for _ in range(150):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        s = check_snf(A)
        assert list(s.invariant_factors) == determinantal_divisors(A)


def test_snf_big_entries_no_overflow():
    A = [[2**70 + 1, 3**50], [5**40, 7**30]]
    s = check_snf(A)
    assert s.invariant_factors[-1] * s.invariant_factors[0] == abs(det_oracle(A))


def test_det_matches_laplace():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 5)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det(A) == det_oracle(A)
    assert det([[Fraction(1, 2), 0], [0, 4]]) == 2


def test_kernel_simple():
    assert integer_kernel([[1, 1]]) in ([(1, -1)], [(-1, 1)])
    assert integer_kernel([[1, 0], [0, 1]]) == []


def test_kernel_is_saturated():
    # 2x + 4y = 0 has kernel generated by (2, -1), not (4, -2)
    (k,) = integer_kernel([[2, 4]])
    assert sorted(map(abs, k)) == [1, 2]


def test_kernel_random():
    rng = random.Random(11)
    for _ in range(150):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        K = integer_kernel(A)
        for v in K:
            assert not any(mat_vec(A, v))
        assert len(K) + rank(A) == n
        if K:
            # saturation: the kernel basis extends to a unimodular matrix,
            # equivalently its invariant factors are all 1
            assert set(smith_normal_form(K).invariant_factors) == {1}


def test_kernel_of_example_section_matrix():
    from torichyp import fixtures as fx
    from torichyp.toric import section_matrix

    f = fx.get("P1xP1")
    sm = section_matrix(f.fan, [(1, 1), (1, 2)])
    K = integer_kernel(sm.A)
    assert len(K) == 2
    assert len(sm.A[0]) - rank(sm.A) == 2


def test_solve_rational_cases():
    assert solve_rational([[1, 0], [0, 1]], [3, 4]) == [3, 4]
    assert solve_rational([[1, 1], [1, 1]], [1, 2]) is None
    assert solve_rational([[1, 1], [1, -1]], [1, 0]) == [Fraction(1, 2), Fraction(1, 2)]


def test_solve_integer_distinguishes_failures():
    assert solve_integer([[1, 1], [1, -1]], [2, 0]) == [1, 1]
    with pytest.raises(NonIntegralSolution):
        solve_integer([[1, 1], [1, -1]], [1, 0])
    assert solve_integer([[1, 1], [1, 1]], [1, 2]) is None
