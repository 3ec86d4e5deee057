"""Exact integer and rational linear algebra.

Matrices are lists of rows of Python ints (or Fractions), so entries are
unbounded.  Every routine here is pure: inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = Sequence[int]
Matrix = Sequence[Sequence[int]]


class NonIntegralSolution(ValueError):
    """The system is consistent over Q but has no integer solution."""


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Matrix, ncols: int | None = None) -> list[list]:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A: Matrix, v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = vec_gcd(v)
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def det(A: Sequence[Sequence]):
    """Determinant of a square matrix.

    Integer input goes through fraction-free (Bareiss) elimination and returns
    an int; anything else is eliminated over ``Fraction``.
    """
    n = len(A)
    if n == 0:
        return 1
    if not all(isinstance(x, int) for row in A for x in row):
        return _det_fraction(A)
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _det_fraction(A):
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            result = -result
        result *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return result


def row_echelon(A: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    ncols = len(M[0]) if M else (ncols or 0)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    return len(row_echelon(A)[1]) if A else 0


@dataclass(frozen=True)
class SnfDecomposition:
    """``U * A * V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.V))))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(A: Matrix, ncols: int | None = None) -> SnfDecomposition:
    """Smith normal form with transforms, pivoting on the smallest nonzero entry.

    ``ncols`` is only needed when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    S = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        for M in (S, U):
            M[dst] = [a - q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (S, V):
            for row in M:
                row[dst] -= q * row[src]

    def move_min_to(t, rows, cols):
        best = None
        for i in rows:
            for j in cols:
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return False
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        return True

    for t in range(min(m, n)):
        if not move_min_to(t, range(t, m), range(t, n)):
            break
        while True:
            p = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
            if any(S[i][t] for i in range(t + 1, m)) or any(S[t][j] for j in range(t + 1, n)):
                # a remainder smaller than the pivot is left; it becomes the new pivot
                cells = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
                best = min((c for c in cells if S[c[0]][c[1]]), key=lambda c: abs(S[c[0]][c[1]]))
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]

    freeze = lambda M: tuple(tuple(r) for r in M)
    return SnfDecomposition(freeze(U), freeze(S), freeze(V))


def integer_kernel(A: Matrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Lattice basis of ``{x in Z^n : A x = 0}``.

    The last columns of ``V`` in ``U A V = S`` span the kernel, and because
    ``V`` is unimodular they form a basis of the saturated kernel lattice.
    """
    n = len(A[0]) if A else (ncols or 0)
    snf = smith_normal_form(A, ncols=n)
    r = snf.rank
    return [tuple(snf.V[i][j] for i in range(n)) for j in range(r, n)]


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A rational solution of ``A x = b`` or ``None`` when inconsistent.

    Free variables are set to zero when the solution is not unique.
    """
    n = len(A[0]) if A else 0
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = row_echelon(aug, ncols=n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    return x


def solve_integer(A: Matrix, b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``A x = b``.

    Returns ``None`` when the system is inconsistent over Q and raises
    :class:`NonIntegralSolution` when it is consistent but has no integer
    solution.
    """
    n = len(A[0]) if A else 0
    snf = smith_normal_form(A, ncols=n)
    c = mat_vec(snf.U, b)
    r = snf.rank
    if any(c[i] != 0 for i in range(r, len(c))):
        return None
    y = [0] * n
    for i in range(r):
        d = snf.S[i][i]
        if c[i] % d:
            raise NonIntegralSolution(f"no integer solution (invariant factor {d})")
        y[i] = c[i] // d
    return mat_vec(snf.V, y)
