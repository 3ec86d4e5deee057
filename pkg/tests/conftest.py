import itertools
from fractions import Fraction

import pytest

from torichyp import fixtures as fx


def det_oracle(M):
    """Laplace expansion, used as an independent determinant."""
    n = len(M)
    if n == 0:
        return 1
    return sum((-1) ** j * M[0][j] * det_oracle([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(n))


def determinantal_divisors(A):
    """Invariant factors from gcds of k x k minors (independent of any SNF)."""
    from math import gcd

    m, n = len(A), len(A[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, det_oracle([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


@pytest.fixture(scope="session")
def P3():
    return fx.get("P3")


@pytest.fixture(scope="session")
def P2xP1():
    return fx.get("P2xP1")


@pytest.fixture(scope="session")
def P1cubed():
    return fx.get("P1cubed")


@pytest.fixture(scope="session")
def BlP3():
    return fx.get("BlP3")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
