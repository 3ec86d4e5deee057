"""Section graphs, connected sections, IDP pairs and fiber graphs.

Sections of a torus-invariant divisor are identified with the lattice points
of its polytope; multiplying monomials is adding lattice points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import EmptySectionsError, InputError, NotNefError
from .lattice import integer_kernel, mat_vec, solve_integer, NonIntegralSolution
from .polytope import LatticePolytope
from .toric import (
    Fan,
    ToricDivisor,
    default_section_basis,
    is_nef,
    section_matrix,
    sections,
)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def components(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values())


@dataclass(frozen=True)
class SectionGraph:
    """Vertices ``(block, u)`` ordered by block then ``u``.

    ``buckets`` maps each monomial ``w`` of ``H^0(D)`` to the vertices whose
    multiples reach it; two vertices are adjacent iff they share a bucket.
    """

    vertices: tuple[tuple[int, tuple[int, ...]], ...]
    buckets: dict = field(compare=False, repr=False)

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for members in self.buckets.values():
            for x in range(len(members)):
                for y in range(x + 1, len(members)):
                    a, b = members[x], members[y]
                    if a != b:
                        out.add((min(a, b), max(a, b)))
        return frozenset(out)

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def components(self, subset: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components, optionally of the induced subgraph on ``subset``."""
        keep = list(range(len(self.vertices))) if subset is None else sorted(set(subset))
        pos = {v: k for k, v in enumerate(keep)}
        uf = _UnionFind(len(keep))
        for members in self.buckets.values():
            inside = [pos[m] for m in members if m in pos]
            for m in inside[1:]:
                uf.union(inside[0], m)
        return [[keep[k] for k in comp] for comp in uf.components()]

    def is_connected(self, subset: Iterable[int] | None = None) -> bool:
        return len(self.components(subset)) <= 1

    def block(self, i: int) -> list[int]:
        return [k for k, (b, _) in enumerate(self.vertices) if b == i]


def _require_sections(E: ToricDivisor, label: str) -> tuple:
    pts = sections(E)
    if not pts:
        raise EmptySectionsError(f"{label} = {E} has no sections")
    return pts


def section_graph(D: ToricDivisor, Es: Sequence[ToricDivisor]) -> SectionGraph:
    if not Es:
        raise InputError("configuration needs at least one E_i")
    for E in Es:
        D._check(E)
    vertices = []
    buckets: dict[tuple[int, ...], list[int]] = {}
    for i, E in enumerate(Es):
        pts = _require_sections(E, f"E_{i + 1}")
        mult = sections(D - E)
        for u in pts:
            k = len(vertices)
            vertices.append((i, u))
            for q in mult:
                w = tuple(a + b for a, b in zip(u, q))
                buckets.setdefault(w, []).append(k)
    return SectionGraph(tuple(vertices), buckets)


@dataclass(frozen=True)
class SpanResult:
    holds: bool
    uncovered: tuple[int, ...] | None = None

    def __bool__(self):
        return self.holds


def span_condition(D: ToricDivisor, Es: Sequence[ToricDivisor], graph: SectionGraph | None = None) -> SpanResult:
    """Whether the products ``H^0(E_i) H^0(D - E_i)`` reach every monomial of ``D``."""
    graph = graph or section_graph(D, Es)
    for w in sections(D):
        if w not in graph.buckets:
            return SpanResult(False, w)
    return SpanResult(True)


@dataclass(frozen=True)
class ConnectedSectionsReport:
    graph_connected: bool
    span_holds: bool
    num_vertices: int
    num_edges: int
    components: int
    component_sample: tuple | None = None
    uncovered: tuple[int, ...] | None = None

    @property
    def verdict(self) -> bool:
        return self.graph_connected and self.span_holds

    def __bool__(self):
        return self.verdict

    def as_dict(self) -> dict:
        return {
            "connected_sections": self.verdict,
            "graph_connected": self.graph_connected,
            "span_holds": self.span_holds,
            "vertices": self.num_vertices,
            "edges": self.num_edges,
            "components": self.components,
            "disconnected_vertex": None if self.component_sample is None
            else {"block": self.component_sample[0], "u": list(self.component_sample[1])},
            "uncovered_point": None if self.uncovered is None else list(self.uncovered),
        }


def has_connected_sections(D: ToricDivisor, Es: Sequence[ToricDivisor]) -> ConnectedSectionsReport:
    g = section_graph(D, Es)
    comps = g.components()
    span = span_condition(D, Es, g)
    sample = g.vertices[comps[1][0]] if len(comps) > 1 else None
    return ConnectedSectionsReport(
        len(comps) <= 1, span.holds, len(g.vertices), len(g.edges), len(comps), sample, span.uncovered
    )


# -- IDP ------------------------------------------------------------------------


@dataclass(frozen=True)
class IdpResult:
    holds: bool
    gap: tuple[int, ...] | None = None

    def __bool__(self):
        return self.holds


def sumset(A: Iterable[Sequence[int]], B: Iterable[Sequence[int]]) -> set[tuple[int, ...]]:
    B = list(B)
    return {tuple(x + y for x, y in zip(a, b)) for a in A for b in B}


def is_idp(E: ToricDivisor, E2: ToricDivisor) -> IdpResult:
    """Lattice points of ``P(E) + P(E')`` all split as sums (``E, E'`` nef)."""
    for X in (E, E2):
        if not is_nef(X):
            raise NotNefError(f"{X} is not nef")
    got = sumset(sections(E), sections(E2))
    for w in sections(E + E2):
        if w not in got:
            return IdpResult(False, w)
    return IdpResult(True)


# -- fiber graphs ---------------------------------------------------------------


def fiber_points(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[tuple[int, ...]]:
    """``{x in Z^p : A x = b, x >= 0}`` in lexicographic order."""
    p = len(A[0]) if A else len(b)
    try:
        x0 = solve_integer(A, b)
    except NonIntegralSolution:
        return []
    if x0 is None:
        return []
    K = integer_kernel(A, ncols=p)
    if not K:
        return [tuple(x0)] if all(x >= 0 for x in x0) else []
    rows = [[k[j] for k in K] for j in range(p)]
    Z = LatticePolytope(rows, x0, len(K))
    pts = [tuple(x + sum(r * z for r, z in zip(row, zz)) for x, row in zip(x0, rows)) for zz in Z.lattice_points]
    return sorted(pts)


def _check_moves(A, G):
    for g in G:
        if any(mat_vec(A, g)):
            raise InputError(f"move {list(g)} is not in the kernel of A")


def fiber_components(A, b, G) -> list[list[tuple[int, ...]]]:
    _check_moves(A, G)
    pts = fiber_points(A, b)
    index = {x: k for k, x in enumerate(pts)}
    uf = _UnionFind(len(pts))
    for k, x in enumerate(pts):
        for g in G:
            y = tuple(a + c for a, c in zip(x, g))
            j = index.get(y)
            if j is not None:
                uf.union(k, j)
    return [[pts[k] for k in comp] for comp in uf.components()]


def fiber_graph_connected(A, b, G) -> bool:
    """Connectivity of one fiber ``P(b)`` under the moves ``+-G``."""
    return len(fiber_components(A, b, list(G) + [tuple(-x for x in g) for g in G])) <= 1


def markov_criterion_check(E: ToricDivisor, E2: ToricDivisor, basis=None) -> bool:
    """Fiber-wise form of the Markov criterion for ``(E + E'; E)``.

    Moves are differences of lattice points of ``P(b(E'))``; the fiber is
    ``b(E)``.  Requires the pair to be IDP for the span condition.
    """
    if not sections(E2):
        raise EmptySectionsError(f"{E2} has no sections")
    if not is_idp(E, E2):
        return False
    fan = E.fan
    sm = section_matrix(fan, basis or default_section_basis(fan))
    pts = [sm.lift(E2, u) for u in sections(E2)]
    G = sorted({tuple(a - c for a, c in zip(x, y)) for x in pts for y in pts if x != y})
    _check_moves(sm.A, G)
    return len(fiber_components(sm.A, sm.b(E), G)) <= 1


def lifted_moves(fan: Fan, moves_in_m: Iterable[Sequence[int]], basis=None):
    """Images of character-lattice moves under ``iota'`` (they lie in ker A)."""
    sm = section_matrix(fan, basis or default_section_basis(fan))
    return sm, [tuple(mat_vec(sm.iota, g)) for g in moves_in_m]


def dual_basis_moves(n: int) -> list[tuple[int, ...]]:
    """``+-e_i^*``, the Markov moves for alcoved fans."""
    out = []
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        out += [e, tuple(-x for x in e)]
    return out


def is_root(v: Sequence[int]) -> bool:
    nz = [x for x in v if x]
    return (len(nz) == 1 and abs(nz[0]) == 1) or sorted(nz) == [-1, 1]


def alcoved_fan_check(fan: Fan) -> bool:
    """Every ray is ``+-e_i`` or ``e_i - e_j``."""
    return all(is_root(r) for r in fan.rays)
