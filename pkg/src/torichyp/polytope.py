"""Lattice polytopes in H-representation with exact vertices and lattice points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil, factorial, floor, gcd
from typing import Iterable, Sequence

from .errors import InputError, UnboundedError
from .lattice import (
    clear_denominators,
    det,
    dot,
    integer_kernel,
    rank,
    solve_rational,
)

Point = tuple  # tuple of Fraction or int


def _norm(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def _rational_kernel(rows: Sequence[Sequence], n: int) -> list[tuple[int, ...]]:
    ints = [clear_denominators(r) for r in rows if any(r)]
    return integer_kernel(ints, ncols=n)


@dataclass(frozen=True)
class Facet:
    index: int
    normal: tuple[int, ...]
    offset: object
    points: tuple[tuple[int, ...], ...]
    interior_points: tuple[tuple[int, ...], ...]

    @property
    def interior_count(self) -> int:
        return len(self.interior_points)


class LatticePolytope:
    """``{u : <normal_i, u> + offset_i >= 0 for all i}``.

    Inequalities are stored in the order given, so callers (for instance
    divisor polytopes, whose inequalities are indexed by rays) can keep
    referring to them by position.  Redundant rows are not deleted; use
    :meth:`irredundant` or :meth:`facets` for the facet-defining ones.
    Instances are immutable and cache derived data on first use.
    """

    def __init__(self, normals: Iterable[Sequence[int]], offsets: Iterable, ambient_dim: int | None = None):
        normals = tuple(tuple(int(x) for x in v) for v in normals)
        offsets = tuple(_norm(c) for c in offsets)
        if len(normals) != len(offsets):
            raise InputError("normals and offsets differ in length")
        if ambient_dim is None:
            if not normals:
                raise InputError("ambient dimension needed for a polytope without inequalities")
            ambient_dim = len(normals[0])
        if ambient_dim < 1 or any(len(v) != ambient_dim for v in normals):
            raise InputError("inconsistent ambient dimension")
        self.ambient_dim = ambient_dim
        self.normals = normals
        self.offsets = offsets

    def __repr__(self):
        return f"LatticePolytope(dim={self.ambient_dim}, inequalities={len(self.normals)})"

    @property
    def inequalities(self):
        return list(zip(self.normals, self.offsets))

    def slack(self, i: int, u: Sequence) -> object:
        return dot(self.normals[i], u) + self.offsets[i]

    def contains(self, u: Sequence) -> bool:
        return all(dot(v, u) + c >= 0 for v, c in zip(self.normals, self.offsets))

    def tight(self, u: Sequence) -> frozenset[int]:
        return frozenset(i for i, (v, c) in enumerate(zip(self.normals, self.offsets)) if dot(v, u) + c == 0)

    # -- boundedness and vertices -------------------------------------------

    @cached_property
    def is_bounded(self) -> bool:
        """True iff the recession cone ``{d : <normal_i, d> >= 0}`` is zero."""
        n = self.ambient_dim
        if rank(self.normals) < n:
            return False
        for sub in combinations(range(len(self.normals)), n - 1):
            rows = [self.normals[i] for i in sub]
            ker = integer_kernel(rows, ncols=n)
            if len(ker) != 1:
                continue
            d = ker[0]
            for s in (1, -1):
                if all(s * dot(v, d) >= 0 for v in self.normals):
                    return False
        return True

    def _require_bounded(self):
        if not self.is_bounded:
            raise UnboundedError("polyhedron is unbounded")

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        """Exact vertices, sorted lexicographically."""
        self._require_bounded()
        n = self.ambient_dim
        found = set()
        for sub in combinations(range(len(self.normals)), n):
            A = [self.normals[i] for i in sub]
            if det(A) == 0:
                continue
            x = solve_rational(A, [-self.offsets[i] for i in sub])
            x = tuple(_norm(c) for c in x)
            if x not in found and self.contains(x):
                found.add(x)
        return tuple(sorted(found))

    @cached_property
    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def dim(self) -> int:
        """Affine dimension (-1 for the empty polytope)."""
        return _affine_dim(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def is_lattice(self) -> bool:
        return all(isinstance(c, int) for v in self.vertices for c in v)

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        """Pairs of vertices spanning a one-dimensional face."""
        n = self.ambient_dim
        tights = {v: self.tight(v) for v in self.vertices}
        out = []
        for p, q in combinations(self.vertices, 2):
            common = tights[p] & tights[q]
            if common and rank([self.normals[i] for i in common]) == n - 1:
                out.append((p, q))
        return tuple(out)

    # -- lattice points -------------------------------------------------------

    @cached_property
    def lattice_points(self) -> tuple[tuple[int, ...], ...]:
        """All integer points, sorted lexicographically (bounding-box scan)."""
        verts = self.vertices
        if not verts:
            return ()
        n = self.ambient_dim
        lo = [ceil(min(v[k] for v in verts)) for k in range(n)]
        hi = [floor(max(v[k] for v in verts)) for k in range(n)]
        rows = list(zip(self.normals, self.offsets))
        out = []

        def scan(prefix, k):
            if k == n - 1:
                a, b = lo[k], hi[k]
                for v, c in rows:
                    rest = c + sum(x * y for x, y in zip(v, prefix))
                    w = v[k]
                    if w > 0:  # w t + rest >= 0
                        a = max(a, ceil(Fraction(-rest, 1) / w))
                    elif w < 0:
                        b = min(b, floor(Fraction(rest, 1) / -w))
                    elif rest < 0:
                        return
                for t in range(a, b + 1):
                    out.append(tuple(prefix) + (t,))
                return
            for t in range(lo[k], hi[k] + 1):
                scan(prefix + [t], k + 1)

        scan([], 0)
        return tuple(out)

    @cached_property
    def lattice_point_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.lattice_points)

    def num_lattice_points(self) -> int:
        return len(self.lattice_points)

    # -- faces and facets -----------------------------------------------------

    @cached_property
    def irredundant(self) -> tuple[int, ...]:
        """Indices of facet-defining inequalities (first index per facet)."""
        d = self.dim
        if d < 1:
            return ()
        seen = set()
        keep = []
        for i in range(len(self.normals)):
            on = tuple(v for v in self.vertices if self.slack(i, v) == 0)
            if len(on) == len(self.vertices) or on in seen:
                continue
            if _affine_dim(on) == d - 1:
                seen.add(on)
                keep.append(i)
        return tuple(keep)

    def facet_vertices(self, i: int) -> tuple[Point, ...]:
        return tuple(v for v in self.vertices if self.slack(i, v) == 0)

    def facets(self) -> list[Facet]:
        """One :class:`Facet` per facet, with its relative-interior lattice points.

        A lattice point of a facet is in the relative interior exactly when it
        lies on no other facet.
        """
        if not self.is_full_dimensional:
            raise InputError("facets() needs a full-dimensional polytope")
        idx = self.irredundant
        out = []
        for i in idx:
            pts = tuple(u for u in self.lattice_points if self.slack(i, u) == 0)
            inner = tuple(u for u in pts if all(self.slack(j, u) != 0 for j in idx if j != i))
            out.append(Facet(i, self.normals[i], self.offsets[i], pts, inner))
        return out

    def facet_for_inequality(self, i: int) -> Facet | None:
        """The facet cut out by inequality ``i`` or None when it is not a facet."""
        on = self.facet_vertices(i)
        for f in self.facets():
            if self.facet_vertices(f.index) == on:
                return f
        return None

    # -- volume ---------------------------------------------------------------

    def _triangulate(self, face_verts: tuple, d: int) -> list[tuple]:
        if d == 0:
            return [(face_verts[0],)]
        v0 = min(face_verts)
        out = []
        seen = set()
        for i in range(len(self.normals)):
            sub = tuple(v for v in face_verts if self.slack(i, v) == 0)
            if len(sub) == len(face_verts) or v0 in sub or sub in seen:
                continue
            if _affine_dim(sub) == d - 1:
                seen.add(sub)
                out.extend((v0,) + s for s in self._triangulate(sub, d - 1))
        return out

    @cached_property
    def volume(self) -> Fraction:
        """Euclidean volume; zero unless full-dimensional."""
        n = self.ambient_dim
        if not self.is_full_dimensional:
            return Fraction(0)
        total = Fraction(0)
        for s in self._triangulate(self.vertices, n):
            total += abs(Fraction(det([[a - b for a, b in zip(p, s[0])] for p in s[1:]])))
        return total / factorial(n)

    @property
    def normalized_volume(self) -> Fraction:
        return self.volume * factorial(self.ambient_dim)

    # -- constructions --------------------------------------------------------

    def dilate(self, t) -> "LatticePolytope":
        return LatticePolytope(self.normals, [c * t for c in self.offsets], self.ambient_dim)

    def translate(self, shift: Sequence) -> "LatticePolytope":
        return LatticePolytope(
            self.normals,
            [c - dot(v, shift) for v, c in zip(self.normals, self.offsets)],
            self.ambient_dim,
        )

    @classmethod
    def from_points(cls, points: Iterable[Sequence], directions: Iterable[Sequence] | None = None) -> "LatticePolytope":
        """Convex hull of finitely many rational points.

        Candidate facet normals are orthogonal to ``d - 1`` of the given edge
        ``directions``.  Without directions, hyperplanes through ``d`` of the
        points are tried and only supporting ones kept.  The result is
        irredundant.
        """
        pts = sorted({tuple(_norm(c) for c in p) for p in points})
        if not pts:
            raise InputError("convex hull of no points")
        n = len(pts[0])
        spanning = [[a - b for a, b in zip(q, pts[0])] for q in pts[1:]]
        d = rank(spanning) if spanning else 0
        eqs = _rational_kernel(spanning, n) if d else [tuple(int(i == j) for j in range(n)) for i in range(n)]
        normals, offsets = [], []

        def add(w):
            c = -min(dot(w, p) for p in pts)
            normals.append(w)
            offsets.append(c)

        for w in eqs:
            add(w)
            add(tuple(-x for x in w))
        cands = set()
        if directions is not None:
            dirs = sorted({clear_denominators(w) for w in directions if any(w)})
            subsets = ((None, list(sub)) for sub in combinations(dirs, max(d - 1, 0)))
        else:
            subsets = ((sub[0], [[a - b for a, b in zip(q, sub[0])] for q in sub[1:]]) for sub in combinations(pts, max(d, 1)))
        for anchor, sub in subsets if d >= 1 else ():
            ker = _rational_kernel(sub + list(eqs), n)
            if len(ker) != 1:
                continue
            w = ker[0]
            if w in cands or tuple(-x for x in w) in cands:
                continue
            vals = [dot(w, p) for p in pts]
            lo, hi = min(vals), max(vals)
            if lo == hi:
                continue
            if anchor is not None and dot(w, anchor) not in (lo, hi):
                continue
            cands.add(w)
            cands.add(tuple(-x for x in w))
        for w in sorted(cands):
            vals = [dot(w, p) for p in pts]
            lo = min(vals)
            tight = [p for p, v in zip(pts, vals) if v == lo]
            # a supporting hyperplane is a facet iff its tight points span d - 1 dimensions
            if rank([[a - b for a, b in zip(q, tight[0])] for q in tight[1:]] or [[0] * n]) == d - 1:
                add(w)
        return cls(normals, offsets, n)


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    """``P + Q`` as an irredundant H-representation.

    Every edge of ``P + Q`` is parallel to an edge of ``P`` or of ``Q``, so
    those edge directions suffice as hull candidates.
    """
    if P.ambient_dim != Q.ambient_dim:
        raise InputError("Minkowski sum of polytopes in different dimensions")
    if P.is_empty or Q.is_empty:
        raise InputError("Minkowski sum with an empty polytope")
    pts = [tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices]
    dirs = [[a - b for a, b in zip(p, q)] for p, q in P.edges + Q.edges]
    return LatticePolytope.from_points(pts, dirs)


def ehrhart_volume_oracle(P: LatticePolytope) -> Fraction:
    """Volume from lattice-point counts of dilations of ``P``.

    For a lattice polytope the count of ``tP`` is a degree-n polynomial in
    ``t`` whose leading coefficient is the volume.  For rational vertices with
    common denominator ``q`` the count is a quasi-polynomial of period dividing
    ``q``, so ``t = q j`` gives a polynomial in ``j`` with leading coefficient
    ``q^n vol``.  Independent of the triangulation in
    :attr:`LatticePolytope.volume`.
    """
    if P.is_empty:
        return Fraction(0)
    q = 1
    for v in P.vertices:
        for c in v:
            d = Fraction(c).denominator
            q = q * d // gcd(q, d)
    n = P.ambient_dim
    lead = Fraction(0)
    for j in range(n + 1):
        count = 1 if j == 0 else P.dilate(q * j).num_lattice_points()
        den = 1
        for s in range(n + 1):
            if s != j:
                den *= j - s
        lead += Fraction(count, den)
    return lead / q**n


def cube(n: int, side: int = 1) -> LatticePolytope:
    normals, offsets = [], []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        normals += [tuple(e), tuple(-x for x in e)]
        offsets += [0, side]
    return LatticePolytope(normals, offsets, n)


def simplex(n: int, side: int = 1) -> LatticePolytope:
    normals = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return LatticePolytope(normals + [tuple([-1] * n)], [0] * n + [side], n)
