"""Complete fans, torus-invariant divisors and their polytopes.

Conventions: a divisor ``D = sum a_rho D_rho`` has polytope
``P(D) = {u : <v_rho, u> + a_rho >= 0}`` and Cartier data ``m_sigma`` with
``<m_sigma, v_rho> = -a_rho`` for the rays of ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import FanError, InputError, NotCartierError
from .lattice import (
    NonIntegralSolution,
    det,
    dot,
    integer_kernel,
    mat_vec,
    primitive,
    rank,
    smith_normal_form,
    solve_integer,
    solve_rational,
    vec_gcd,
)
from .polytope import LatticePolytope


@dataclass(frozen=True)
class Fan:
    """Rays (primitive integer vectors) and maximal cones (sets of ray indices).

    ``ample_reference`` optionally names the coefficient vector of an ample
    divisor; it is needed only for nef decompositions.
    """

    lattice_rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    ample_reference: tuple[int, ...] | None = None

    def __post_init__(self):
        n = self.lattice_rank
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in self.max_cones))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.ample_reference is not None:
            object.__setattr__(self, "ample_reference", tuple(int(x) for x in self.ample_reference))
        if not isinstance(n, int) or n < 1:
            raise FanError("lattice_rank must be a positive integer")
        if not rays:
            raise FanError("fan has no rays")
        for k, r in enumerate(rays):
            if len(r) != n:
                raise FanError(f"ray {k} has length {len(r)}, expected {n}")
            if vec_gcd(r) != 1:
                raise FanError(f"ray {k} = {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("duplicate rays")
        if not cones:
            raise FanError("fan has no maximal cones")
        for c in cones:
            if not c or len(set(c)) != len(c):
                raise FanError(f"cone {c} is empty or repeats a ray")
            if any(i < 0 or i >= len(rays) for i in c):
                raise FanError(f"cone {c} refers to a missing ray")
        if len(set(cones)) != len(cones):
            raise FanError("duplicate maximal cones")
        if self.ample_reference is not None and len(self.ample_reference) != len(rays):
            raise FanError("ample reference has the wrong number of coefficients")

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone: Sequence[int]) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in cone]

    def divisor(self, coeffs: Sequence[int]) -> "ToricDivisor":
        return ToricDivisor(self, tuple(coeffs))

    def ray_divisor(self, rho: int) -> "ToricDivisor":
        return ToricDivisor(self, tuple(int(i == rho) for i in range(self.num_rays)))

    def zero(self) -> "ToricDivisor":
        return ToricDivisor(self, (0,) * self.num_rays)

    def ample(self) -> "ToricDivisor | None":
        return None if self.ample_reference is None else ToricDivisor(self, self.ample_reference)


def rays_positively_span(rays: Sequence[Sequence[int]]) -> bool:
    """True iff the cone generated by ``rays`` is the whole space.

    Equivalent to ``{u : <v, u> >= 0 for all rays v} = {0}``.
    """
    return LatticePolytope(rays, [0] * len(rays)).is_bounded


# -- cone geometry --------------------------------------------------------------


@lru_cache(maxsize=None)
def cone_facets(fan: Fan, cone: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Facets of a full-dimensional cone as (ray subset, inner normal)."""
    n = fan.lattice_rank
    out = {}
    for sub in combinations(cone, n - 1):
        rows = fan.cone_rays(sub)
        if rank(rows) != n - 1:
            continue
        w = integer_kernel(rows, ncols=n)[0]
        vals = [dot(w, fan.rays[i]) for i in cone]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            w = tuple(-x for x in w)
        else:
            continue
        face = tuple(i for i in cone if dot(w, fan.rays[i]) == 0)
        out[face] = primitive(w)
    return tuple(sorted(out.items()))


def in_cone(fan: Fan, cone: tuple[int, ...], u: Sequence) -> bool:
    """Membership of ``u`` in a full-dimensional maximal cone."""
    return all(dot(w, u) >= 0 for _, w in cone_facets(fan, cone))


@dataclass(frozen=True)
class Wall:
    """An (n-1)-dimensional cone shared by two maximal cones."""

    rays: tuple[int, ...]
    cone: tuple[int, ...]
    other: tuple[int, ...]


@dataclass(frozen=True)
class FanReport:
    complete: bool
    simplicial: bool
    smooth: bool
    gorenstein: bool
    witnesses: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "complete": self.complete,
            "simplicial": self.simplicial,
            "smooth": self.smooth,
            "gorenstein": self.gorenstein,
            "witnesses": self.witnesses,
        }


def _cone_mult(rows: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``rows`` in its saturation."""
    snf = smith_normal_form(rows)
    out = 1
    for d in snf.invariant_factors:
        out *= d
    return out


@lru_cache(maxsize=None)
def check_fan(fan: Fan) -> FanReport:
    n = fan.lattice_rank
    wit = {}
    simplicial = True
    for c in fan.max_cones:
        if rank(fan.cone_rays(c)) != len(c):
            simplicial = False
            wit.setdefault("simplicial", {"cone": list(c), "reason": "rays are linearly dependent"})

    complete = True
    low = [c for c in fan.max_cones if rank(fan.cone_rays(c)) != n]
    if low:
        complete = False
        wit["complete"] = {"cone": list(low[0]), "reason": "maximal cone is not full-dimensional"}
    elif not rays_positively_span(fan.rays):
        complete = False
        u = _uncovered_direction(fan.rays)
        wit["complete"] = {"direction": list(u), "reason": "rays do not positively span"}
    else:
        sides = {}
        for c in fan.max_cones:
            for face, w in cone_facets(fan, c):
                sides.setdefault(face, []).append(w)
        for face, ws in sorted(sides.items()):
            if len(ws) != 2 or tuple(-x for x in ws[0]) != ws[1]:
                complete = False
                outward = [-x for x in ws[0]]
                wit["complete"] = {"wall": list(face), "direction": outward,
                                   "reason": "wall not shared by two cones on opposite sides"}
                break
        if complete:
            for c in fan.max_cones:
                inner = [sum(fan.rays[i][k] for i in c) for k in range(n)]
                for d in fan.max_cones:
                    if d != c and in_cone(fan, d, inner):
                        complete = False
                        wit["complete"] = {"cones": [list(c), list(d)], "reason": "cones overlap"}
                        break
                if not complete:
                    break

    smooth = simplicial
    for c in fan.max_cones:
        rows = fan.cone_rays(c)
        if not simplicial or len(c) != n or _cone_mult(rows) != 1:
            if simplicial:
                wit.setdefault("smooth", {"cone": list(c), "multiplicity": _cone_mult(rows)})
            else:
                wit.setdefault("smooth", {"cone": list(c), "reason": "not simplicial"})
            smooth = False
            break

    gorenstein = True
    for c in fan.max_cones:
        rows = fan.cone_rays(c)
        try:
            m = solve_integer(rows, [1] * len(c))
        except NonIntegralSolution:
            m = None
        if m is None:
            gorenstein = False
            q = solve_rational(rows, [1] * len(c))
            wit["gorenstein"] = {"cone": list(c), "m": None if q is None else [str(x) for x in q]}
            break
    return FanReport(complete, simplicial, smooth, gorenstein, wit)


def _uncovered_direction(rays) -> tuple[int, ...]:
    """A nonzero ``u`` with ``<v, u> >= 0`` for every ray: ``-u`` is not covered."""
    n = len(rays[0])
    P = LatticePolytope(rays, [0] * len(rays))
    if rank(rays) < n:
        return tuple(-x for x in integer_kernel(rays, ncols=n)[0])
    for sub in combinations(range(len(rays)), n - 1):
        ker = integer_kernel([rays[i] for i in sub], ncols=n)
        if len(ker) == 1:
            for s in (1, -1):
                d = tuple(s * x for x in ker[0])
                if all(dot(v, d) >= 0 for v in P.normals):
                    return tuple(-x for x in d)
    raise AssertionError("rays positively span")


@lru_cache(maxsize=None)
def walls(fan: Fan) -> tuple[Wall, ...]:
    faces = {}
    for c in fan.max_cones:
        for face, _ in cone_facets(fan, c):
            faces.setdefault(face, []).append(c)
    return tuple(Wall(face, cs[0], cs[1]) for face, cs in sorted(faces.items()) if len(cs) == 2)


# -- divisors -------------------------------------------------------------------


@dataclass(frozen=True)
class ToricDivisor:
    fan: Fan
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.fan.num_rays:
            raise InputError(f"divisor has {len(coeffs)} coefficients, fan has {self.fan.num_rays} rays")

    def _check(self, other):
        if not isinstance(other, ToricDivisor) or other.fan != self.fan:
            raise InputError("divisors live on different fans")

    def __add__(self, other: "ToricDivisor") -> "ToricDivisor":
        self._check(other)
        return ToricDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ToricDivisor") -> "ToricDivisor":
        self._check(other)
        return ToricDivisor(self.fan, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "ToricDivisor":
        if not isinstance(k, int):
            return NotImplemented
        return ToricDivisor(self.fan, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __repr__(self):
        return f"ToricDivisor({list(self.coeffs)})"

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def principal_shift(self, m: Sequence[int]) -> "ToricDivisor":
        """``D + div(chi^m)``, linearly equivalent to ``D``."""
        return ToricDivisor(self.fan, tuple(a + dot(v, m) for a, v in zip(self.coeffs, self.fan.rays)))


@lru_cache(maxsize=4096)
def divisor_polytope(D: ToricDivisor) -> LatticePolytope:
    return LatticePolytope(D.fan.rays, D.coeffs, D.fan.lattice_rank)


def sections(D: ToricDivisor) -> tuple[tuple[int, ...], ...]:
    """Lattice points of ``P(D)``, one per torus-invariant section."""
    return divisor_polytope(D).lattice_points


@lru_cache(maxsize=4096)
def cartier_data(D: ToricDivisor) -> dict[tuple[int, ...], tuple[int, ...]] | None:
    """``{cone: m_sigma}`` or None when ``D`` is not Cartier."""
    fan = D.fan
    out = {}
    for c in fan.max_cones:
        rows = fan.cone_rays(c)
        m = solve_rational(rows, [-D.coeffs[i] for i in c])
        if m is None or any(x.denominator != 1 for x in m):
            return None
        if rank(rows) < fan.lattice_rank:
            raise FanError("Cartier data needs full-dimensional cones")
        out[c] = tuple(int(x) for x in m)
    return out


def is_cartier(D: ToricDivisor) -> bool:
    return cartier_data(D) is not None


def cartier_index(D: ToricDivisor, limit: int = 1000) -> int | None:
    """Smallest ``k >= 1`` with ``kD`` Cartier (None past ``limit``)."""
    for k in range(1, limit + 1):
        if is_cartier(k * D):
            return k
    return None


def support_value(D: ToricDivisor, u: Sequence[int]) -> int:
    """``phi_D(u) = <m_sigma, u>`` for a cone containing ``u``."""
    data = cartier_data(D)
    if data is None:
        raise NotCartierError(f"{D} is not Cartier")
    for c, m in data.items():
        if in_cone(D.fan, c, u):
            return dot(m, u)
    raise FanError(f"{list(u)} lies in no maximal cone")


def _nef_slacks(D: ToricDivisor):
    data = cartier_data(D)
    if data is None:
        return None
    return {c: [dot(m, v) + a for v, a in zip(D.fan.rays, D.coeffs)] for c, m in data.items()}


def is_nef(D: ToricDivisor) -> bool:
    sl = _nef_slacks(D)
    return sl is not None and all(x >= 0 for row in sl.values() for x in row)


def is_basepoint_free(D: ToricDivisor) -> bool:
    """On a complete toric variety a Cartier divisor is basepoint free iff nef."""
    return is_nef(D)


def is_ample(D: ToricDivisor) -> bool:
    sl = _nef_slacks(D)
    if sl is None:
        return False
    for c, row in sl.items():
        for rho, x in enumerate(row):
            if x < 0 or (x == 0 and rho not in c):
                return False
    return True


def is_big(D: ToricDivisor) -> bool:
    P = divisor_polytope(D)
    return not P.is_empty and P.is_full_dimensional


def is_effective(D: ToricDivisor) -> bool:
    """Linearly equivalent to an effective divisor, i.e. ``P(D)`` has a lattice point."""
    return bool(sections(D))


@dataclass(frozen=True)
class PositivityReport:
    cartier: bool
    nef: bool
    ample: bool
    big: bool
    basepoint_free: bool
    reason: str = ""

    def as_dict(self):
        return {k: getattr(self, k) for k in ("cartier", "nef", "ample", "big", "basepoint_free", "reason")}


def positivity(D: ToricDivisor) -> PositivityReport:
    if not is_cartier(D):
        return PositivityReport(False, False, False, is_big(D), False, "not Cartier")
    nef = is_nef(D)
    return PositivityReport(True, nef, is_ample(D), is_big(D), nef)


# -- class group ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassGroup:
    """``Cl(X) = Z^rays / iota(M)`` as ``Z^rank`` plus torsion."""

    rank: int
    torsion: tuple[int, ...]
    projection: tuple[tuple[int, ...], ...]
    torsion_rows: tuple[int, ...]
    free_rows: tuple[int, ...]

    def describe(self) -> str:
        parts = ["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class DivisorClass:
    free: tuple[int, ...]
    torsion: tuple[int, ...]


@lru_cache(maxsize=None)
def class_group(fan: Fan) -> ClassGroup:
    snf = smith_normal_form(fan.rays)
    diag = snf.diagonal
    r = snf.rank
    tors = tuple(i for i in range(r) if diag[i] > 1)
    free = tuple(range(r, fan.num_rays))
    return ClassGroup(len(free), tuple(diag[i] for i in tors), snf.U, tors, free)


def divisor_class(D: ToricDivisor) -> DivisorClass:
    cl = class_group(D.fan)
    img = mat_vec(cl.projection, D.coeffs)
    free = tuple(img[i] for i in cl.free_rows)
    tors = tuple(img[i] % d for i, d in zip(cl.torsion_rows, cl.torsion))
    return DivisorClass(free, tors)


def linearly_equivalent(D1: ToricDivisor, D2: ToricDivisor) -> bool:
    D1._check(D2)
    return divisor_class(D1) == divisor_class(D2)


def principal_witness(D1: ToricDivisor, D2: ToricDivisor) -> tuple[int, ...] | None:
    """``m`` with ``D1 - D2 = div(chi^m)``, or None."""
    diff = [a - b for a, b in zip(D1.coeffs, D2.coeffs)]
    try:
        m = solve_integer(D1.fan.rays, diff)
    except NonIntegralSolution:
        return None
    return None if m is None else tuple(m)


def class_coordinates(D: ToricDivisor, basis: Sequence[ToricDivisor]) -> list[Fraction]:
    """Rational ``x`` with ``D = sum x_i B_i`` in ``Cl(X) (x) Q``."""
    cols = [divisor_class(B).free for B in basis]
    target = divisor_class(D).free
    A = [[c[k] for c in cols] for k in range(len(target))]
    x = solve_rational(A, list(target)) if A else []
    if x is None:
        raise InputError(f"{D} is not in the span of the given classes")
    return x


def canonical_divisor(fan: Fan) -> ToricDivisor:
    return ToricDivisor(fan, (-1,) * fan.num_rays)


# -- curves on walls ------------------------------------------------------------


def curve_degree(D: ToricDivisor, wall: Wall) -> Fraction:
    """Intersection of a Cartier divisor with the torus-invariant curve of a wall."""
    data = cartier_data(D)
    if data is None:
        raise NotCartierError(f"{D} is not Cartier")
    fan = D.fan
    (rho,) = [i for i in wall.cone if i not in wall.rays]
    diff = [a - b for a, b in zip(data[wall.other], data[wall.cone])]
    mult_tau = _cone_mult(fan.cone_rays(wall.rays))
    mult_sigma = abs(det(fan.cone_rays(wall.cone)))
    return Fraction(dot(diff, fan.rays[rho]) * mult_tau, mult_sigma)


# -- section matrix (Markov setup) ----------------------------------------------


@dataclass(frozen=True)
class SectionMatrix:
    """Presentation ``A`` of the cokernel of ``iota'`` plus the fiber map."""

    fan: Fan
    basis: tuple[tuple[int, ...], ...]
    A: tuple[tuple[int, ...], ...]
    iota: tuple[tuple[int, ...], ...]

    def extended_coeffs(self, D: ToricDivisor) -> tuple[int, ...]:
        """``(a', a)`` with ``a'_i = -phi_D(v_i)``."""
        if D.fan != self.fan:
            raise InputError("divisor on another fan")
        return tuple(-support_value(D, v) for v in self.basis) + D.coeffs

    def b(self, D: ToricDivisor) -> tuple[int, ...]:
        return tuple(mat_vec(self.A, self.extended_coeffs(D)))

    def lift(self, D: ToricDivisor, u: Sequence[int]) -> tuple[int, ...]:
        """Image of a lattice point of ``P(D)`` in the fiber ``P(b(D))``."""
        return tuple(x + c for x, c in zip(mat_vec(self.iota, u), self.extended_coeffs(D)))


def section_matrix(fan: Fan, basis: Sequence[Sequence[int]]) -> SectionMatrix:
    n = fan.lattice_rank
    basis = tuple(tuple(int(x) for x in v) for v in basis)
    if len(basis) != n or any(len(v) != n for v in basis) or abs(det(basis)) != 1:
        raise InputError("section-matrix basis must be a lattice basis of N")
    for v in basis:
        for r in fan.rays:
            if rank([v, r]) == 1 and dot(v, r) > 0:
                raise InputError(f"basis vector {list(v)} lies on a ray of the fan")
    iota = basis + fan.rays
    snf = smith_normal_form(iota)
    A = tuple(snf.U[i] for i in range(n, len(iota)))
    return SectionMatrix(fan, basis, A, iota)


def default_section_basis(fan: Fan) -> tuple[tuple[int, ...], ...]:
    """First lattice basis (in a fixed search order) avoiding every ray."""
    n = fan.lattice_rank
    on_ray = lambda v: any(rank([v, r]) == 1 and dot(v, r) > 0 for r in fan.rays)
    for bound in (1, 2, 3):
        cands = [v for v in product(range(-bound, bound + 1), repeat=n) if any(v) and not on_ray(v)]
        cands.sort(key=lambda v: (sum(abs(x) for x in v), [-x for x in v]))
        for trip in combinations(cands, n):
            if abs(det(trip)) == 1:
                return tuple(trip)
    raise FanError("no ray-avoiding lattice basis found")


# -- normal fans ----------------------------------------------------------------


def normal_fan(P: LatticePolytope) -> tuple[Fan, ToricDivisor]:
    """Normal fan of a full-dimensional lattice polytope and its divisor.

    Rays are the primitive inner facet normals; the divisor has the facet
    offsets as coefficients, so ``P(D) = P``.
    """
    if not P.is_full_dimensional:
        raise InputError("normal fan of a lower-dimensional polytope")
    idx = P.irredundant
    rays, coeffs = [], []
    for i in idx:
        g = vec_gcd(P.normals[i])
        rays.append(tuple(x // g for x in P.normals[i]))
        off = Fraction(P.offsets[i]) / g
        if off.denominator != 1:
            raise InputError("polytope is not a lattice polytope")
        coeffs.append(int(off))
    cones = [tuple(k for k, i in enumerate(idx) if P.slack(i, v) == 0) for v in P.vertices]
    fan = Fan(P.ambient_dim, tuple(rays), tuple(cones))
    return fan, ToricDivisor(fan, tuple(coeffs))


def vertex_cone_correspondence(D: ToricDivisor) -> bool:
    """For ample ``D``: ``sigma -> m_sigma`` is a bijection onto the vertices of ``P(D)``."""
    data = cartier_data(D)
    if data is None:
        return False
    ms = {m for m in data.values()}
    return len(ms) == len(data) and ms == set(divisor_polytope(D).vertices)
