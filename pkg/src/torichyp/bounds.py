"""Intersection numbers on toric threefolds and genus lower bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import ceil, gcd
from typing import Sequence

from .errors import (
    EmptySectionsError,
    HypothesisError,
    InputError,
    NoFacetError,
    NotCartierError,
    NotNefError,
    SearchBoundError,
)
from .lattice import rank
from .sections import (
    ConnectedSectionsReport,
    alcoved_fan_check,
    dual_basis_moves,
    has_connected_sections,
    is_idp,
)
from .toric import (
    Fan,
    ToricDivisor,
    canonical_divisor,
    cartier_data,
    cartier_index,
    check_fan,
    class_coordinates,
    curve_degree,
    divisor_class,
    divisor_polytope,
    is_ample,
    is_cartier,
    is_nef,
    linearly_equivalent,
    sections,
    walls,
)


# -- intersection numbers -------------------------------------------------------


def _require_threefold(fan: Fan):
    if fan.lattice_rank != 3:
        raise InputError("intersection numbers are implemented for threefolds only")


@lru_cache(maxsize=65536)
def _nef_triple(a: ToricDivisor, b: ToricDivisor, c: ToricDivisor) -> Fraction:
    """Mixed volume form: alternating sum of volumes over nonempty subsets."""
    total = Fraction(0)
    Ds = (a, b, c)
    for size in (1, 2, 3):
        for S in combinations(range(3), size):
            acc = Ds[S[0]]
            for i in S[1:]:
                acc = acc + Ds[i]
            total += (-1) ** (3 - size) * divisor_polytope(acc).volume
    return total


def nef_decomposition(D: ToricDivisor, H0: ToricDivisor | None = None) -> tuple[ToricDivisor, ToricDivisor]:
    """``(D + k H0, k H0)`` with the least ``k >= 0`` making ``D + k H0`` nef.

    The least ``k`` is read off the nef inequalities directly: each
    ``(sigma, rho)`` with ``rho`` outside ``sigma`` needs
    ``slack_D + k slack_H0 >= 0`` and ``slack_H0 > 0`` there.
    """
    H0 = H0 if H0 is not None else D.fan.ample()
    if H0 is None:
        raise InputError("no ample reference divisor registered for this fan")
    dD, dH = cartier_data(D), cartier_data(H0)
    if dD is None:
        raise NotCartierError(f"{D} is not Cartier")
    if dH is None or not is_ample(H0):
        raise InputError("reference divisor is not ample")
    k = 0
    fan = D.fan
    for c in fan.max_cones:
        for rho, v in enumerate(fan.rays):
            sD = sum(x * y for x, y in zip(dD[c], v)) + D.coeffs[rho]
            if sD < 0:
                sH = sum(x * y for x, y in zip(dH[c], v)) + H0.coeffs[rho]
                k = max(k, ceil(Fraction(-sD, sH)))
    A, B = D + k * H0, k * H0
    assert is_nef(A) and is_nef(B)
    return A, B


def triple_intersection(D1: ToricDivisor, D2: ToricDivisor, D3: ToricDivisor) -> int:
    """``D1.D2.D3`` for Cartier divisors on a complete threefold."""
    _require_threefold(D1.fan)
    Ds = (D1, D2, D3)
    for D in Ds:
        D1._check(D)
        if not is_cartier(D):
            raise NotCartierError(f"{D} is not Cartier")
    if all(is_nef(D) for D in Ds):
        val = _nef_triple(*Ds)
    else:
        parts = [((D, None) if is_nef(D) else nef_decomposition(D)) for D in Ds]
        val = Fraction(0)
        for choice in product((0, 1), repeat=3):
            sign = 1
            args = []
            for (A, B), pick in zip(parts, choice):
                if pick:
                    if B is None:
                        break
                    sign = -sign
                    args.append(B)
                else:
                    args.append(A)
            else:
                val += sign * _nef_triple(*args)
    if val.denominator != 1:
        raise AssertionError(f"non-integral intersection number {val}")
    return int(val)


class IntersectionForm:
    """Trilinear form on ``Cl(X) (x) Q`` tabulated on a basis of nef divisors.

    Exact and much faster than re-running volume computations when many
    classes are intersected on one fan.
    """

    def __init__(self, fan: Fan, basis: Sequence[ToricDivisor] | None = None):
        _require_threefold(fan)
        self.fan = fan
        self.basis = list(basis) if basis is not None else self._default_basis(fan)
        free = [divisor_class(B).free for B in self.basis]
        r = len(divisor_class(fan.zero()).free)
        if len(self.basis) != r or rank(free) != r:
            raise InputError("intersection basis must be a basis of Cl(X) (x) Q")
        k = len(self.basis)
        self.table = {}
        for i in range(k):
            for j in range(i, k):
                for l in range(j, k):
                    self.table[(i, j, l)] = triple_intersection(self.basis[i], self.basis[j], self.basis[l])

    @staticmethod
    def _default_basis(fan: Fan) -> list[ToricDivisor]:
        H0 = fan.ample()
        if H0 is None:
            raise InputError("no ample reference divisor registered for this fan")
        out = [H0]
        for rho in range(fan.num_rays):
            D = fan.ray_divisor(rho)
            k = cartier_index(D)
            if k is None:
                continue
            A, _ = nef_decomposition(k * D, H0)
            trial = out + [A]
            if rank([divisor_class(B).free for B in trial]) == len(trial):
                out = trial
        return out

    def coords(self, D: ToricDivisor) -> list[Fraction]:
        return class_coordinates(D, self.basis)

    def value(self, x: Sequence, y: Sequence, z: Sequence) -> Fraction:
        """Evaluate on coordinate vectors."""
        total = Fraction(0)
        k = len(self.basis)
        for i in range(k):
            if not x[i]:
                continue
            for j in range(k):
                if not y[j]:
                    continue
                for l in range(k):
                    if z[l]:
                        total += x[i] * y[j] * z[l] * self.table[tuple(sorted((i, j, l)))]
        return total

    def triple(self, D1: ToricDivisor, D2: ToricDivisor, D3: ToricDivisor) -> Fraction:
        return self.value(self.coords(D1), self.coords(D2), self.coords(D3))


# -- configurations and curve classes ---------------------------------------------


@dataclass(frozen=True)
class Config:
    """A surface class ``D`` with divisors ``E_1..E_l`` and checked hypotheses."""

    D: ToricDivisor
    Es: tuple[ToricDivisor, ...]
    report: ConnectedSectionsReport | None = None
    hypotheses: dict = field(default_factory=dict, compare=False)

    @property
    def connected_sections_verified(self) -> bool:
        return self.report is not None and self.report.verdict

    @property
    def failed_hypotheses(self) -> list[str]:
        return [k for k, v in self.hypotheses.items() if not v]

    @classmethod
    def build(cls, D: ToricDivisor, Es: Sequence[ToricDivisor], check_sections: bool = True) -> "Config":
        Es = tuple(Es)
        if not Es:
            raise InputError("configuration needs at least one E_i")
        hyp = {}
        for i, E in enumerate(Es, 1):
            hyp[f"E{i}_effective"] = bool(sections(E))
            hyp[f"E{i}_nontrivial"] = not linearly_equivalent(E, D.fan.zero())
            hyp[f"E{i}_basepoint_free"] = is_nef(E)
        hyp["D_big"] = divisor_polytope(D).is_full_dimensional if sections(D) else False
        hyp["X_gorenstein"] = check_fan(D.fan).gorenstein
        report = None
        if check_sections and all(hyp[f"E{i}_effective"] for i in range(1, len(Es) + 1)):
            report = has_connected_sections(D, Es)
        hyp["connected_sections"] = report is not None and report.verdict
        return cls(D, Es, report, hyp)

    def require(self):
        bad = self.failed_hypotheses
        if bad:
            raise HypothesisError("hypotheses not met: " + ", ".join(bad))


@dataclass(frozen=True)
class CompleteIntersection:
    """The 1-cycle ``scale * (surface . divisor)``.

    Rational multiples cover curves that are complete intersections with a
    Q-divisor: store an integral divisor and a common denominator.  Any
    product of two divisor classes is accepted, so curve-cone generators that
    are not cut out on the surface (e.g. ``F.F`` on a resolution) fit too.
    """

    surface: ToricDivisor
    divisor: ToricDivisor
    scale: Fraction = Fraction(1)

    @classmethod
    def from_coords(cls, surface: ToricDivisor, generators: Sequence[ToricDivisor], coords: Sequence) -> "CompleteIntersection":
        coords = [Fraction(x) for x in coords]
        den = 1
        for x in coords:
            den = den * x.denominator // gcd(den, x.denominator)
        F = surface.fan.zero()
        for g, x in zip(generators, coords):
            F = F + int(x * den) * g
        return cls(surface, F, Fraction(1, den))


@dataclass(frozen=True)
class BoundaryCurve:
    """``S . D_rho`` for the surface class and a ray."""

    ray: int


@dataclass(frozen=True)
class GenusBound:
    bound: Fraction
    index: int | None
    value: Fraction | None
    values: tuple = ()
    kind: str = "theorem"

    def as_dict(self):
        return {
            "kind": self.kind,
            "bound": str(self.bound),
            "index": self.index,
            "value": None if self.value is None else str(self.value),
            "values": [str(v) for v in self.values],
        }


def _intersect(form: IntersectionForm | None, a, b, c) -> Fraction:
    return form.triple(a, b, c) if form is not None else Fraction(triple_intersection(a, b, c))


def curve_dot(C: CompleteIntersection, L: ToricDivisor, form: IntersectionForm | None = None) -> Fraction:
    return C.scale * _intersect(form, C.surface, C.divisor, L)


def genus_lower_bound(config: Config, C, form: IntersectionForm | None = None) -> GenusBound:
    """``min_i C.(E_i + K)/2 + 1`` for curves off the toric boundary.

    Boundary curves are routed to :func:`boundary_curve_genus`, whose value
    is exact rather than a bound.
    """
    config.require()
    if isinstance(C, BoundaryCurve):
        g = boundary_curve_genus(config.D, C.ray)
        return GenusBound(Fraction(g), None, None, (), "boundary")
    if not isinstance(C, CompleteIntersection):
        raise InputError("unknown curve class")
    K = canonical_divisor(config.D.fan)
    vals = tuple(curve_dot(C, E + K, form) for E in config.Es)
    best = min(range(len(vals)), key=lambda i: vals[i])
    return GenusBound(vals[best] / 2 + 1, best, vals[best], vals)


def theorem1_bound(D: ToricDivisor, m: int, C: CompleteIntersection, form: IntersectionForm | None = None) -> GenusBound:
    """Bound for ``S`` very general in ``|mD|`` with ``(D, D)`` IDP."""
    if not isinstance(m, int) or m < 2:
        raise InputError("m must be an integer >= 2")
    if not is_nef(D) or not is_idp(D, D):
        raise HypothesisError(f"({D}, {D}) is not an IDP pair")
    config = Config.build(m * D, [(m - 1) * D])
    if C.surface != m * D:
        raise InputError("curve class must live on a surface in |mD|")
    return genus_lower_bound(config, C, form)


def boundary_curve_genus(D: ToricDivisor, rho: int) -> int:
    """Genus of ``S . D_rho``: interior lattice points of the facet of ``P(D)``."""
    if not is_nef(D):
        raise HypothesisError(f"{D} is not a basepoint free Cartier divisor")
    P = divisor_polytope(D)
    if not P.is_full_dimensional:
        raise NoFacetError("polytope is not full-dimensional")
    f = P.facet_for_inequality(rho)
    if f is None:
        raise NoFacetError(f"ray {rho} does not give a facet of P(D)")
    return f.interior_count


def boundary_genera(D: ToricDivisor) -> dict[int, int]:
    """``{ray: genus}`` for every ray that cuts out a facet."""
    out = {}
    for rho in range(D.fan.num_rays):
        try:
            out[rho] = boundary_curve_genus(D, rho)
        except NoFacetError:
            pass
    return out


# -- effective constructions ------------------------------------------------------


def lattice_length(p, q) -> int:
    g = 0
    for a, b in zip(p, q):
        g = gcd(g, int(b - a))
    return g


def max_edge_length(D: ToricDivisor) -> int:
    P = divisor_polytope(D)
    if not P.is_lattice:
        raise InputError("edge lengths need a lattice polytope")
    return max((lattice_length(p, q) for p, q in P.edges), default=0)


@dataclass(frozen=True)
class E2Result:
    divisor: ToricDivisor
    delta: int
    multiplier: int
    min_curve_degree: Fraction


def compute_E2(nef_generators: Sequence[ToricDivisor]) -> E2Result:
    """``E_2 = t (D_1 + ... + D_r)`` with ``C.E_2 >= 4 delta`` on invariant curves.

    ``delta`` is the longest lattice edge of any single ``P(D_i)`` and ``t``
    starts at 4; it is raised only if some invariant curve would violate the
    inequality.
    """
    if not nef_generators:
        raise InputError("no generators")
    for D in nef_generators:
        if not is_nef(D):
            raise NotNefError(f"{D} is not nef")
    total = nef_generators[0].fan.zero()
    for D in nef_generators:
        total = total + D
    delta = max(max_edge_length(D) for D in nef_generators)
    degs = [curve_degree(total, w) for w in walls(total.fan)]
    low = min(degs)
    if low <= 0:
        raise HypothesisError("sum of generators is not ample; no multiple meets C.E2 >= 4 delta")
    t = max(4, ceil(Fraction(4 * delta) / low))
    E2 = t * total
    assert all(curve_degree(E2, w) >= 4 * delta for w in walls(total.fan))
    return E2Result(E2, delta, t, low)


def compute_E1(G, H: ToricDivisor, max_k: int = 200) -> ToricDivisor:
    """Least ``kH`` (``k >= 1``) such that a lattice translate of ``P(kH)`` contains ``G``."""
    from .polytope import LatticePolytope

    if not is_ample(H):
        raise HypothesisError(f"{H} is not ample")
    G = [tuple(g) for g in G] or [(0,) * H.fan.lattice_rank]
    fan = H.fan
    mins = [min(sum(a * b for a, b in zip(v, g)) for g in G) for v in fan.rays]
    for k in range(1, max_k + 1):
        T = LatticePolytope(fan.rays, [k * a + m for a, m in zip(H.coeffs, mins)], fan.lattice_rank)
        if T.lattice_points:
            return k * H
    raise SearchBoundError(f"no k <= {max_k} works")


@dataclass(frozen=True)
class D0Result:
    D0: ToricDivisor
    E1: ToricDivisor
    E2: E2Result


def compute_D0(fan: Fan, nef_generators: Sequence[ToricDivisor], G=None, H: ToricDivisor | None = None) -> D0Result:
    """``D_0 = E_1 + E_2``.  ``G`` defaults to ``+-e_i^*`` on alcoved fans."""
    H = H if H is not None else fan.ample()
    if H is None:
        raise InputError("no ample divisor given or registered")
    if G is None:
        if not alcoved_fan_check(fan):
            raise HypothesisError("fan is not alcoved; supply Markov moves G")
        G = dual_basis_moves(fan.lattice_rank)
    E1 = compute_E1(G, H)
    E2 = compute_E2(nef_generators)
    return D0Result(E1 + E2.divisor, E1, E2)


def compute_H0(fan: Fan, D0: ToricDivisor, H: ToricDivisor | None = None, max_k: int = 60) -> ToricDivisor:
    """Least multiple ``H_0 = k H`` of an ample divisor satisfying the three checks.

    ``H_0 - D_0`` and ``H_0 - H - D_0 + K`` ample, and every facet of
    ``P(H_0)`` with at least two interior lattice points.
    """
    H = H if H is not None else fan.ample()
    if H is None:
        raise InputError("no ample divisor given or registered")
    K = canonical_divisor(fan)
    for k in range(1, max_k + 1):
        H0 = k * H
        if not (is_ample(H0 - D0) and is_ample(H0 - H - D0 + K)):
            continue
        if all(f.interior_count >= 2 for f in divisor_polytope(H0).facets()):
            return H0
    raise SearchBoundError(f"no multiple k <= {max_k} of {H} works")
