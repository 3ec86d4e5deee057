"""Hyperbolicity verdicts from genus bounds, boundary genera and curve cones.

A surface is certified when ``2g - 2 >= eps * deg`` holds on every extreme
ray of its curve cone and on every boundary curve, with ``eps > 0``.  Because
both sides are linear in the cone coordinates, checking extreme rays is
enough.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Sequence

from .bounds import (
    CompleteIntersection,
    Config,
    IntersectionForm,
    boundary_genera,
)
from .errors import InputError
from .fixtures import Fixture, get as get_fixture
from .lattice import clear_denominators, integer_kernel
from .toric import Fan, ToricDivisor, canonical_divisor, is_nef

CERTIFIED = "CERTIFIED"
REFUTED = "REFUTED"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class CurveCone:
    """Curve classes ``sum x_j g_j`` with ``x`` in a rational polyhedral cone.

    Each generator ``g_j`` is a 1-cycle (usually ``S . F_j``).  The cone is cut
    out by ``x >= 0`` (when ``nonnegative``) and by ``<c, x> >= 0`` for each
    row ``c`` of ``constraints``.  ``nl_asserted`` records that every curve
    on the surface has its class in the cone; it is taken on trust, with the
    justification in ``citation``.
    """

    names: tuple[str, ...]
    generators: tuple[CompleteIntersection, ...]
    constraints: tuple[tuple[Fraction, ...], ...] = ()
    nonnegative: bool = True
    boundary: tuple[int, ...] = ()
    nl_asserted: bool = False
    citation: str = ""

    def __post_init__(self):
        if len(self.names) != len(self.generators) or not self.generators:
            raise InputError("curve cone needs one name per generator")

    def rows(self) -> list[tuple[Fraction, ...]]:
        k = len(self.generators)
        out = [tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)] if self.nonnegative else []
        return out + [tuple(Fraction(c) for c in row) for row in self.constraints]

    def extreme_rays(self) -> list[tuple[int, ...]]:
        """Extreme rays of a pointed cone, by checking every (k-1)-subset of rows."""
        rows = self.rows()
        k = len(self.generators)
        if k == 1:
            return [(1,)] if all(r[0] >= 0 for r in rows) else []
        found = []
        for sub in combinations(rows, k - 1):
            ints = [clear_denominators(r) for r in sub]
            ker = integer_kernel(ints, ncols=k)
            if len(ker) != 1:
                continue
            for s in (1, -1):
                x = tuple(s * v for v in ker[0])
                if all(sum(c * v for c, v in zip(r, x)) >= 0 for r in rows):
                    x = clear_denominators(x)
                    if x not in found:
                        found.append(x)
        return sorted(found, reverse=True)

    def cycle(self, x: Sequence) -> list[tuple[Fraction, CompleteIntersection]]:
        return [(Fraction(c), g) for c, g in zip(x, self.generators) if c]


@dataclass(frozen=True)
class LedgerRow:
    kind: str  # "ray" or "boundary"
    label: str
    value: Fraction  # lower bound for 2g - 2
    degree: Fraction
    genus: Fraction | None = None

    @property
    def ratio(self) -> Fraction | None:
        return None if self.degree == 0 else self.value / self.degree

    def as_dict(self):
        return {
            "kind": self.kind,
            "label": self.label,
            "2g-2": str(self.value),
            "deg": str(self.degree),
            "ratio": None if self.ratio is None else str(self.ratio),
            "genus": None if self.genus is None else str(self.genus),
        }


@dataclass(frozen=True)
class Verdict:
    status: str
    epsilon: Fraction | None = None
    witness: dict | None = None
    reasons: tuple[str, ...] = ()
    ledger: tuple[LedgerRow, ...] = ()

    def as_dict(self):
        return {
            "verdict": self.status,
            "epsilon": None if self.epsilon is None else str(self.epsilon),
            "witness": self.witness,
            "reasons": list(self.reasons),
            "ledger": [r.as_dict() for r in self.ledger],
        }


@lru_cache(maxsize=None)
def _form(fan: Fan, basis: tuple[ToricDivisor, ...] | None) -> IntersectionForm:
    return IntersectionForm(fan, basis)


def _dot(form, cyc: CompleteIntersection, L: ToricDivisor) -> Fraction:
    return cyc.scale * form.triple(cyc.surface, cyc.divisor, L)


def epsilon_ledger(config: Config, H: ToricDivisor, cone: CurveCone, form: IntersectionForm | None = None) -> list[LedgerRow]:
    """Per extreme ray and per boundary curve: (lower bound for 2g-2, degree)."""
    form = form or _form(H.fan, None)
    K = canonical_divisor(H.fan)
    rows = []
    for x in cone.extreme_rays():
        parts = cone.cycle(x)
        vals = [sum(c * _dot(form, g, E + K) for c, g in parts) for E in config.Es]
        deg = sum(c * _dot(form, g, H) for c, g in parts)
        label = "(" + ",".join(str(v) for v in x) + ")"
        rows.append(LedgerRow("ray", label, min(vals), deg))
    genera = boundary_genera(config.D) if is_nef(config.D) else {}
    for rho in cone.boundary:
        if rho not in genera:
            continue
        g = genera[rho]
        deg = form.triple(config.D, config.D.fan.ray_divisor(rho), H)
        rows.append(LedgerRow("boundary", f"ray{rho}", Fraction(2 * g - 2), deg, Fraction(g)))
    return rows


def certify(config: Config, H: ToricDivisor, cone: CurveCone, form: IntersectionForm | None = None) -> Verdict:
    """CERTIFIED(eps), REFUTED(boundary curve of genus <= 1) or UNKNOWN(reasons)."""
    if is_nef(config.D):
        genera = boundary_genera(config.D)
        low = [(g, rho) for rho, g in genera.items() if rho in cone.boundary and g <= 1]
        if low:
            g, rho = min(low)
            return Verdict(REFUTED, witness={"ray": rho, "genus": g})
    else:
        return Verdict(UNKNOWN, reasons=("hypothesis:D_basepoint_free",))
    if not cone.nl_asserted:
        return Verdict(UNKNOWN, reasons=("nl-not-asserted",))
    bad = config.failed_hypotheses
    if bad:
        return Verdict(UNKNOWN, reasons=tuple("hypothesis:" + b for b in bad))
    ledger = tuple(epsilon_ledger(config, H, cone, form))
    reasons = []
    ratios = []
    for row in ledger:
        if row.degree > 0:
            ratios.append(row.ratio)
            if row.ratio <= 0:
                reasons.append(f"nonpositive-ratio:{row.kind}:{row.label}")
        elif row.degree == 0:
            # curves of degree zero only need 2g - 2 >= 0
            if row.value < 0:
                reasons.append(f"zero-degree-ray:{row.label}")
        else:
            reasons.append(f"negative-degree:{row.label}")
    if not ratios and not reasons:
        reasons.append("no-positive-degree-curves")
    if reasons:
        return Verdict(UNKNOWN, reasons=tuple(reasons), ledger=ledger)
    return Verdict(CERTIFIED, epsilon=min(ratios), ledger=ledger)


# -- families -----------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    config: Config
    H: ToricDivisor
    cone: CurveCone
    form: IntersectionForm | None = None
    note: str = ""


@dataclass(frozen=True)
class Family:
    """A parametrised family of surfaces with the paper-stated expectation."""

    name: str
    params: tuple[str, ...]
    build: Callable[..., Cell]
    expected: Callable[..., str]
    description: str = ""


def _standard_cell(fx: Fixture, D, Es, H, gens, names, nl, citation, constraints=()) -> Cell:
    config = Config.build(D, Es)
    cone = CurveCone(
        tuple(names),
        tuple(CompleteIntersection(D, g) for g in gens),
        tuple(constraints),
        True,
        tuple(range(fx.fan.num_rays)),
        nl,
        citation,
    )
    return Cell(config, H, cone, _form(fx.fan, tuple(fx.nef)))


def _p2xp1(a: int, b: int) -> Cell:
    fx = get_fixture("P2xP1")
    A, B = fx.D("A"), fx.D("B")
    return _standard_cell(
        fx, a * A + b * B, [(a - 1) * A + (b - 1) * B], A + B, [A, B], ("c", "d"),
        a >= 4 and b >= 3, "Noether-Lefschetz for O(a,b), asserted for a>=4, b>=3",
    )


def _p2xp1_expected(a: int, b: int) -> str:
    if b <= 1 or a <= 3:
        return REFUTED
    return CERTIFIED if a >= 5 and b >= 3 else UNKNOWN


def _p1cubed(a: int, b: int, c: int) -> Cell:
    fx = get_fixture("P1cubed")
    A, B, C = fx.D("A"), fx.D("B"), fx.D("C")
    return _standard_cell(
        fx, a * A + b * B + c * C, [(a - 1) * A + (b - 1) * B + (c - 1) * C], A + B + C,
        [A, B, C], ("d", "e", "f"),
        min(a, b, c) >= 3, "Noether-Lefschetz for O(a,b,c), asserted for a,b,c>=3",
    )


def _p1cubed_expected(a: int, b: int, c: int) -> str:
    x, y, z = sorted((a, b, c), reverse=True)
    if z <= 1 or (y == 2 and z == 2):
        return REFUTED
    if (y > z == 3) or z >= 4:
        return CERTIFIED
    return UNKNOWN


def _p3_cell(a: int) -> Cell:
    fx = get_fixture("P3")
    H = fx.D("H")
    return _standard_cell(
        fx, a * H, [(a - 1) * H], H, [H], ("c",),
        a >= 4, "Noether-Lefschetz for surfaces of degree >= 4 in P3",
    )


def _blp3(a: int, b: int) -> Cell:
    if b == 0:
        cell = _p3_cell(a)
        return Cell(cell.config, cell.H, cell.cone, cell.form, "b=0 evaluated on P3")
    fx = get_fixture("BlP3")
    H, L, E = fx.D("H"), fx.D("L"), fx.D("E")
    return _standard_cell(
        fx, a * H + b * L, [(a - 1) * H + b * L], H + L, [L, E], ("c", "d"),
        a >= 2 and b >= 2, "Noether-Lefschetz on Bl_pt P3 (Picard rank two), asserted for a,b>=2",
    )


def _blp3_expected(a: int, b: int) -> str:
    if b == 0:
        if a <= 3:
            return REFUTED
        return CERTIFIED if a >= 6 else UNKNOWN
    if a < 2 or b < 4:
        return REFUTED
    if a >= 3 or b >= 7:
        return CERTIFIED
    return UNKNOWN


def _wps(n: int, m: int) -> Cell:
    """``mH`` on P(1,1,1,n), evaluated on the resolution.

    The curve cone is the Mori cone of the resolution, spanned by ``F.F``
    (degree one) and ``E.F`` (contracted); for ``n = 2`` curves that are not
    contracted also satisfy ``C.(H - 2F) >= 0``.
    """
    if n < 2:
        raise InputError("WPS family needs n >= 2")
    fx = get_fixture(f"WPS{n}resolved")
    H, F, E = fx.D("H"), fx.D("F"), fx.D("E")
    form = _form(fx.fan, tuple(fx.nef))
    D = m * H
    config = Config.build(D, [(m - 1) * H])
    gens = (CompleteIntersection(F, F), CompleteIntersection(E, F))
    constraints = ()
    if n == 2:
        M = H - 2 * F
        constraints = (tuple(_dot(form, g, M) for g in gens),)
    cone = CurveCone(
        ("c", "d"), gens, constraints, True, tuple(range(fx.fan.num_rays)), True,
        "Mori cone of the resolution is spanned by F.F and E.F (dual to the nef cone <H, F>)",
    )
    return Cell(config, H, cone, form)


def _wps_expected(n: int, m: int) -> str:
    if m == 1 or (n == 2 and m == 2):
        return REFUTED
    if (n >= 3 and m >= 4) or (n == 2 and m >= 5):
        return CERTIFIED
    return UNKNOWN


FAMILIES = {
    "P2xP1": Family("P2xP1", ("a", "b"), _p2xp1, _p2xp1_expected, "O(a,b) on P2 x P1"),
    "P1cubed": Family("P1cubed", ("a", "b", "c"), _p1cubed, _p1cubed_expected, "O(a,b,c) on P1 x P1 x P1"),
    "BlP3": Family("BlP3", ("a", "b"), _blp3, _blp3_expected, "aH + b(H-E) on Bl_pt P3"),
    "WPS": Family("WPS", ("n", "m"), _wps, _wps_expected, "mH on P(1,1,1,n)"),
}


def family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise InputError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None


def certify_cell(name: str, **params: int) -> Verdict:
    fam = family(name)
    missing = [p for p in fam.params if p not in params]
    if missing or set(params) - set(fam.params):
        raise InputError(f"{name} takes parameters {','.join(fam.params)}")
    cell = fam.build(**params)
    return certify(cell.config, cell.H, cell.cone, cell.form)


# -- sweeps -------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    params: tuple[int, ...]
    verdict: Verdict
    expected: str

    @property
    def agrees(self) -> bool:
        return self.verdict.status == self.expected


@dataclass(frozen=True)
class RegionReport:
    family: str
    params: tuple[str, ...]
    rows: tuple[SweepRow, ...]

    def disagreements(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.agrees]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(self.params) + ["verdict", "epsilon", "witness", "reasons"])
        for r in self.rows:
            v = r.verdict
            eps = str(v.epsilon) if v.status == CERTIFIED else ""
            wit = f"ray{v.witness['ray']}:genus{v.witness['genus']}" if v.status == REFUTED else ""
            reasons = list(v.reasons)
            if not r.agrees:
                reasons.append(f"differs-from-paper:{r.expected}")
            w.writerow(list(r.params) + [v.status, eps, wit, ";".join(reasons)])
        return buf.getvalue()


def sweep(name: str, ranges: dict[str, Sequence[int]]) -> RegionReport:
    """Evaluate every cell of a parameter grid in row-major order."""
    fam = family(name)
    if set(ranges) != set(fam.params):
        raise InputError(f"{name} needs ranges for {','.join(fam.params)}")
    rows = []
    for values in product(*(list(ranges[p]) for p in fam.params)):
        params = dict(zip(fam.params, values))
        cell = fam.build(**params)
        v = certify(cell.config, cell.H, cell.cone, cell.form)
        rows.append(SweepRow(tuple(values), v, fam.expected(**params)))
    return RegionReport(name, fam.params, tuple(rows))


# parameter grids of the published region plots (plus the WPS and P1 x P1 x P1 tables)
DEFAULT_GRIDS = {
    "P2xP1": {"a": range(1, 11), "b": range(1, 11)},
    "BlP3": {"a": range(1, 10), "b": range(0, 10)},
    "P1cubed": {"a": range(1, 7), "b": range(1, 7), "c": range(1, 7)},
    "WPS": {"n": range(2, 6), "m": range(1, 9)},
}
