"""Named fans with their divisor dictionaries.

Each fixture records an ample reference divisor, generators of the nef cone
(where known) and a dictionary of named divisor classes used in examples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InputError
from .polytope import LatticePolytope
from .toric import Fan, ToricDivisor, normal_fan


@dataclass(frozen=True)
class Fixture:
    name: str
    fan: Fan
    divisors: dict = field(default_factory=dict)
    nef_generators: tuple[str, ...] = ()
    expected: dict = field(default_factory=dict)
    note: str = ""

    def D(self, name: str) -> ToricDivisor:
        try:
            return ToricDivisor(self.fan, self.divisors[name])
        except KeyError:
            raise InputError(f"fixture {self.name} has no divisor named {name!r}") from None

    def combo(self, **coeffs: int) -> ToricDivisor:
        """Integer combination of named divisors, e.g. ``combo(H=2, E=-1)``."""
        out = self.fan.zero()
        for k, c in coeffs.items():
            out = out + c * self.D(k)
        return out

    @property
    def ample(self) -> ToricDivisor:
        return self.fan.ample()

    @property
    def nef(self) -> list[ToricDivisor]:
        return [self.D(k) for k in self.nef_generators]


def _all_subsets(k, size):
    from itertools import combinations

    return tuple(combinations(range(k), size))


def p3() -> Fixture:
    # alcoved rays e1, e2-e1, e3-e2, -e3
    rays = ((1, 0, 0), (-1, 1, 0), (0, -1, 1), (0, 0, -1))
    fan = Fan(3, rays, _all_subsets(4, 3), ample_reference=(0, 0, 0, 1))
    return Fixture(
        "P3", fan, {"H": (0, 0, 0, 1)}, ("H",),
        {"complete": True, "simplicial": True, "smooth": True, "gorenstein": True},
    )


def p2xp1() -> Fixture:
    rays = ((1, 0, 0), (0, -1, 0), (-1, 1, 0), (0, 0, 1), (0, 0, -1))
    cones = tuple((i, j, k) for i, j in ((0, 1), (0, 2), (1, 2)) for k in (3, 4))
    fan = Fan(3, rays, cones, ample_reference=(1, 0, 0, 1, 0))
    return Fixture(
        "P2xP1", fan, {"A": (1, 0, 0, 0, 0), "B": (0, 0, 0, 1, 0)}, ("A", "B"),
        {"complete": True, "simplicial": True, "smooth": True, "gorenstein": True},
        "O(a,b) = aA + bB",
    )


def p1cubed() -> Fixture:
    rays = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
    cones = tuple((i, j, k) for i in (0, 1) for j in (2, 3) for k in (4, 5))
    fan = Fan(3, rays, cones, ample_reference=(1, 0, 1, 0, 1, 0))
    return Fixture(
        "P1cubed", fan,
        {"A": (1, 0, 0, 0, 0, 0), "B": (0, 0, 1, 0, 0, 0), "C": (0, 0, 0, 0, 1, 0)},
        ("A", "B", "C"),
        {"complete": True, "simplicial": True, "smooth": True, "gorenstein": True},
        "O(a,b,c) = aA + bB + cC",
    )


def blp3() -> Fixture:
    # P3 with rays e1, -e2, e2-e3, e3-e1, blown up at the fixed point of the
    # cone {0,1,2}; the new ray is e1-e3.
    rays = ((1, 0, 0), (0, -1, 0), (0, 1, -1), (-1, 0, 1), (1, 0, -1))
    cones = ((0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 1, 4), (0, 2, 4), (1, 2, 4))
    fan = Fan(3, rays, cones, ample_reference=(1, 0, 0, 1, 0))
    return Fixture(
        "BlP3", fan,
        {"H": (0, 0, 0, 1, 0), "E": (0, 0, 0, 0, 1), "L": (1, 0, 0, 0, 0)},
        ("H", "L"),
        {"complete": True, "simplicial": True, "smooth": True, "gorenstein": True},
        "L is linearly equivalent to H - E",
    )


def wps(n: int) -> Fixture:
    """The weighted projective space P(1,1,1,n), singular for n >= 2."""
    rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -n))
    fan = Fan(3, rays, _all_subsets(4, 3), ample_reference=(0, 0, 1, 0))
    return Fixture(
        f"WPS{n}", fan, {"H": (0, 0, 1, 0), "O1": (0, 0, 0, 1)}, ("H",),
        {"complete": True, "simplicial": True, "smooth": n == 1, "gorenstein": n in (1, 3)},
        "H is linearly equivalent to n * O1",
    )


def wps_resolved(n: int) -> Fixture:
    """Blowup of P(1,1,1,n) at its singular point (star subdivision by -e3)."""
    rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -n), (0, 0, -1))
    cones = ((0, 1, 2), (0, 2, 3), (1, 2, 3), (0, 1, 4), (0, 3, 4), (1, 3, 4))
    fan = Fan(3, rays, cones, ample_reference=(0, 0, 1, 1, 0))
    return Fixture(
        f"WPS{n}resolved", fan,
        {"H": (0, 0, 1, 0, 0), "F": (0, 0, 0, 1, 0), "E": (0, 0, 0, 0, 1)},
        ("H", "F"),
        {"complete": True, "simplicial": True, "smooth": True, "gorenstein": True},
        "n F is linearly equivalent to H - E",
    )


def p1xp1() -> Fixture:
    rays = ((1, 0), (-1, 0), (0, 1), (0, -1))
    cones = ((0, 2), (0, 3), (1, 2), (1, 3))
    fan = Fan(2, rays, cones, ample_reference=(0, 1, 0, 1))
    return Fixture(
        "P1xP1", fan,
        {"D": (0, 2, 0, 1), "E1": (0, 1, 0, 1), "E2": (0, 2, 0, 0)},
        (),
        {"complete": True, "simplicial": True, "smooth": True, "gorenstein": True},
    )


def reeve() -> Fixture:
    P = LatticePolytope.from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 3)])
    fan, R = normal_fan(P)
    fan = Fan(fan.lattice_rank, fan.rays, fan.max_cones, ample_reference=R.coeffs)
    return Fixture("Reeve", fan, {"R": R.coeffs}, ("R",))


_BUILDERS = {
    "P3": p3,
    "P2xP1": p2xp1,
    "P1cubed": p1cubed,
    "BlP3": blp3,
    "P1xP1": p1xp1,
    "Reeve": reeve,
}


@lru_cache(maxsize=None)
def get(name: str) -> Fixture:
    """Look up a fixture; ``WPS<n>`` and ``WPS<n>resolved`` take any n >= 1."""
    if name in _BUILDERS:
        return _BUILDERS[name]()
    if name.startswith("WPS"):
        tail = name[3:]
        resolved = tail.endswith("resolved")
        digits = tail[: -len("resolved")] if resolved else tail
        if digits.isdigit() and int(digits) >= 1:
            return wps_resolved(int(digits)) if resolved else wps(int(digits))
    raise InputError(f"unknown fixture {name!r}")


def names() -> list[str]:
    return list(_BUILDERS) + ["WPS<n>", "WPS<n>resolved"]


THREEFOLDS = ("P3", "P2xP1", "P1cubed", "BlP3", "WPS2resolved", "WPS3resolved")
