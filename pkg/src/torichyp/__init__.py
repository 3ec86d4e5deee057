"""Exact toric-threefold engine for genus bounds and algebraic hyperbolicity."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    EmptySectionsError,
    FanError,
    HypothesisError,
    InputError,
    NoFacetError,
    NotCartierError,
    NotNefError,
    SearchBoundError,
    TorichypError,
    UnboundedError,
)
from .polytope import LatticePolytope, ehrhart_volume_oracle, minkowski_sum  # noqa: E402
from .toric import Fan, ToricDivisor, check_fan, divisor_polytope  # noqa: E402
