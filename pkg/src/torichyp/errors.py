"""Exception hierarchy shared by the compute modules and the command line."""


class TorichypError(Exception):
    """Base class for all engine errors."""


class InputError(TorichypError, ValueError):
    """Malformed input data (bad fan, bad file, wrong dimensions)."""


class FanError(InputError):
    pass


class UnboundedError(TorichypError):
    pass


class NotCartierError(TorichypError):
    pass


class NotNefError(TorichypError):
    pass


class EmptySectionsError(TorichypError):
    """A divisor that must have sections has an empty polytope."""


class HypothesisError(TorichypError):
    """A theorem hypothesis is not met, so no bound or verdict is produced."""


class SearchBoundError(TorichypError):
    pass


class NoFacetError(TorichypError):
    """The ray does not cut out a facet of the divisor polytope."""
