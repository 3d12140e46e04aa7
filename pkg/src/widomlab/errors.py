"""Exception types shared across the solvers."""


class WidomlabError(Exception):
    """Base class for all widomlab errors."""


class NonConvergence(WidomlabError):
    """An iterative solver exhausted its budget without meeting its tolerance."""


class DomainError(WidomlabError):
    """An argument lies outside the mathematical domain of the operation."""


class UnsupportedWeight(WidomlabError):
    """The weight has singular factors the equioscillation solver cannot handle."""


class DegenerateSet(WidomlabError):
    """A discrete set has too few distinct points for the requested degree."""


class EndpointSingularity(WidomlabError):
    """Evaluation was requested too close to an endpoint of the set."""
