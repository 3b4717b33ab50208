"""Exception types shared across the package."""


class HullkitError(Exception):
    """Base class for all package errors."""


class UniverseTooLarge(HullkitError):
    """A set-indexed computation was asked for a universe beyond its cap."""


class DisconnectedGraph(HullkitError):
    """An operation that needs a connected graph received a disconnected one."""


class UnreachablePair(HullkitError):
    """Two vertices lie in different components."""


class NotIntersectionClosed(HullkitError):
    """A set family is missing an intersection (or the universe)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ImagesIncomplete(HullkitError):
    """An evaluation produced a set that is not among the supplied images."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceLimit(HullkitError):
    """A configured budget (closed-set count, node limit, ...) was exceeded."""


class BudgetExhausted(ResourceLimit):
    """Search stopped on its node budget; ``best`` holds the best solution seen."""

    def __init__(self, message, best=None, nodes_explored=0):
        super().__init__(message)
        self.best = best
        self.nodes_explored = nodes_explored


class NotAPartialCube(HullkitError):
    """The graph admits no isometric hypercube embedding."""


class ParameterError(HullkitError, ValueError):
    """Gadget parameters violate a construction inequality."""


class Infeasible(HullkitError):
    """The instance has no solution at all (e.g. an empty set to hit)."""


class FormatError(HullkitError, ValueError):
    """Malformed input text."""
