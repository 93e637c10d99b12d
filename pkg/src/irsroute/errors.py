"""Exception hierarchy shared by every irsroute module."""


class IrsRouteError(Exception):
    """Base class for all errors raised by irsroute."""


class InvalidParameterError(IrsRouteError, ValueError):
    """An argument is outside its allowed domain."""


class ScenarioValidationError(InvalidParameterError):
    """A scenario violates one of its structural invariants."""


class ScenarioParseError(IrsRouteError):
    """A scenario document could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NoLosError(IrsRouteError):
    """A channel was requested between two nodes without line of sight."""


class InfeasibleRouteError(IrsRouteError):
    """A route breaks the distinctness or LoS-connectivity rules."""


class NegativeWeightError(InvalidParameterError):
    """Dijkstra was called on a graph containing a negative edge weight."""


class GraphCycleError(IrsRouteError):
    """A routing graph expected to be acyclic contains a cycle."""


class SolverInconsistencyError(IrsRouteError, RuntimeError):
    """Two shortest-path solvers disagree on the same graph."""


class NoRouteError(IrsRouteError):
    """No feasible reflection route connects the BS to the user."""
