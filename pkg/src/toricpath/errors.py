"""Exception types raised by toricpath."""


class ToricPathError(Exception):
    """Base class for all toricpath errors."""


class GraphError(ToricPathError, ValueError):
    """Invalid E-graph construction."""


class DuplicateVertex(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class IsolatedVertex(GraphError):
    pass


class DimensionMismatch(GraphError):
    pass


class NotSubgraph(GraphError):
    pass


class NotWeaklyReversible(GraphError):
    pass


class SolverFailure(ToricPathError):
    """The LP backend neither found a point nor proved infeasibility."""


class BudgetExceeded(ToricPathError):
    """An enumeration or search ran past its configured cap."""


class ConvergenceFailure(ToricPathError):
    pass


class NotMember(ToricPathError):
    pass


class ClassMismatch(ToricPathError):
    pass


class MembershipFailure(ToricPathError):
    """A path endpoint could not be certified as a locus member."""


class CertificationFailure(ToricPathError):
    """A sampled path point failed re-verification."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}
