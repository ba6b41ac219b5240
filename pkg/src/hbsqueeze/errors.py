"""Exception hierarchy shared by the solver modules."""


class HBSqueezeError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(HBSqueezeError, ValueError):
    """A physical or numerical parameter violates its invariant."""


class DegenerateFluidError(ParameterError):
    """B = 0: no pseudo-yield surface exists."""


class DomainError(HBSqueezeError, ValueError):
    """A coordinate lies outside the domain of an operation."""


class SingularPointError(DomainError):
    """Evaluation requested at a point where the expression is singular."""


class SolverError(HBSqueezeError, RuntimeError):
    """Base class for numerical failures (root finding, quadrature)."""


class BracketError(SolverError):
    """The root-finding interval does not contain a sign change."""


class ConvergenceError(SolverError):
    """Iteration cap reached; ``best`` holds the last iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class QuadratureError(SolverError):
    """Adaptive quadrature did not reach its tolerance."""

    def __init__(self, message, partial=None, abserr=None):
        super().__init__(message)
        self.partial = partial
        self.abserr = abserr
