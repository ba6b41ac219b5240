"""Two-term lubrication solution for axisymmetric squeeze flow of a Herschel-Bulkley fluid."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BracketError,
    ConvergenceError,
    DegenerateFluidError,
    DomainError,
    HBSqueezeError,
    ParameterError,
    QuadratureError,
    SingularPointError,
    SolverError,
)
from .params import DimensionalInputs, FluidParams, nondimensionalize, validate  # noqa: E402
from .force import ForceBreakdown, total_force  # noqa: E402

__all__ = [
    "__version__",
    "BracketError",
    "ConvergenceError",
    "DegenerateFluidError",
    "DimensionalInputs",
    "DomainError",
    "FluidParams",
    "ForceBreakdown",
    "HBSqueezeError",
    "ParameterError",
    "QuadratureError",
    "SingularPointError",
    "SolverError",
    "nondimensionalize",
    "total_force",
    "validate",
]
