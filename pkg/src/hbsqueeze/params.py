"""Dimensionless parameters of the Herschel-Bulkley squeeze-flow problem.

Scales: lengths in r by the disk radius R, in z by the half-gap H, radial
velocity by U = W R / H. The resulting groups are

    eps = H / R,    Re = rho W R / mu,    B = tau0 H / (mu U).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .errors import ParameterError

__all__ = [
    "DimensionalInputs",
    "FluidParams",
    "ReynoldsWarning",
    "RE_WARN_THRESHOLD",
    "nondimensionalize",
    "validate",
]

# inertia is neglected; above this the lubrication solution is suspect
RE_WARN_THRESHOLD = 0.1


class ReynoldsWarning(UserWarning):
    """Reynolds number too large for the inertialess approximation."""


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be a finite positive number, got {value!r}")


@dataclass(frozen=True)
class DimensionalInputs:
    """Physical inputs in SI-consistent units.

    Attributes
    ----------
    R_hat : float
        Disk radius.
    H_hat : float
        Half-gap between the plates, smaller than ``R_hat``.
    W_hat : float
        Plate approach speed.
    mu_hat : float
        Consistency (Pa s^n).
    tau0_hat : float
        Yield stress (Pa). Zero is accepted and gives B = 0.
    rho_hat : float
        Density.
    n : float
        Power-law index.
    """

    R_hat: float
    H_hat: float
    W_hat: float
    mu_hat: float
    tau0_hat: float
    rho_hat: float
    n: float

    def __post_init__(self):
        for name in ("R_hat", "H_hat", "W_hat", "mu_hat", "rho_hat", "n"):
            _require_positive(name, getattr(self, name))
        if not (math.isfinite(self.tau0_hat) and self.tau0_hat >= 0):
            raise ParameterError(f"tau0_hat must be finite and >= 0, got {self.tau0_hat!r}")
        if not self.H_hat < self.R_hat:
            raise ParameterError(f"H_hat ({self.H_hat!r}) must be smaller than R_hat ({self.R_hat!r})")


@dataclass(frozen=True)
class FluidParams:
    """Dimensionless groups. ``m = 1/n`` is derived, never passed in."""

    B: float
    n: float
    eps: float = 0.1
    Re: float = 0.0
    m: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("B", "n", "eps", "Re"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ParameterError(f"{name} must be a finite number, got {value!r}")
        if self.B < 0:
            raise ParameterError(f"B must be >= 0, got {self.B!r}")
        if self.n <= 0:
            raise ParameterError(f"n must be > 0, got {self.n!r}")
        if not 0 < self.eps < 1:
            raise ParameterError(f"eps must lie in (0, 1), got {self.eps!r}")
        if self.Re < 0:
            raise ParameterError(f"Re must be >= 0, got {self.Re!r}")
        object.__setattr__(self, "m", 1.0 / self.n)

    def with_(self, **changes) -> "FluidParams":
        """Copy with some of ``B``, ``n``, ``eps``, ``Re`` replaced."""
        values = {"B": self.B, "n": self.n, "eps": self.eps, "Re": self.Re}
        values.update(changes)
        return FluidParams(**values)

    def as_dict(self) -> dict:
        return {"B": self.B, "n": self.n, "eps": self.eps, "Re": self.Re, "m": self.m}


def nondimensionalize(d: DimensionalInputs) -> FluidParams:
    """Map physical inputs onto (B, n, eps, Re)."""
    eps = d.H_hat / d.R_hat
    U_hat = d.W_hat * d.R_hat / d.H_hat
    Re = d.rho_hat * d.W_hat * d.R_hat / d.mu_hat
    B = d.tau0_hat * d.H_hat / (d.mu_hat * U_hat)
    return FluidParams(B=B, n=d.n, eps=eps, Re=Re)


def validate(p: FluidParams) -> FluidParams:
    """Return ``p`` unchanged, warning when Re exceeds the inertialess range.

    Construction of :class:`FluidParams` already enforces the hard invariants;
    this re-checks them for objects built by other means.
    """
    if p.B < 0 or p.n <= 0 or not 0 < p.eps < 1 or p.Re < 0:
        raise ParameterError(f"invalid parameters: {p!r}")
    if abs(p.m * p.n - 1.0) > 1e-14:
        raise ParameterError(f"m = {p.m!r} is not 1/n for n = {p.n!r}")
    if p.Re > RE_WARN_THRESHOLD:
        warnings.warn(
            f"Re = {p.Re:g} exceeds {RE_WARN_THRESHOLD}; inertia is neglected by this solution",
            ReynoldsWarning,
            stacklevel=2,
        )
    return p
