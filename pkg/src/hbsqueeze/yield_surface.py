"""Pseudo-yield surface z0(r) of the leading-order solution.

The surface is the root in (0, 1] of the flux condition

    (1-z0)^(2+m)/(2+m) - (1-z0)^(1+m) + (z0/B)^m (r/2)(1+m) = 0,   m = 1/n,

which can also be solved explicitly for r, giving the inverse map r(z0)
used as a change of variables in the pressure and force quadratures.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .errors import BracketError, DegenerateFluidError, DomainError, SingularPointError
from .numerics import Tolerance, current_root_tol, find_root
from .params import FluidParams

__all__ = [
    "YieldSurfacePoint",
    "z0_residual",
    "z0_of_r",
    "z0_prime",
    "r_of_z0",
    "dr_dz0",
    "z0_edge",
    "yield_point",
]

# lower end of the z0 bracket
Z0_FLOOR = 1e-14


@dataclass(frozen=True)
class YieldSurfacePoint:
    r: float
    z0: float
    z0_prime: float


def _check_fluid(p: FluidParams) -> None:
    if p.B <= 0:
        raise DegenerateFluidError("B = 0 has no pseudo-yield surface (power-law limit is not modelled)")


def _check_r(r: float) -> None:
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r!r}")


def z0_residual(p: FluidParams, r: float, z0: float) -> float:
    """Left-hand side of the defining equation at ``(r, z0)``."""
    m = p.m
    w = 1.0 - z0
    return w ** (2.0 + m) / (2.0 + m) - w ** (1.0 + m) + (z0 / p.B) ** m * (r / 2.0) * (1.0 + m)


@functools.lru_cache(maxsize=65536)
def _solve_gap(B: float, m: float, r: float, tol: Tolerance) -> float:
    # Unknown is w = 1 - z0 so that the thin shear layer near the axis keeps
    # full relative precision. G is strictly decreasing in w on [0, 1).
    def G(w):
        return w ** (2.0 + m) / (2.0 + m) - w ** (1.0 + m) + ((1.0 - w) / B) ** m * (r / 2.0) * (1.0 + m)

    def polish(w):
        # Newton steps to machine precision; finite differences of z0 amplify
        # any bracketing slack
        for _ in range(3):
            dG = (
                w ** (1.0 + m)
                - (1.0 + m) * w**m
                - m * (1.0 - w) ** (m - 1.0) / B**m * (r / 2.0) * (1.0 + m)
            )
            if dG == 0.0 or not math.isfinite(dG):
                break
            step = G(w) / dG
            trial = w - step
            if not lo <= trial <= hi or abs(G(trial)) > abs(G(w)):
                break
            w = trial
            if abs(step) <= 1e-17 * max(w, 1e-300):
                break
        return w

    lo, hi = 0.0, 1.0 - Z0_FLOOR
    try:
        return polish(find_root(G, lo, hi, tol))
    except BracketError:
        pass
    # fallback: scan for any sign change
    grid = [lo + (hi - lo) * k / 64 for k in range(65)]
    values = [G(x) for x in grid]
    for a, b, fa, fb in zip(grid, grid[1:], values, values[1:]):
        if fa == 0.0:
            return a
        if (fa > 0) != (fb > 0):
            return polish(find_root(G, a, b, tol))
    raise BracketError(f"no pseudo-yield surface in (0, 1] for B={B!r}, m={m!r}, r={r!r}")


def z0_of_r(p: FluidParams, r: float) -> float:
    """Height of the pseudo-yield surface at radius ``r``.

    ``r = 0`` returns exactly 1. Raises :class:`DegenerateFluidError` for B = 0.
    """
    _check_fluid(p)
    _check_r(r)
    if r == 0.0:
        return 1.0
    w = _solve_gap(float(p.B), float(p.m), float(r), current_root_tol())
    return 1.0 - w


def z0_prime(p: FluidParams, r: float, z0: float | None = None) -> float:
    """Analytic slope dz0/dr (always negative).

    ``z0`` may be supplied when already known; it must be the surface height at ``r``.
    """
    _check_fluid(p)
    if z0 is None:
        z0 = z0_of_r(p, r)
    if not 0.0 < z0 < 1.0:
        raise SingularPointError(f"dz0/dr is singular at z0 = {z0!r} (r = {r!r})")
    n, m = p.n, p.m
    D = 2.0 * n * n * z0 * z0 + 2.0 * n * z0 + 1.0 + n
    return -(n + 1.0) * (2.0 * n + 1.0) * z0 ** (1.0 + m) / (2.0 * p.B**m * (1.0 - z0) ** m * D)


def r_of_z0(p: FluidParams, z0: float) -> float:
    """Radius at which the surface sits at height ``z0`` (inverse of :func:`z0_of_r`)."""
    _check_fluid(p)
    if not 0.0 < z0 <= 1.0:
        raise DomainError(f"z0 must lie in (0, 1], got {z0!r}")
    m = p.m
    return 2.0 * p.B**m * (1.0 - z0) ** (m + 1.0) * (m + 1.0 + z0) / (z0**m * (m + 1.0) * (m + 2.0))


def dr_dz0(p: FluidParams, z0: float) -> float:
    """Derivative of :func:`r_of_z0`; strictly negative on (0, 1)."""
    _check_fluid(p)
    if not 0.0 < z0 < 1.0:
        raise DomainError(f"z0 must lie in (0, 1), got {z0!r}")
    m = p.m
    poly = 2.0 * z0 * z0 + 2.0 * m * z0 + m + m * m
    return -2.0 * p.B**m * (1.0 - z0) ** m * poly / (z0 ** (m + 1.0) * (m + 1.0) * (m + 2.0))


def z0_edge(p: FluidParams) -> float:
    """Surface height at the disk edge, z0(1)."""
    return z0_of_r(p, 1.0)


def yield_point(p: FluidParams, r: float) -> YieldSurfacePoint:
    z0 = z0_of_r(p, r)
    slope = z0_prime(p, r, z0) if r > 0 else -math.inf
    return YieldSurfacePoint(r=r, z0=z0, z0_prime=slope)
