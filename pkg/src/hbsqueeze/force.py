"""Edge pressure constant, radial normal stress and squeeze force.

F = F0 + eps F1 + eps pi p_R with

    F0 = -pi int_0^1 p0' r^2 dr,    F1 = -pi int_0^1 p1' r^2 dr.

The defining quadratures are the source of truth. Closed forms in the
surface-height variable are kept as cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .first_order import R_MIN, _first_order_quad, _Leading, _g, _p1_prime, eta_of_r, p1_of_r
from .leading_order import plug_velocity, plug_velocity_prime, pressure_zero
from .numerics import integrate
from .params import FluidParams
from .yield_surface import z0_edge, z0_of_r

__all__ = [
    "ForceBreakdown",
    "edge_pressure_pR",
    "sigma_rr",
    "force_zero",
    "force_zero_z0form",
    "force_first",
    "force_first_closed_form",
    "force_first_crosscheck",
    "total_force",
]


@dataclass(frozen=True)
class ForceBreakdown:
    F0: float
    F1: float
    p_R: float
    F_total: float
    eps: float

    def as_dict(self) -> dict:
        return {"F0": self.F0, "F1": self.F1, "p_R": self.p_R, "F_total": self.F_total, "eps": self.eps}


def edge_pressure_pR(p: FluidParams) -> float:
    """p_R such that the depth-averaged radial normal stress vanishes at r = 1."""
    s = _Leading(p, 1.0)
    return p.B * math.pi * s.z0 * (2.0 * s.du0 + s.u0) / (2.0 * s.eta)


def sigma_rr(
    p: FluidParams,
    r: float,
    z: float,
    p0: float | None = None,
    p1: float | None = None,
) -> float:
    """Radial normal stress to O(eps).

    ``-p0 - eps p1`` in the shear layer; the pseudo-plug adds the extensional
    stress ``eps (2B/(eta z0)) (2u0' + u0/r) sqrt(z0^2 - z^2)``.
    """
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r!r}")
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"z must lie in [0, 1], got {z!r}")
    if p0 is None:
        p0 = pressure_zero(p, r)
    if p1 is None:
        p1 = p1_of_r(p, r)
    base = -p0 - p.eps * p1
    s = _Leading(p, r)
    if z >= s.z0:
        return base
    amp = 2.0 * p.B / (s.eta * s.z0) * (2.0 * s.du0 + s.u0 / r)
    return base + p.eps * amp * math.sqrt(s.z0 * s.z0 - z * z)


def force_zero(p: FluidParams) -> float:
    """F0 by direct quadrature of B r^2 / z0(r)."""
    return math.pi * integrate(lambda r: p.B * r * r / z0_of_r(p, r), 0.0, 1.0)


def force_zero_z0form(p: FluidParams) -> float:
    """F0 as a quadrature over the surface height s in [z0(1), 1]."""
    B, m = p.B, p.m
    scale = 8.0 * math.pi * B ** (3.0 * m + 1.0) / ((m + 1.0) ** 3 * (m + 2.0) ** 3)

    def f(s):
        poly = 2.0 * s * s + 2.0 * m * s + m + m * m
        return (1.0 - s) ** (3.0 * m + 2.0) * (m + 1.0 + s) ** 2 * poly / s ** (3.0 * m + 2.0)

    return scale * integrate(f, z0_edge(p), 1.0)


def force_first(p: FluidParams) -> float:
    """F1 by direct quadrature of -pi p1' r^2.

    On [0, R_MIN] p1' is frozen at its R_MIN value; the r^2 weight makes
    that contribution O(R_MIN^3).
    """

    def f(r):
        s = _Leading(p, r)
        return _p1_prime(p, s, _g(p, s, None)) * r * r

    s_min = _Leading(p, R_MIN)
    head = _p1_prime(p, s_min, _g(p, s_min, None)) * R_MIN**3 / 3.0
    return -math.pi * (head + integrate(f, R_MIN, 1.0, _first_order_quad()))


def force_first_closed_form(p: FluidParams, swapped: bool = False) -> float:
    """Integrated-by-parts expression for F1.

    ``swapped=False`` uses the edge term ``2 u0(1) + u0'(1)``;
    ``swapped=True`` uses ``2 u0'(1) + u0(1)`` instead.
    """
    z0 = z0_edge(p)
    u0 = plug_velocity(p, 1.0, z0)
    du0 = plug_velocity_prime(p, 1.0, z0)
    eta = eta_of_r(p, 1.0)
    edge = (2.0 * du0 + u0) if swapped else (2.0 * u0 + du0)
    bulk = integrate(lambda r: eta_of_r(p, r) * z0_of_r(p, r) * r, 0.0, 1.0)
    return math.pi**2 * p.B * (z0 * u0 / eta * edge - 0.5 * bulk)


def force_first_crosscheck(p: FluidParams) -> dict:
    """Relative gaps between the quadrature F1 and both closed-form variants."""
    direct = force_first(p)
    by_parts = force_first_closed_form(p, swapped=False)
    swapped = force_first_closed_form(p, swapped=True)

    def gap(x):
        return abs(x - direct) / abs(direct)

    return {
        "F1": direct,
        "closed_form": by_parts,
        "closed_form_swapped": swapped,
        "gap": gap(by_parts),
        "gap_swapped": gap(swapped),
    }


def total_force(p: FluidParams) -> ForceBreakdown:
    F0 = force_zero(p)
    F1 = force_first(p)
    pR = edge_pressure_pR(p)
    return ForceBreakdown(F0=F0, F1=F1, p_R=pR, F_total=F0 + p.eps * F1 + p.eps * math.pi * pR, eps=p.eps)
