"""Zero-order (lubrication) fields: velocity, shear stress, pressure.

Below the pseudo-yield surface (0 <= z <= z0) the radial velocity is the
plug value u0(r); above it the fluid is sheared down to no-slip at z = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, SingularPointError
from .numerics import integrate
from .params import FluidParams
from .yield_surface import z0_edge, z0_of_r, z0_prime

__all__ = [
    "SHEAR",
    "PSEUDO_PLUG",
    "FieldSample",
    "plug_velocity",
    "plug_velocity_prime",
    "u_zero",
    "leading_stress",
    "pressure_zero",
    "region_of",
    "sample_leading",
]

SHEAR = "shear"
PSEUDO_PLUG = "pseudo_plug"


@dataclass(frozen=True)
class FieldSample:
    """Field values at one point ``(r, z)``.

    First-order entries are ``None`` when only the leading order was requested.
    """

    r: float
    z: float
    u0_val: float
    tau_rz0: float
    p0_prime_val: float
    region: str
    u1_val: float | None = None
    tau_rz1: float | None = None
    p1_val: float | None = None


def _check_z(z: float) -> None:
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"z must lie in [0, 1], got {z!r}")


def region_of(z: float, z0: float) -> str:
    return PSEUDO_PLUG if z < z0 else SHEAR


def plug_velocity(p: FluidParams, r: float, z0: float | None = None) -> float:
    """Radial velocity of the pseudo-plug, u0(r)."""
    if z0 is None:
        z0 = z0_of_r(p, r)
    m = p.m
    return p.B**m * (1.0 - z0) ** (1.0 + m) / (z0**m * (1.0 + m))


def plug_velocity_prime(p: FluidParams, r: float, z0: float | None = None) -> float:
    """du0/dr by the chain rule through z0(r). Singular at r = 0."""
    if r == 0.0:
        raise SingularPointError("du0/dr requested at r = 0 where dz0/dr is singular")
    if z0 is None:
        z0 = z0_of_r(p, r)
    m = p.m
    du0_dz0 = -(p.B**m) * (1.0 - z0) ** m * z0 ** (-m - 1.0) * (z0 + m) / (m + 1.0)
    return du0_dz0 * z0_prime(p, r, z0)


def u_zero(p: FluidParams, r: float, z: float, z0: float | None = None) -> float:
    """Leading-order radial velocity. Plug value on [0, z0], shear profile on (z0, 1]."""
    _check_z(z)
    if z0 is None:
        z0 = z0_of_r(p, r)
    m = p.m
    if z <= z0:
        return plug_velocity(p, r, z0)
    return (p.B / z0) ** m / (1.0 + m) * ((1.0 - z0) ** (1.0 + m) - (z - z0) ** (1.0 + m))


def leading_stress(p: FluidParams, r: float, z: float, z0: float | None = None) -> tuple[float, float]:
    """Return ``(tau_rz0, p0_prime)`` = ``(-B z / z0, -B / z0)``."""
    _check_z(z)
    if z0 is None:
        z0 = z0_of_r(p, r)
    return -p.B * z / z0, -p.B / z0


def _pressure_kernel(p: FluidParams):
    B, m = p.B, p.m
    scale = 2.0 * B ** (m + 1.0) / ((m + 1.0) * (m + 2.0))

    def kernel(s):
        return scale * (1.0 - s) ** m * (2.0 * s * s + 2.0 * m * s + m + m * m) / s ** (m + 2.0)

    return kernel


def pressure_zero(p: FluidParams, r: float, p_R: float | None = None) -> float:
    """Leading-order pressure p0(r), including the edge constant: p0(1) = eps * p_R.

    Evaluated as a quadrature in the surface height s = z0 between z0(1) and
    z0(r), which removes the root solves an r-quadrature would need.
    """
    if p_R is None:
        from .force import edge_pressure_pR

        p_R = edge_pressure_pR(p)
    lower = z0_edge(p)
    upper = z0_of_r(p, r)
    return integrate(_pressure_kernel(p), lower, upper) + p.eps * p_R


def pressure_zero_profile(p: FluidParams, radii, p_R: float | None = None) -> list[float]:
    """:func:`pressure_zero` on a list of radii, integrating piecewise from the edge."""
    if p_R is None:
        from .force import edge_pressure_pR

        p_R = edge_pressure_pR(p)
    kernel = _pressure_kernel(p)
    order = sorted(range(len(radii)), key=lambda i: radii[i], reverse=True)
    out = [0.0] * len(radii)
    prev_z0 = z0_edge(p)
    acc = 0.0
    for i in order:
        z0 = z0_of_r(p, radii[i])
        acc += integrate(kernel, prev_z0, z0)
        prev_z0 = z0
        out[i] = acc + p.eps * p_R
    return out


def sample_leading(p: FluidParams, r: float, z: float) -> FieldSample:
    z0 = z0_of_r(p, r)
    tau, dp = leading_stress(p, r, z, z0)
    return FieldSample(
        r=r, z=z, u0_val=u_zero(p, r, z, z0), tau_rz0=tau, p0_prime_val=dp, region=region_of(z, z0)
    )
