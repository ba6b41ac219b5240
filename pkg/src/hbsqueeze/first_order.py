"""First-order (O(eps)) corrections.

Notation: ``w = 1 - z0``, ``m = 1/n``, ``K = (B/z0)^(m-1)``. The factor K is
the linearised Herschel-Bulkley viscosity of the shear layer; it multiplies
every first-order shear velocity and is identically 1 for a Bingham fluid.

The radial derivatives of the plug-stress amplitudes that enter ``g(r)`` and
the plug branch of ``tau_rz1`` are taken by central differences; all other
derivatives are analytic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SingularPointError
from .leading_order import FieldSample, leading_stress, plug_velocity, plug_velocity_prime, region_of, u_zero
from .numerics import Tolerance, current_quad_tol, find_root, integrate
from .params import FluidParams
from .yield_surface import z0_of_r, z0_prime

__all__ = [
    "R_MIN",
    "FirstOrderCoefficients",
    "eta_of_r",
    "radial_step",
    "g_of_r",
    "p1_prime",
    "flux_residual",
    "coefficients",
    "p1_of_r",
    "p1_profile",
    "u_first",
    "tau_rz_first",
    "p_first_plug",
    "plug_stresses",
    "plug_stress_invariant",
    "plate_shear_first",
    "plate_stress",
    "plate_stress_series",
    "find_r0",
    "sample_field",
]

# below this radius the expansion is in its divergent regime
R_MIN = 1e-3

# Quadratures of p1' integrate a finite-difference quantity whose noise floor
# sits near 1e-10 relative; a tighter request only triggers roundoff warnings.
FIRST_ORDER_QUAD = Tolerance(abs_tol=1e-11, rel_tol=1e-9, max_iter=200)


@dataclass(frozen=True)
class FirstOrderCoefficients:
    r: float
    eta: float
    g: float
    p1_prime: float
    p1: float | None = None


def _check_r_open(r: float) -> None:
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must lie in (0, 1], got {r!r}")


def _check_z(z: float) -> None:
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"z must lie in [0, 1], got {z!r}")


def _first_order_quad() -> Tolerance:
    tol = current_quad_tol()
    return Tolerance(
        abs_tol=max(tol.abs_tol, FIRST_ORDER_QUAD.abs_tol),
        rel_tol=max(tol.rel_tol, FIRST_ORDER_QUAD.rel_tol),
        max_iter=tol.max_iter,
    )


class _Leading:
    """z0, z0', u0, u0' and eta at one radius, computed once."""

    __slots__ = ("r", "z0", "dz0", "u0", "du0", "eta")

    def __init__(self, p: FluidParams, r: float):
        if r <= 0.0:
            raise SingularPointError(f"first-order quantities are singular at r = {r!r}")
        self.r = r
        self.z0 = z0_of_r(p, r)
        self.dz0 = z0_prime(p, r, self.z0)
        self.u0 = plug_velocity(p, r, self.z0)
        self.du0 = plug_velocity_prime(p, r, self.z0)
        a, b = self.du0, self.u0 / r
        self.eta = 2.0 * math.sqrt(a * a + b * b + a * b)


def eta_of_r(p: FluidParams, r: float) -> float:
    """Strain-rate magnitude of the pseudo-plug, 2 sqrt(u0'^2 + (u0/r)^2 + u0' u0/r)."""
    _check_r_open(r)
    return _Leading(p, r).eta


def radial_step(r: float) -> float:
    """Default finite-difference step for the radial derivatives."""
    return 1e-5 * max(r, 0.1)


def _d_dr(func, r: float, h: float | None) -> float:
    # central inside the disk, second-order one-sided at the rim
    if h is None:
        h = radial_step(r)
    if r < 2.0 * h:
        raise SingularPointError(
            f"r = {r!r} is within two finite-difference steps of the axis; use plate_stress_series"
        )
    if r + h <= 1.0:
        return (func(r + h) - func(r - h)) / (2.0 * h)
    return (3.0 * func(r) - 4.0 * func(r - h) + func(r - 2.0 * h)) / (2.0 * h)


def _phi(p: FluidParams, r: float) -> float:
    s = _Leading(p, r)
    return s.z0 * (2.0 * s.du0 + s.u0 / r) / s.eta


def _plug_amplitude(p: FluidParams, r: float) -> float:
    s = _Leading(p, r)
    return (2.0 * s.du0 + s.u0 / r) / (s.eta * s.z0)


def _g(p: FluidParams, s: _Leading, h: float | None) -> float:
    r = s.r
    dphi = _d_dr(lambda x: _phi(p, x), r, h)
    return -0.5 * math.pi * p.B * (dphi + s.z0 / (s.eta * r) * (s.du0 - s.u0 / r))


def _p1_prime(p: FluidParams, s: _Leading, g: float) -> float:
    return -0.5 * math.pi * p.B * s.eta * s.dz0 - 2.0 * g * s.du0


def g_of_r(p: FluidParams, r: float, h: float | None = None) -> float:
    """Integration function g(r) fixed by continuity of tau_rz1 at the yield surface."""
    _check_r_open(r)
    return _g(p, _Leading(p, r), h)


def p1_prime(p: FluidParams, r: float, h: float | None = None) -> float:
    """First-order pressure gradient dp1/dr."""
    _check_r_open(r)
    s = _Leading(p, r)
    return _p1_prime(p, s, _g(p, s, h))


def coefficients(p: FluidParams, r: float, with_p1: bool = False, h: float | None = None) -> FirstOrderCoefficients:
    _check_r_open(r)
    s = _Leading(p, r)
    g = _g(p, s, h)
    return FirstOrderCoefficients(
        r=r,
        eta=s.eta,
        g=g,
        p1_prime=_p1_prime(p, s, g),
        p1=p1_of_r(p, r) if with_p1 else None,
    )


def flux_residual(p: FluidParams, r: float, h: float | None = None) -> float:
    """Net first-order flux written in closed form; zero when g and p1' are consistent.

    ``eta pi z0^2/4 - K w^m [p1' (2n^2 z0^2 + 2n z0 + n + 1)/((n+1)(2n+1)) + g (n z0 + 1)/(n+1)]``
    """
    _check_r_open(r)
    s = _Leading(p, r)
    g = _g(p, s, h)
    dp1 = _p1_prime(p, s, g)
    n, m, z0 = p.n, p.m, s.z0
    K = (p.B / z0) ** (m - 1.0)
    wm = (1.0 - z0) ** m
    D = 2.0 * n * n * z0 * z0 + 2.0 * n * z0 + n + 1.0
    return (
        s.eta * math.pi * z0 * z0 / 4.0
        - K * wm * (dp1 * D / ((n + 1.0) * (2.0 * n + 1.0)) + g * (n * z0 + 1.0) / (n + 1.0))
    )


def _p1_integrand(p: FluidParams):
    def f(x):
        s = _Leading(p, x)
        return _p1_prime(p, s, _g(p, s, None))

    return f


def p1_of_r(p: FluidParams, r: float) -> float:
    """First-order pressure, p1(r) = -int_r^1 p1' with p1(1) = 0.

    Below ``R_MIN`` the value is frozen at p1(R_MIN).
    """
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r!r}")
    lower = max(r, R_MIN)
    if lower >= 1.0:
        return 0.0
    return -integrate(_p1_integrand(p), lower, 1.0, _first_order_quad())


def p1_profile(p: FluidParams, radii) -> list[float]:
    """p1 on many radii by accumulating piecewise integrals inward from the rim."""
    f = _p1_integrand(p)
    tol = _first_order_quad()
    order = sorted(range(len(radii)), key=lambda i: radii[i], reverse=True)
    out = [0.0] * len(radii)
    prev = 1.0
    acc = 0.0
    for i in order:
        x = max(radii[i], R_MIN)
        if x < prev:
            acc -= integrate(f, x, prev, tol)
            prev = x
        out[i] = acc
    return out


def u_first(p: FluidParams, r: float, z: float, coeffs: FirstOrderCoefficients | None = None) -> float:
    """First-order radial velocity.

    Shear layer (z >= z0)::

        K { p1'/(n+1) [(z-z0)^m (z + n z0) - w^m (1 + n z0)] + g [(z-z0)^m - w^m] }

    Pseudo-plug (z < z0)::

        eta sqrt(z0^2 - z^2) - K w^m [p1' (1 + n z0)/(n+1) + g]
    """
    _check_z(z)
    _check_r_open(r)
    if coeffs is None:
        coeffs = coefficients(p, r)
    z0 = z0_of_r(p, r)
    n, m = p.n, p.m
    K = (p.B / z0) ** (m - 1.0)
    wm = (1.0 - z0) ** m
    dp1, g = coeffs.p1_prime, coeffs.g
    if z >= z0:
        sm = (z - z0) ** m
        return K * (dp1 / (n + 1.0) * (sm * (z + n * z0) - wm * (1.0 + n * z0)) + g * (sm - wm))
    return coeffs.eta * math.sqrt(z0 * z0 - z * z) - K * wm * (dp1 * (1.0 + n * z0) / (n + 1.0) + g)


def tau_rz_first(
    p: FluidParams,
    r: float,
    z: float,
    coeffs: FirstOrderCoefficients | None = None,
    h: float | None = None,
) -> float:
    """First-order shear stress.

    The plug branch integrates the O(eps) radial momentum balance from the
    symmetry plane with its own finite-difference derivative, so agreement
    with the shear branch ``z p1' + g`` at z0 is a genuine check.
    """
    _check_z(z)
    _check_r_open(r)
    if coeffs is None:
        coeffs = coefficients(p, r, h=h)
    s = _Leading(p, r)
    if z >= s.z0:
        return z * coeffs.p1_prime + coeffs.g
    z0 = s.z0
    amp = (2.0 * s.du0 + s.u0 / r) / (s.eta * z0)
    damp = _d_dr(lambda x: _plug_amplitude(p, x), r, h)
    root = math.sqrt(max(z0 * z0 - z * z, 0.0))
    arc = math.asin(min(z / z0, 1.0))
    bracket = damp + (s.du0 - s.u0 / r) / (r * s.eta * z0)
    return (
        -p.B * (z * root + z0 * z0 * arc) * bracket
        - 2.0 * p.B * amp * s.dz0 * z0 * arc
        + coeffs.p1_prime * z
    )


def p_first_plug(p: FluidParams, r: float, z: float, p1: float | None = None) -> float:
    """First-order pressure inside the pseudo-plug; equals p1(r) at z = z0."""
    _check_r_open(r)
    s = _Leading(p, r)
    if not 0.0 <= z <= s.z0:
        raise DomainError(f"z = {z!r} is outside the pseudo-plug [0, {s.z0!r}]; use p1(r) there")
    if p1 is None:
        p1 = p1_of_r(p, r)
    root = math.sqrt(s.z0 * s.z0 - z * z)
    return -2.0 * p.B / (s.eta * s.z0) * (s.du0 + s.u0 / r) * root + p1


def plug_stresses(p: FluidParams, r: float, z: float) -> tuple[float, float, float]:
    """Leading plug stresses ``(tau_rr, tau_thetatheta, tau_rz0)`` for z in [0, z0]."""
    _check_r_open(r)
    s = _Leading(p, r)
    if not 0.0 <= z <= s.z0:
        raise DomainError(f"z = {z!r} is outside the pseudo-plug [0, {s.z0!r}]")
    a = 2.0 * p.B / (s.eta * s.z0) * math.sqrt(s.z0 * s.z0 - z * z)
    return a * s.du0, a * s.u0 / r, -p.B * z / s.z0


def plug_stress_invariant(p: FluidParams, r: float, z: float) -> float:
    """Second stress invariant in the pseudo-plug; equal to B at the point of yielding."""
    trr, ttt, trz = plug_stresses(p, r, z)
    return math.sqrt(trr * trr + ttt * ttt + trr * ttt + trz * trz)


def plate_shear_first(p: FluidParams, r: float, h: float | None = None) -> float:
    """tau_rz1(r, 1) = p1'(r) + g(r)."""
    _check_r_open(r)
    s = _Leading(p, r)
    g = _g(p, s, h)
    return _p1_prime(p, s, g) + g


def plate_stress(p: FluidParams, r: float) -> float:
    """Two-term stress invariant on the plate: B/z0 - eps (p1' + g)."""
    if r <= R_MIN:
        raise SingularPointError(f"r = {r!r} <= {R_MIN}: use plate_stress_series near the axis")
    _check_r_open(r)
    return p.B / z0_of_r(p, r) - p.eps * plate_shear_first(p, r)


def plate_stress_series(p: FluidParams, r: float) -> tuple[float, float]:
    """Small-r expansions ``(tau_rz0(r, 1), tau_rz1(r, 1))``."""
    if not r > 0.0:
        raise DomainError(f"series needs r > 0, got {r!r}")
    B, n = p.B, p.n
    tau0 = (
        -B
        - (r * B * (n + 1.0) / (2.0 * n)) ** (n / (n + 1.0))
        - (B * (n + 1.0) / n) ** ((n - 1.0) / (n + 1.0))
        * (3.0 * n + 1.0)
        / (2.0 * n + 1.0)
        * (r / 2.0) ** (2.0 * n / (n + 1.0))
    )
    tau1 = math.sqrt(3.0) * math.pi * B ** (n / (n + 1.0)) / 4.0 * (2.0 * n / (r * (n + 1.0))) ** (1.0 / (n + 1.0))
    return tau0, tau1


def find_r0(p: FluidParams, samples: int = 96) -> float | None:
    """Radius where the plate stress first reaches B, or ``None`` if it never dips below.

    The stress is scanned on a geometric grid over (R_MIN, 1) and the first
    upward crossing of B is refined by bracketed root finding.
    """
    if p.eps == 0.0:
        return None

    def excess(x):
        return plate_stress(p, x) - p.B

    lo = R_MIN * (1.0 + 1e-9)
    grid = [lo * (1.0 / lo) ** (k / samples) for k in range(samples + 1)]
    grid[-1] = 1.0
    prev_x, prev_f = grid[0], excess(grid[0])
    if prev_f >= 0.0:
        return None
    for x in grid[1:]:
        fx = excess(x)
        if fx >= 0.0:
            return find_root(excess, prev_x, x)
        prev_x, prev_f = x, fx
    return None


def sample_field(p: FluidParams, r: float, z: float, p1: float | None = None) -> FieldSample:
    """Both orders of u, tau_rz and p at ``(r, z)``."""
    _check_r_open(r)
    z0 = z0_of_r(p, r)
    c = coefficients(p, r)
    tau0, dp0 = leading_stress(p, r, z, z0)
    if p1 is None:
        p1 = p1_of_r(p, r)
    p1_val = p_first_plug(p, r, z, p1) if z < z0 else p1
    return FieldSample(
        r=r,
        z=z,
        u0_val=u_zero(p, r, z, z0),
        tau_rz0=tau0,
        p0_prime_val=dp0,
        region=region_of(z, z0),
        u1_val=u_first(p, r, z, c),
        tau_rz1=tau_rz_first(p, r, z, c),
        p1_val=p1_val,
    )
