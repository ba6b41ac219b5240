"""Shared grids and independent oracles.

The oracles here deliberately avoid the package's solver paths: plain
bisection for the yield surface, direct r-quadrature for pressures.
"""

import math

import pytest
from scipy import integrate

from hbsqueeze.params import FluidParams

B_GRID = (0.01, 0.1, 1.0, 10.0)
N_GRID = (0.25, 0.5, 1.0, 1.5)
EPS = 0.1

# 60-digit mpmath bisection, frozen
Z0_B1_N1_R05 = 0.46709037924491319
Z0_EDGE_B1_N1 = 0.33987688662318255
U0_B1_N1_R05 = 0.30400183402666739
DU0_B1_N1_R05 = 0.65290536910049883
U_MID_B1_N1_R05 = 0.22800137552000054
Z0_B2_N05_R06 = 0.56708104718893463
F0_B1_N1 = 2.6630563108420984
PR_B1_N1 = 0.46796315183825552


def bisect_z0(B, n, r, iters=200):
    """Yield-surface height by bisection on the raw defining equation."""
    m = 1.0 / n
    if r == 0:
        return 1.0

    def F(z):
        return (1 - z) ** (2 + m) / (2 + m) - (1 - z) ** (1 + m) + (z / B) ** m * (r / 2) * (1 + m)

    lo, hi = 1e-300, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if F(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-17:
            break
    return 0.5 * (lo + hi)


def pressure_zero_rform(p, r):
    """p0(r) - p0(1) = int_r^1 B / z0 d rho, with z0 from bisection."""
    val, _ = integrate.quad(lambda x: p.B / bisect_z0(p.B, p.n, x), r, 1.0, epsabs=1e-13, epsrel=1e-12)
    return val


@pytest.fixture(params=[(B, n) for B in B_GRID for n in N_GRID], ids=lambda bn: f"B{bn[0]:g}-n{bn[1]:g}")
def grid_params(request):
    B, n = request.param
    return FluidParams(B=B, n=n, eps=EPS)


def close(a, b, tol):
    return math.isclose(a, b, rel_tol=0.0, abs_tol=tol)
