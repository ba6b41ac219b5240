import math

import numpy as np
import pytest
from scipy import integrate as sq

from conftest import DU0_B1_N1_R05, U0_B1_N1_R05
from hbsqueeze.errors import DomainError, SingularPointError
from hbsqueeze.first_order import (
    R_MIN,
    coefficients,
    eta_of_r,
    find_r0,
    flux_residual,
    g_of_r,
    p1_of_r,
    p1_prime,
    p1_profile,
    p_first_plug,
    plate_shear_first,
    plate_stress,
    plate_stress_series,
    plug_stress_invariant,
    radial_step,
    sample_field,
    tau_rz_first,
    u_first,
)
from hbsqueeze.leading_order import plug_velocity, plug_velocity_prime, pressure_zero
from hbsqueeze.params import FluidParams
from hbsqueeze.yield_surface import z0_of_r


def first_order_flux(p, r):
    z0 = z0_of_r(p, r)
    c = coefficients(p, r)
    val, _ = sq.quad(lambda z: u_first(p, r, z, c), 0.0, 1.0, points=[z0], epsabs=1e-13, epsrel=1e-12)
    return val


class TestEta:
    def test_defining_identity(self):
        p = FluidParams(2.0, 0.5)
        a, b = plug_velocity_prime(p, 0.8), plug_velocity(p, 0.8) / 0.8
        assert eta_of_r(p, 0.8) ** 2 - 4 * (a * a + b * b + a * b) == pytest.approx(0.0, abs=1e-12)

    def test_bingham_composition(self):
        a, b = DU0_B1_N1_R05, U0_B1_N1_R05 / 0.5
        assert eta_of_r(FluidParams(1.0, 1.0), 0.5) == pytest.approx(2 * math.sqrt(a * a + b * b + a * b), rel=1e-10)

    @pytest.mark.parametrize("n", [0.5, 1.0, 1.5])
    def test_uniform_stretching_near_axis(self, n):
        # u0' = u0/r = 1/2 on the axis, so eta -> 2 sqrt(3) * 1/2
        assert eta_of_r(FluidParams(1.0, n), 1e-7) == pytest.approx(math.sqrt(3.0), rel=1e-2)

    def test_singular_on_axis(self):
        with pytest.raises(DomainError):
            eta_of_r(FluidParams(1.0, 1.0), 0.0)


class TestG:
    def test_smooth_profile(self):
        p = FluidParams(1.0, 0.5)
        g = [g_of_r(p, k / 10) for k in range(2, 10)]
        d = np.diff(g)
        assert np.all(np.isfinite(g))
        for i in range(1, len(d)):
            assert abs(d[i]) <= 10 * abs(d[i - 1]) + 1e-12

    def test_step_halving(self):
        p = FluidParams(1.0, 1.0)
        h = radial_step(0.5)
        assert abs(g_of_r(p, 0.5, h) - g_of_r(p, 0.5, h / 2)) <= 1e-6

    def test_refuses_series_regime(self):
        with pytest.raises(SingularPointError):
            g_of_r(FluidParams(1.0, 1.0), 1e-6)

    def test_rim_uses_one_sided_difference(self):
        p = FluidParams(1.0, 0.5)
        assert g_of_r(p, 1.0) == pytest.approx(g_of_r(p, 1.0 - 1e-4), rel=1e-3)


class TestP1Prime:
    def test_flux_residual(self):
        assert abs(flux_residual(FluidParams(1.0, 0.5), 0.5)) <= 1e-6

    def test_residual_on_grid(self, grid_params):
        for r in (0.1, 0.5, 0.9):
            assert abs(flux_residual(grid_params, r)) <= 1e-6

    def test_finite_for_bingham(self):
        assert math.isfinite(p1_prime(FluidParams(1.0, 1.0), 0.5))

    def test_step_halving(self):
        p = FluidParams(1.0, 0.5)
        h = radial_step(0.5)
        assert abs(p1_prime(p, 0.5, h) - p1_prime(p, 0.5, h / 2)) <= 1e-6


class TestP1:
    def test_rim(self):
        assert p1_of_r(FluidParams(1.0, 0.5), 1.0) == 0.0

    def test_additivity(self):
        p = FluidParams(1.0, 0.5)
        piece, _ = sq.quad(lambda x: -p1_prime(p, x), 0.3, 0.6, epsabs=1e-12, epsrel=1e-10)
        assert abs(p1_of_r(p, 0.3) - (p1_of_r(p, 0.6) + piece)) <= 1e-7

    def test_frozen_below_cutoff(self):
        p = FluidParams(1.0, 0.5)
        assert p1_of_r(p, 1e-5) == p1_of_r(p, R_MIN)

    def test_first_order_lowers_pressure(self):
        p = FluidParams(1.0, 0.5, eps=0.1)
        radii = [0.1 + 0.8 * k / 16 for k in range(17)]
        for r, p1 in zip(radii, p1_profile(p, radii)):
            p0 = pressure_zero(p, r)
            assert p0 + p.eps * p1 <= p0

    def test_profile_matches_pointwise(self):
        p = FluidParams(10.0, 1.5)
        radii = [0.75, 0.2, 0.5]
        for r, v in zip(radii, p1_profile(p, radii)):
            assert v == pytest.approx(p1_of_r(p, r), abs=1e-8)


class TestFirstOrderVelocity:
    def test_branches_meet(self, grid_params):
        r = 0.5
        z0 = z0_of_r(grid_params, r)
        c = coefficients(grid_params, r)
        below = u_first(grid_params, r, math.nextafter(z0, 0.0), c)
        at = u_first(grid_params, r, z0, c)
        assert below == pytest.approx(at, abs=1e-6)

    def test_no_slip(self, grid_params):
        assert u_first(grid_params, 0.5, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_zero_net_flux(self):
        assert abs(first_order_flux(FluidParams(1.0, 0.5), 0.5)) <= 1e-6


class TestFirstOrderShearStress:
    def test_symmetry_plane(self):
        assert tau_rz_first(FluidParams(1.0, 0.5), 0.5, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_branches_meet(self):
        p = FluidParams(1.0, 1.0)
        z0 = z0_of_r(p, 0.5)
        c = coefficients(p, 0.5)
        shear = z0 * c.p1_prime + c.g
        plug = tau_rz_first(p, 0.5, math.nextafter(z0, 0.0), c)
        assert abs(plug - shear) <= 1e-6

    def test_surface_value_is_finite(self):
        p = FluidParams(1.0, 1.0)
        z0 = z0_of_r(p, 0.5)
        assert math.isfinite(tau_rz_first(p, 0.5, z0 * (1 - 1e-16)))


class TestFirstOrderPressure:
    def test_surface(self):
        p = FluidParams(1.0, 0.5)
        z0 = z0_of_r(p, 0.5)
        assert p_first_plug(p, 0.5, z0, p1=0.123) == 0.123

    def test_centre(self):
        p = FluidParams(1.0, 0.5)
        r = 0.5
        p1 = p1_of_r(p, r)
        du0, u0 = plug_velocity_prime(p, r), plug_velocity(p, r)
        expected = p1 - 2 * p.B * (du0 + u0 / r) / eta_of_r(p, r)
        assert p_first_plug(p, r, 0.0, p1) == pytest.approx(expected, rel=1e-12)

    def test_shear_layer_rejected(self):
        with pytest.raises(DomainError):
            p_first_plug(FluidParams(1.0, 0.5), 0.5, 0.99, p1=0.0)

    def test_sample_field_is_continuous_in_pressure(self):
        p = FluidParams(1.0, 0.5)
        z0 = z0_of_r(p, 0.5)
        p1 = p1_of_r(p, 0.5)
        a = sample_field(p, 0.5, z0 * (1 - 1e-12), p1)
        b = sample_field(p, 0.5, z0, p1)
        assert a.region == "pseudo_plug" and b.region == "shear"
        assert a.p1_val == pytest.approx(b.p1_val, abs=1e-5)


class TestPlugInvariant:
    def test_equals_bingham_number(self, grid_params):
        z0 = z0_of_r(grid_params, 0.5)
        for k in range(10):
            z = z0 * k / 10
            assert abs(plug_stress_invariant(grid_params, 0.5, z) - grid_params.B) <= 1e-10 * max(1, grid_params.B)


class TestPlateStress:
    def test_leading_order_is_yielded(self):
        p = FluidParams(1.0, 0.5, eps=1e-300)
        for r in (0.01, 0.3, 1.0):
            assert plate_stress(p, r) >= p.B

    def test_composition(self):
        p = FluidParams(1.0, 0.5, eps=0.1)
        c = coefficients(p, 0.9)
        expected = p.B / z0_of_r(p, 0.9) - p.eps * (c.p1_prime + c.g)
        assert plate_stress(p, 0.9) == pytest.approx(expected, rel=1e-14)

    def test_drops_near_axis(self):
        p = FluidParams(1.0, 0.5, eps=0.1)
        assert plate_stress(p, 0.02) < plate_stress(p, 0.5)

    def test_refuses_near_axis(self):
        with pytest.raises(SingularPointError):
            plate_stress(FluidParams(1.0, 0.5), R_MIN / 2)


class TestSeries:
    def test_first_order_term_diverges(self):
        p = FluidParams(1.0, 0.5)
        vals = [plate_stress_series(p, r)[1] for r in (1e-2, 1e-4, 1e-8)]
        assert vals[0] < vals[1] < vals[2]
        assert vals[2] > 1e4

    def test_leading_ratio(self):
        p = FluidParams(1.0, 0.5)
        r = 1e-4
        exact = -p.B / z0_of_r(p, r)
        assert plate_stress_series(p, r)[0] / exact == pytest.approx(1.0, abs=0.02)

    @pytest.mark.parametrize("n", [0.5, 1.0, 1.5])
    def test_divergence_exponent(self, n):
        p = FluidParams(1.0, n)
        r = np.geomspace(1e-6, 1e-4, 9)
        tau1 = [plate_shear_first(p, x, h=1e-3 * x) for x in r]
        slope = np.polyfit(np.log(r), np.log(tau1), 1)[0]
        assert abs(slope + 1 / (n + 1)) <= 0.02

    def test_domain(self):
        with pytest.raises(DomainError):
            plate_stress_series(FluidParams(1.0, 0.5), 0.0)


class TestR0:
    @pytest.mark.parametrize("B", [1.0, 5.0, 10.0, 20.0])
    def test_exists(self, B):
        p = FluidParams(B, 0.5, eps=0.1)
        r0 = find_r0(p)
        assert r0 is not None and R_MIN < r0 < 1
        assert plate_stress(p, r0) == pytest.approx(B, abs=1e-9)
        for r in np.geomspace(2 * R_MIN, r0 * 0.999, 12):
            assert plate_stress(p, r) < B

    def test_absent_without_first_order(self):
        assert find_r0(FluidParams(1.0, 0.5, eps=1e-12)) is None

    def test_grows_with_bingham_number(self):
        assert find_r0(FluidParams(20.0, 0.5)) > find_r0(FluidParams(1.0, 0.5))
