import math

import numpy as np
import pytest

from cpsurf import closedforms as cf, quadrature as quad
from cpsurf.atomics import StaticPolarizability
from cpsurf.quadrature import IntegralResult, QuadratureSettings


class TestSettings:
    def test_defaults_valid(self):
        s = QuadratureSettings()
        assert s.rel_tol == 1e-6 and s.kz_cutoff == 40.0

    def test_validation(self):
        with pytest.raises(ValueError):
            QuadratureSettings(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSettings(max_panels=0)
        with pytest.raises(ValueError):
            QuadratureSettings(angular_max_half=4, angular_min_half=8)
        with pytest.raises(ValueError):
            QuadratureSettings(kz_cutoff=-1.0)


class TestPlaneIntegrals:
    def test_mirror_static_potential_is_exact_power_law(self, static_rb, mirror):
        # Static atom + ideal mirror has no length scale besides z, so the
        # retarded closed form holds at every distance, not just far away.
        s = QuadratureSettings(rel_tol=1e-8)
        for z in (5e-8, 2e-6, 1e-5):
            u = quad.plane_potential(static_rb, mirror, z, s)
            ref = cf.u_cp0(z, static_rb.alpha0)
            assert u.value == pytest.approx(ref, rel=1e-7)
            assert abs(u.value - ref) <= 3.0 * u.error + 1e-12 * abs(ref)

    def test_mirror_static_force_is_exact_power_law(self, static_rb, mirror):
        s = QuadratureSettings(rel_tol=1e-8)
        f = quad.plane_force(static_rb, mirror, 2e-6, s)
        assert f.value == pytest.approx(cf.f_cp0(2e-6, static_rb.alpha0), rel=1e-7)

    def test_force_is_potential_gradient(self, osc_rb, gold):
        z, h = 1e-6, 1e-9
        s = QuadratureSettings(rel_tol=1e-9)
        up = quad.plane_potential(osc_rb, gold, z + h, s).value
        um = quad.plane_potential(osc_rb, gold, z - h, s).value
        f = quad.plane_force(osc_rb, gold, z, s).value
        assert f == pytest.approx(-(up - um) / (2.0 * h), rel=1e-5)

    def test_linearity_in_alpha(self, static_rb, mirror, fast_settings):
        doubled = StaticPolarizability(2.0 * static_rb.alpha0)
        u1 = quad.plane_potential(static_rb, mirror, 1e-6, fast_settings)
        u2 = quad.plane_potential(doubled, mirror, 1e-6, fast_settings)
        assert u2.value == pytest.approx(2.0 * u1.value, rel=1e-12)

    def test_attractive_and_monotone(self, osc_rb, silicon, fast_settings):
        values = [
            quad.plane_potential(osc_rb, silicon, z, fast_settings).value
            for z in (0.5e-6, 1e-6, 2e-6)
        ]
        assert all(v < 0.0 for v in values)
        assert values[0] < values[1] < values[2]

    def test_nonretarded_coefficient(self, osc_rb, gold):
        # At z far below both material wavelengths U -> -C3 / z^3 with
        # C3 = hbar alpha0 omega_a omega_p / (32 pi eps0 (sqrt2 omega_a + omega_p)).
        from cpsurf.constants import EPS0, GOLD_OMEGA_P, HBAR

        c3 = (
            HBAR
            * osc_rb.alpha0
            * osc_rb.omega_a
            * GOLD_OMEGA_P
            / (32.0 * math.pi * EPS0 * (math.sqrt(2.0) * osc_rb.omega_a + GOLD_OMEGA_P))
        )
        z = 2e-9
        u = quad.plane_potential(osc_rb, gold, z, QuadratureSettings(rel_tol=1e-7))
        assert u.value == pytest.approx(-c3 / z**3, rel=5e-3)

    def test_validation(self, static_rb, mirror, settings):
        with pytest.raises(ValueError):
            quad.plane_potential(static_rb, mirror, 0.0, settings)
        with pytest.raises(ValueError):
            quad.plane_force(static_rb, mirror, -1e-6, settings)


class TestResponse:
    def test_zero_k_equals_plane_force(self, static_rb, mirror, fast_settings):
        z = 1e-6
        g0 = quad.response_g(static_rb, mirror, z, 0.0, fast_settings)
        f0 = quad.plane_force(static_rb, mirror, z, fast_settings)
        assert g0.value == pytest.approx(f0.value, rel=1e-6)

    def test_mirror_family_closed_form(self, static_rb, mirror, fast_settings):
        z = 1e-6
        for big_z in (0.5, 2.0):
            g = quad.response_g(static_rb, mirror, z, big_z / z, fast_settings)
            ref = cf.g_cp_perf(big_z / z, z, static_rb.alpha0)
            assert g.value == pytest.approx(ref, rel=1e-4)

    def test_monotone_decay_in_k(self, static_rb, mirror, fast_settings):
        z = 1e-6
        ks = [0.0, 0.5 / z, 1.0 / z, 2.0 / z, 5.0 / z]
        vals = [abs(quad.response_g(static_rb, mirror, z, k, fast_settings).value) for k in ks]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_exponential_distance_suppression(self, static_rb, mirror, fast_settings):
        # Doubling the distance at fixed k must beat e^{-0.8 k dz} while
        # k z_A sits in the strongly suppressed window.
        k = 5e6
        za, zb = 1.2e-6, 2.4e-6
        ga = quad.response_g(static_rb, mirror, za, k, fast_settings)
        gb = quad.response_g(static_rb, mirror, zb, k, fast_settings)
        assert abs(gb.value) <= math.exp(-0.8 * k * (zb - za)) * abs(ga.value)

    def test_rho_concave_near_zero(self, static_rb, mirror, fast_settings):
        z = 1e-6
        g0 = quad.response_g(static_rb, mirror, z, 0.0, fast_settings).value
        g1 = quad.response_g(static_rb, mirror, z, 0.5 / z, fast_settings).value
        g2 = quad.response_g(static_rb, mirror, z, 1.0 / z, fast_settings).value
        assert (g0 - 2.0 * g1 + g2) / g0 < 0.0

    def test_negative_response(self, osc_rb, gold, fast_settings):
        g = quad.response_g(osc_rb, gold, 1e-6, 2e6, fast_settings)
        assert g.value < 0.0

    def test_halving_tolerance_stays_within_error(self, osc_rb, gold):
        coarse = quad.response_g(osc_rb, gold, 1e-6, 2e6, QuadratureSettings(rel_tol=1e-5))
        fine = quad.response_g(osc_rb, gold, 1e-6, 2e6, QuadratureSettings(rel_tol=5e-6))
        assert abs(coarse.value - fine.value) <= coarse.error

    def test_cutoff_returns_negligible_zero(self, static_rb, mirror, settings):
        z = 1e-6
        res = quad.response_g(static_rb, mirror, z, 45.0 / z, settings)
        assert res.negligible and res.value == 0.0
        assert 0.0 < res.error < abs(cf.f_cp0(z, static_rb.alpha0))

    def test_deterministic(self, osc_rb, gold, fast_settings):
        a = quad.response_g(osc_rb, gold, 1e-6, 2e6, fast_settings)
        b = quad.response_g(osc_rb, gold, 1e-6, 2e6, fast_settings)
        assert a.value == b.value and a.error == b.error

    def test_validation(self, static_rb, mirror, settings):
        with pytest.raises(ValueError):
            quad.response_g(static_rb, mirror, 1e-6, -1.0, settings)
        with pytest.raises(ValueError):
            quad.response_g(static_rb, mirror, 0.0, 1e6, settings)


class TestDerivedQuantities:
    def test_rho_is_one_at_zero_k(self, static_rb, mirror, fast_settings):
        r = quad.rho(static_rb, mirror, 1e-6, 0.0, fast_settings)
        assert r.value == pytest.approx(1.0, abs=1e-6)

    def test_rho_matches_closed_form(self, static_rb, mirror, fast_settings):
        z = 2e-6
        r = quad.rho(static_rb, mirror, z, 1.0 / z, fast_settings)
        assert r.value == pytest.approx(cf.rho_cp_perf(1.0), rel=2e-4)

    def test_rho_propagates_negligible(self, static_rb, mirror, settings):
        r = quad.rho(static_rb, mirror, 1e-6, 50.0 / 1e-6, settings)
        assert r.negligible and r.value == 0.0

    def test_eta_mirror_static_is_unity(self, static_rb, mirror, fast_settings):
        e = quad.eta_f(static_rb, mirror, 1.3e-6, fast_settings)
        assert e.value == pytest.approx(1.0, abs=1e-6)

    def test_eta_gold_below_unity_rising(self, osc_rb, gold, fast_settings):
        e1 = quad.eta_f(osc_rb, gold, 1e-6, fast_settings)
        e2 = quad.eta_f(osc_rb, gold, 5e-6, fast_settings)
        assert 0.0 < e1.value < e2.value < 1.0

    def test_evaluator_caches(self, static_rb, mirror, fast_settings):
        g_of_k = quad.g_evaluator(static_rb, mirror, 1e-6, fast_settings)
        first = g_of_k(2e6)
        second = g_of_k(2e6)
        assert first is second
        assert isinstance(first, IntegralResult)
