import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from cpsurf import optics
from cpsurf.constants import C_LIGHT, GOLD_OMEGA_P, SILICON_EPS_STATIC, SILICON_OMEGA_DL


class TestPermittivityModels:
    def test_vacuum(self):
        v = optics.Vacuum()
        assert v.eps(0.0) == 1.0 and v.eps(1e15) == 1.0

    def test_gold_plasma_formula(self):
        gold = optics.gold_plasma()
        xi = 3e15
        assert gold.eps(xi) == pytest.approx(1.0 + GOLD_OMEGA_P**2 / xi**2, rel=1e-14)
        assert math.isinf(gold.eps(0.0))
        assert gold.eps_times_xi2(0.0) == pytest.approx(GOLD_OMEGA_P**2)

    def test_silicon_formula(self):
        si = optics.silicon_drude_lorentz()
        xi = 2e15
        want = 1.0 + (SILICON_EPS_STATIC - 1.0) * SILICON_OMEGA_DL**2 / (
            SILICON_OMEGA_DL**2 + xi**2
        )
        assert si.eps(xi) == pytest.approx(want, rel=1e-14)
        assert si.eps(0.0) == pytest.approx(SILICON_EPS_STATIC, rel=1e-14)

    @given(xi=st.floats(min_value=1e10, max_value=1e18))
    @hyp_settings(max_examples=60, deadline=None)
    def test_monotone_decay_to_one(self, xi):
        for model in (optics.gold_plasma(), optics.silicon_drude_lorentz()):
            assert model.eps(xi) > model.eps(2.0 * xi) > 1.0

    def test_array_support(self):
        xi = np.array([1e14, 1e15, 1e16])
        out = optics.permittivity_imaginary_axis(optics.silicon_drude_lorentz(), xi)
        assert out.shape == (3,)
        assert np.all(np.diff(out) < 0.0)

    def test_model_validation(self):
        with pytest.raises(ValueError):
            optics.PlasmaMetal(0.0)
        with pytest.raises(ValueError):
            optics.DrudeLorentz(1e15, 0.5)
        with pytest.raises(ValueError):
            optics.DrudeLorentz(-1.0, 11.87)


class TestFresnel:
    def test_perfect_conductor_values(self):
        fs = optics.fresnel(optics.PerfectConductor(), 2e6, 3e15)
        assert fs.r_te == -1.0 and fs.r_tm == 1.0
        assert fs.t_te == 0.0 and fs.t_tm == 0.0
        assert fs.kappa == pytest.approx(math.hypot(2e6, 3e15 / C_LIGHT), rel=1e-15)

    def test_vacuum_is_transparent(self):
        fs = optics.fresnel(optics.Vacuum(), 2e6, 3e15)
        assert fs.r_te == 0.0 and fs.r_tm == 0.0
        assert fs.t_te == 1.0 and fs.t_tm == 1.0

    def test_normal_incidence_reduction(self):
        # k = 0: r_te = (1 - sqrt eps)/(1 + sqrt eps), r_tm = -r_te.
        si = optics.silicon_drude_lorentz()
        xi = 1.7e15
        n = math.sqrt(si.eps(xi))
        fs = optics.fresnel(si, 0.0, xi)
        assert fs.r_te == pytest.approx((1.0 - n) / (1.0 + n), rel=1e-13)
        assert fs.r_tm == pytest.approx((n - 1.0) / (n + 1.0), rel=1e-13)

    def test_plasma_static_limit(self):
        # xi = 0 for a plasma metal: TM saturates at 1, TE stays partial.
        gold = optics.gold_plasma()
        k = 1e6
        fs = optics.fresnel(gold, k, 0.0)
        assert fs.r_tm == 1.0
        kappa_t = math.hypot(k, GOLD_OMEGA_P / C_LIGHT)
        assert fs.r_te == pytest.approx((k - kappa_t) / (k + kappa_t), rel=1e-13)
        assert -1.0 < fs.r_te < 0.0

    @given(
        k=st.floats(min_value=1.0, max_value=1e8),
        xi=st.floats(min_value=1e10, max_value=1e17),
    )
    @hyp_settings(max_examples=80, deadline=None)
    def test_amplitude_bounds(self, k, xi):
        for model in (optics.gold_plasma(), optics.silicon_drude_lorentz()):
            fs = optics.fresnel(model, k, xi)
            assert -1.0 <= fs.r_te <= 0.0
            assert 0.0 <= fs.r_tm <= 1.0
            assert 0.0 < fs.t_te <= 1.0
            assert fs.kappa_t >= fs.kappa > 0.0

    def test_array_k(self):
        fs = optics.fresnel(optics.gold_plasma(), np.array([1e5, 1e6, 1e7]), 2e15)
        assert fs.r_te.shape == (3,)
        fs_scalar = optics.fresnel(optics.gold_plasma(), 1e6, 2e15)
        assert fs.r_tm[1] == pytest.approx(fs_scalar.r_tm, rel=1e-15)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            optics.fresnel(optics.gold_plasma(), -1.0, 1e15)
        with pytest.raises(ValueError):
            optics.fresnel(optics.gold_plasma(), 1e6, -1e15)
        with pytest.raises(ValueError):
            optics.fresnel(optics.gold_plasma(), 0.0, 0.0)


class TestTabulatedPermittivity:
    def test_power_law_interpolation_is_exact(self):
        # PCHIP in log-log follows eps - 1 = A / xi^2 exactly.
        xi = np.geomspace(1e13, 1e17, 25)
        eps = 1.0 + 1e30 / xi**2
        tab = optics.TabulatedPermittivity(xi, eps)
        mid = np.sqrt(xi[:-1] * xi[1:])
        want = 1.0 + 1e30 / mid**2
        got = np.array([tab.eps(x) for x in mid])
        assert np.max(np.abs(got / want - 1.0)) < 1e-12

    def test_strict_range(self):
        xi = np.geomspace(1e14, 1e16, 10)
        tab = optics.TabulatedPermittivity(xi, 1.0 + 1e30 / xi**2)
        with pytest.raises(ValueError):
            tab.eps(1e13)
        with pytest.raises(ValueError):
            tab.eps(1e17)

    def test_extrapolation_modes(self):
        xi = np.geomspace(1e14, 1e16, 10)
        vals = 1.0 + 1e30 / xi**2
        tab = optics.TabulatedPermittivity(
            xi, vals, extrapolate_low="inverse_square", extrapolate_high="inverse_square"
        )
        assert tab.eps(1e13) == pytest.approx(1.0 + 1e30 / 1e26, rel=1e-10)
        assert tab.eps(1e17) == pytest.approx(1.0 + 1e30 / 1e34, rel=1e-10)
        tab_const = optics.TabulatedPermittivity(xi, vals, extrapolate_low="constant")
        assert tab_const.eps(1e12) == pytest.approx(tab_const.eps(xi[0]), rel=1e-12)

    def test_validation(self):
        xi = np.geomspace(1e14, 1e16, 10)
        with pytest.raises(ValueError):
            optics.TabulatedPermittivity(xi, np.full(10, 0.5))
        with pytest.raises(ValueError):
            optics.TabulatedPermittivity(xi[::-1], 1.0 + 1e30 / xi**2)
        with pytest.raises(ValueError):
            optics.TabulatedPermittivity(xi, 1.0 + 1e30 / xi**2, extrapolate_low="bogus")


def _lorentzian_table(omega0=3e15, omega_p=1.2e15, gamma=2e14, n=2000):
    w = np.geomspace(omega0 / 100.0, omega0 * 100.0, n)
    im = omega_p**2 * gamma * w / ((omega0**2 - w**2) ** 2 + gamma**2 * w**2)
    return optics.RealAxisOpticalData(omega=w, eps_imag=im), omega0, omega_p, gamma


class TestKramersKronig:
    def test_lorentzian_round_trip(self):
        data, omega0, omega_p, gamma = _lorentzian_table()
        xi = np.array([omega0 / 3.0, omega0, 3.0 * omega0])
        got = optics.kramers_kronig_imaginary_axis(data, xi)
        want = 1.0 + omega_p**2 / (omega0**2 + xi**2 + gamma * xi)
        assert np.max(np.abs(got / want - 1.0)) < 1e-6

    def test_drude_extension_round_trip(self):
        # Full metal: data above 1e12 rad/s plus the declared Drude
        # continuation below it; eps(i xi) = 1 + wp^2 / (xi (xi + gamma)).
        wp, gamma = 1.37e16, 4.1e13
        w = np.geomspace(1e12, 1e18, 1200)
        im = wp**2 * gamma / (w * (w**2 + gamma**2))
        data = optics.RealAxisOpticalData(
            omega=w, eps_imag=im, drude_omega_p=wp, drude_gamma=gamma
        )
        xi = np.array([1e13, 1e14, 1e15, 1e16])
        got = optics.kramers_kronig_imaginary_axis(data, xi)
        want = 1.0 + wp**2 / (xi * (xi + gamma))
        assert np.max(np.abs(got / want - 1.0)) < 1e-6

    def test_zero_absorption_gives_unity(self):
        data = optics.RealAxisOpticalData(
            omega=np.geomspace(1e14, 1e16, 50), eps_imag=np.zeros(50)
        )
        out = optics.kramers_kronig_imaginary_axis(data, np.array([1e13, 1e15, 1e17]))
        assert np.all(out == 1.0)

    def test_scalar_xi(self):
        data, omega0, omega_p, gamma = _lorentzian_table(n=600)
        out = optics.kramers_kronig_imaginary_axis(data, omega0)
        assert isinstance(out, float)
        assert out == pytest.approx(
            1.0 + omega_p**2 / (2.0 * omega0**2 + gamma * omega0), rel=1e-5
        )

    def test_tabulated_wrapper(self):
        data, omega0, omega_p, gamma = _lorentzian_table(n=800)
        grid = np.geomspace(omega0 / 5.0, 5.0 * omega0, 12)
        tab = optics.tabulated_from_kramers_kronig(data, grid)
        want = 1.0 + omega_p**2 / (omega0**2 + grid[4] ** 2 + gamma * grid[4])
        assert tab.eps(grid[4]) == pytest.approx(want, rel=1e-5)

    def test_data_validation(self):
        w = np.geomspace(1e14, 1e16, 10)
        with pytest.raises(ValueError):
            optics.RealAxisOpticalData(omega=w, eps_imag=-np.ones(10))
        with pytest.raises(ValueError):
            optics.RealAxisOpticalData(omega=w, eps_imag=np.ones(10), drude_omega_p=1e16)
        with pytest.raises(ValueError):
            optics.RealAxisOpticalData(omega=w, eps_imag=np.linspace(1.0, 2.0, 10))
        with pytest.raises(ValueError):
            optics.kramers_kronig_imaginary_axis(
                optics.RealAxisOpticalData(omega=w, eps_imag=np.ones(10)), -1.0
            )


class TestOpticalCsv:
    def test_round_trip_with_metadata(self, tmp_path):
        path = tmp_path / "drude.csv"
        w = np.geomspace(1e13, 1e17, 40)
        im = 1e30 / w**2
        lines = ["# drude_omega_p=1.37e16", "# drude_gamma=4.1e13", "omega_rad_s,eps_imag"]
        lines += [f"{a:.12e},{b:.12e}" for a, b in zip(w, im)]
        path.write_text("\n".join(lines) + "\n")
        data = optics.read_optical_csv(path)
        assert data.drude_omega_p == pytest.approx(1.37e16)
        assert data.drude_gamma == pytest.approx(4.1e13)
        assert np.allclose(data.omega, w) and np.allclose(data.eps_imag, im)

    def test_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("frequency,absorption\n1e14,1.0\n1e15,0.5\n1e16,0.2\n")
        with pytest.raises(ValueError):
            optics.read_optical_csv(path)

    def test_imaginary_axis_round_trip(self, tmp_path):
        path = tmp_path / "eps_xi.csv"
        xi = np.geomspace(1e13, 1e17, 30)
        eps = 1.0 + 1e31 / xi**2
        optics.write_imaginary_axis_csv(path, xi, eps, header_lines=["origin=test"])
        tab = optics.read_imaginary_axis_csv(path)
        assert tab.eps(xi[7]) == pytest.approx(eps[7], rel=1e-12)
        text = path.read_text()
        assert text.startswith("# origin=test\nxi_rad_s,eps_i_xi\n")
