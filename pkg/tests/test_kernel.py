import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from cpsurf import kernel, optics
from cpsurf.constants import C_LIGHT

GOLD = optics.gold_plasma()
SILICON = optics.silicon_drude_lorentz()
MIRROR = optics.PerfectConductor()

_XI = st.floats(min_value=1e12, max_value=1e17)
_K = st.floats(min_value=1e4, max_value=1e7)
_PHI = st.floats(min_value=0.01, max_value=math.pi - 0.01)
_ZA = st.floats(min_value=1e-7, max_value=3e-6)


def _point(surface, xi, kp, kpp, phi):
    return kernel.kernel_point(surface, xi, kp, kpp, math.cos(phi), math.sin(phi))


class TestKernelIdentities:
    @given(xi=_XI, kp=_K, kpp=_K, phi=_PHI, za=_ZA)
    @hyp_settings(max_examples=60, deadline=None)
    def test_exact_matches_block_assembly(self, xi, kp, kpp, phi, za):
        for surface in (GOLD, SILICON):
            pt = _point(surface, xi, kp, kpp, phi)
            direct = kernel.a_exact(pt, za)
            assembled = kernel.assemble_a_from_block(pt, za)
            if assembled != 0.0:
                assert direct == pytest.approx(assembled, rel=1e-10)

    @given(xi=_XI, kp=_K, za=_ZA)
    @hyp_settings(max_examples=60, deadline=None)
    def test_specular_reduction(self, xi, kp, za):
        # At k' = k'' and zero angle the kernel collapses to the plane
        # reflection moment: e^{-2 kappa z} [(xi/c)^2 (r_te - r_tm) - 2 k^2 r_tm].
        for surface in (GOLD, SILICON):
            pt = kernel.kernel_point(surface, xi, kp, kp, 1.0, 0.0)
            fs = optics.fresnel(surface, kp, xi)
            q = (xi / C_LIGHT) ** 2 * (fs.r_te - fs.r_tm) - 2.0 * kp**2 * fs.r_tm
            want = math.exp(-2.0 * fs.kappa * za) * q
            assert kernel.a_exact(pt, za) == pytest.approx(want, rel=1e-12)

    @given(xi=_XI, kp=_K, za=_ZA)
    @hyp_settings(max_examples=40, deadline=None)
    def test_specular_reduction_mirror(self, xi, kp, za):
        # Mirror moment: r_te = -1, r_tm = +1 give -2 kappa^2.
        pt = kernel.kernel_point(MIRROR, xi, kp, kp, 1.0, 0.0)
        kappa = math.hypot(kp, xi / C_LIGHT)
        want = math.exp(-2.0 * kappa * za) * (-2.0 * kappa**2)
        assert kernel.a_perfect(pt, za) == pytest.approx(want, rel=1e-12)

    @given(xi=_XI, kp=_K, kpp=_K, phi=_PHI, za=_ZA)
    @hyp_settings(max_examples=60, deadline=None)
    def test_reciprocity(self, xi, kp, kpp, phi, za):
        for surface, fn in ((GOLD, kernel.a_exact), (MIRROR, kernel.a_perfect)):
            a12 = fn(_point(surface, xi, kp, kpp, phi), za)
            a21 = fn(_point(surface, xi, kpp, kp, phi), za)
            assert a12 == pytest.approx(a21, rel=1e-11)

    @given(xi=_XI, kp=_K, kpp=_K, phi=_PHI, za=_ZA)
    @hyp_settings(max_examples=60, deadline=None)
    def test_angle_sign_symmetry(self, xi, kp, kpp, phi, za):
        p_plus = kernel.kernel_point(GOLD, xi, kp, kpp, math.cos(phi), math.sin(phi))
        p_minus = kernel.kernel_point(GOLD, xi, kp, kpp, math.cos(phi), -math.sin(phi))
        assert kernel.a_exact(p_plus, za) == kernel.a_exact(p_minus, za)

    @given(xi=_XI, kp=_K, kpp=_K, phi=_PHI, za=_ZA)
    @hyp_settings(max_examples=80, deadline=None)
    def test_finite_everywhere(self, xi, kp, kpp, phi, za):
        for surface in (GOLD, SILICON):
            val = kernel.a_exact(_point(surface, xi, kp, kpp, phi), za)
            assert math.isfinite(val)
        assert math.isfinite(kernel.a_perfect(_point(MIRROR, xi, kp, kpp, phi), za))


class TestPerfectLimit:
    def test_plasma_ramp_approaches_mirror(self):
        xi, kp, kpp, phi, za = 3e14, 2e6, 1.1e6, 1.0, 1e-6
        ref = kernel.a_perfect(_point(MIRROR, xi, kp, kpp, phi), za)
        devs = []
        for fac in (1e3, 1e5, 1e7):
            surface = optics.PlasmaMetal(fac * xi)
            val = kernel.a_exact(_point(surface, xi, kp, kpp, phi), za)
            devs.append(abs(val / ref - 1.0))
        assert devs == sorted(devs, reverse=True)
        assert devs[1] < 1e-4
        assert devs[2] < 1e-6

    def test_vectorized_matches_scalar(self):
        xi, za = 8e14, 6e-7
        kp = np.array([3e5, 1e6, 4e6])
        kpp = np.array([5e5, 2e6, 9e5])
        cos_d = np.array([0.9, -0.2, 0.4])
        sin_d = np.sqrt(1.0 - cos_d**2)
        pt = kernel.kernel_point(GOLD, xi, kp, kpp, cos_d, sin_d)
        batch = kernel.a_exact(pt, za)
        assert batch.shape == (3,)
        for i in range(3):
            single = kernel.a_exact(
                kernel.kernel_point(GOLD, xi, kp[i], kpp[i], cos_d[i], sin_d[i]), za
            )
            assert batch[i] == pytest.approx(single, rel=1e-14)
