"""Physical constants (CODATA 2018) and package-wide defaults.

All quantities are SI unless a name says otherwise.
"""

from __future__ import annotations

C_LIGHT = 299_792_458.0  # m / s
HBAR = 1.054_571_817e-34  # J * s
EPS0 = 8.854_187_8128e-12  # F / m
EV = 1.602_176_634e-19  # J

TWO_PI = 6.283185307179586

# Default surface parameters. Gold is a plasma-model metal with plasma
# wavelength 136 nm; silicon a single-resonance dielectric with the static
# permittivity of undoped Si.
GOLD_PLASMA_WAVELENGTH = 136e-9  # m
GOLD_OMEGA_P = TWO_PI * C_LIGHT / GOLD_PLASMA_WAVELENGTH  # rad / s
SILICON_EPS_STATIC = 11.87
SILICON_OMEGA_DL = 6.6e15  # rad / s

# Default atom: ground-state Rb-87, single effective transition at the D2 line.
RB87_ALPHA0_VOLUME = 47.3e-30  # m^3, static polarizability / (4 pi eps0)
RB87_WAVELENGTH = 780e-9  # m
RB87_OMEGA_A = TWO_PI * C_LIGHT / RB87_WAVELENGTH  # rad / s
RB87_MASS = 1.44316e-25  # kg
RB87_SCATTERING_LENGTH = 5.24e-9  # m


def constants_header_fields() -> dict[str, float]:
    """Constants echoed into every CLI output header."""
    return {
        "c_m_s": C_LIGHT,
        "hbar_J_s": HBAR,
        "eps0_F_m": EPS0,
        "eV_J": EV,
    }
