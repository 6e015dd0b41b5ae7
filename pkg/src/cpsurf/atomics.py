"""Atomic response: polarizability models and atom-side reflection elements.

The atom enters the scattering problem twice: through its dynamic electric
polarizability alpha(i xi) (SI units, C m^2 / V) and through the matrix
element describing one reflection of a vacuum mode off the atom. The
magnetic counterpart, driven by beta(i xi), is included for completeness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.interpolate import PchipInterpolator

from .constants import C_LIGHT, EPS0, HBAR, RB87_ALPHA0_VOLUME, RB87_OMEGA_A

__all__ = [
    "Transition",
    "StaticPolarizability",
    "SingleOscillatorPolarizability",
    "MultilevelPolarizability",
    "TabulatedPolarizability",
    "polarizability",
    "transitions_for_vdw",
    "polarization_vector",
    "complex_wavevector",
    "electric_reflection_element",
    "magnetic_reflection_element",
    "rubidium_single_oscillator",
]

FOUR_PI_EPS0 = 4.0 * math.pi * EPS0


class Transition(NamedTuple):
    """One dipole transition: angular frequency (rad/s) and |d| (C m)."""

    omega: float
    dipole: float


@dataclass(frozen=True)
class StaticPolarizability:
    """Frequency-independent alpha; the retarded-limit workhorse."""

    alpha0: float

    def __post_init__(self):
        if not self.alpha0 > 0.0:
            raise ValueError("alpha0 must be positive")

    def alpha(self, xi):
        return np.full_like(np.asarray(xi, dtype=float), self.alpha0) if np.ndim(xi) else self.alpha0


@dataclass(frozen=True)
class SingleOscillatorPolarizability:
    """alpha(i xi) = alpha0 omega_a^2 / (omega_a^2 + xi^2)."""

    alpha0: float
    omega_a: float

    def __post_init__(self):
        if not (self.alpha0 > 0.0 and self.omega_a > 0.0):
            raise ValueError("alpha0 and omega_a must be positive")

    def alpha(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = self.alpha0 * self.omega_a**2 / (self.omega_a**2 + xi**2)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class MultilevelPolarizability:
    """Ground-state sum over transitions.

    alpha(i xi) = (2 / 3 hbar) sum_n omega_n d_n^2 / (omega_n^2 + xi^2)
    """

    transitions: tuple[Transition, ...]

    def __post_init__(self):
        transitions = tuple(Transition(*t) for t in self.transitions)
        object.__setattr__(self, "transitions", transitions)
        if not transitions:
            raise ValueError("need at least one transition")
        for t in transitions:
            if not (t.omega > 0.0 and t.dipole > 0.0):
                raise ValueError("transition frequencies and dipoles must be positive")

    def alpha(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = np.zeros_like(xi)
        for t in self.transitions:
            out = out + t.omega * t.dipole**2 / (t.omega**2 + xi**2)
        out = out * (2.0 / (3.0 * HBAR))
        return out if out.ndim else float(out)


class TabulatedPolarizability:
    """alpha(i xi) samples with monotone cubic interpolation, strict range."""

    def __init__(self, xi: np.ndarray, alpha: np.ndarray):
        xi = np.asarray(xi, dtype=float)
        alpha = np.asarray(alpha, dtype=float)
        if xi.ndim != 1 or xi.size < 2:
            raise ValueError("need at least two samples")
        if not np.all(np.diff(xi) > 0.0) or xi[0] < 0.0:
            raise ValueError("xi grid must be non-negative and ascending")
        if alpha.shape != xi.shape or not np.all(alpha > 0.0):
            raise ValueError("alpha samples must be positive and match xi")
        if np.any(np.diff(alpha) > 0.0):
            raise ValueError("alpha(i xi) must be non-increasing")
        self.xi = xi
        self.alpha_samples = alpha
        self._interp = PchipInterpolator(xi, alpha)

    def alpha(self, xi):
        xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
        if np.any(xi_arr < self.xi[0]) or np.any(xi_arr > self.xi[-1]):
            raise ValueError(
                f"xi outside tabulated range [{self.xi[0]:.6e}, {self.xi[-1]:.6e}]"
            )
        out = self._interp(xi_arr)
        return float(out[0]) if np.ndim(xi) == 0 else out


def polarizability(model, xi):
    return model.alpha(xi)


def transitions_for_vdw(model) -> tuple[Transition, ...]:
    """Transition list equivalent to the model, for the short-distance formulas.

    A single oscillator maps exactly onto one transition with
    d^2 = 3 hbar omega_a alpha0 / 2; static or tabulated models carry no
    transition structure and are rejected.
    """
    if isinstance(model, MultilevelPolarizability):
        return model.transitions
    if isinstance(model, SingleOscillatorPolarizability):
        dipole = math.sqrt(1.5 * HBAR * model.omega_a * model.alpha0)
        return (Transition(model.omega_a, dipole),)
    raise ValueError(
        f"{type(model).__name__} has no transition decomposition"
    )


def _unit_tangential(k_vec: np.ndarray) -> tuple[np.ndarray, float]:
    k_vec = np.asarray(k_vec, dtype=float)
    if k_vec.shape != (2,):
        raise ValueError("k must be a 2-vector (kx, ky)")
    k = float(np.hypot(k_vec[0], k_vec[1]))
    if k == 0.0:
        raise ValueError("polarization vectors need |k| > 0")
    return k_vec / k, k


def complex_wavevector(k_vec: np.ndarray, xi: float, updown: int) -> np.ndarray:
    """K^+- = (kx, ky, +-i kappa) continued to omega = i xi."""
    k_vec = np.asarray(k_vec, dtype=float)
    k = float(np.hypot(k_vec[0], k_vec[1]))
    kappa = math.sqrt((xi / C_LIGHT) ** 2 + k**2)
    return np.array([k_vec[0], k_vec[1], 1j * updown * kappa], dtype=complex)


def polarization_vector(pol: str, k_vec: np.ndarray, xi: float, updown: int) -> np.ndarray:
    """TE/TM unit polarization for the up (+1) or down (-1) going mode.

    TE is z x k_hat; TM is (c / i xi) (-k z_hat +- i kappa k_hat). Both are
    the standard analytic continuations to omega = i xi, xi > 0.
    """
    if updown not in (+1, -1):
        raise ValueError("updown must be +1 or -1")
    k_hat, k = _unit_tangential(k_vec)
    if pol == "TE":
        return np.array([-k_hat[1], k_hat[0], 0.0], dtype=complex)
    if pol != "TM":
        raise ValueError(f"unknown polarization {pol!r}")
    if xi <= 0.0:
        raise ValueError("TM polarization vector needs xi > 0")
    kappa = math.sqrt((xi / C_LIGHT) ** 2 + k**2)
    vec = np.zeros(3, dtype=complex)
    vec[:2] = updown * (C_LIGHT * kappa / xi) * k_hat
    vec[2] = 1j * C_LIGHT * k / xi
    return vec


def _displacement_phase(
    k_vec: np.ndarray, kp_vec: np.ndarray, kappa: float, kappa_p: float,
    r_atom: np.ndarray, z_atom: float,
) -> complex:
    dk = np.asarray(k_vec, dtype=float) - np.asarray(kp_vec, dtype=float)
    r_atom = np.asarray(r_atom, dtype=float)
    return np.exp(-1j * (dk @ r_atom)) * math.exp(-(kappa + kappa_p) * z_atom)


def electric_reflection_element(
    atom,
    xi: float,
    k_vec: np.ndarray,
    pol: str,
    kp_vec: np.ndarray,
    pol_p: str,
    r_atom: np.ndarray = (0.0, 0.0),
    z_atom: float = 0.0,
) -> complex:
    """One electric-dipole reflection of mode (k', p') into (k, p).

    -(xi^2 / 2 kappa) (alpha(i xi) / eps0 c^2)
      [eps_hat^-_p(k) . eps_hat^+_p'(k')] e^{-i(k - k').r_A} e^{-(kappa + kappa') z_A}

    Value carries the (2 pi)^-2 d^2k measure convention (units m^2).
    """
    if xi <= 0.0:
        raise ValueError("xi must be positive")
    if z_atom < 0.0:
        raise ValueError("z_atom must be non-negative")
    _, k = _unit_tangential(k_vec)
    _, kp = _unit_tangential(kp_vec)
    kappa = math.sqrt((xi / C_LIGHT) ** 2 + k**2)
    kappa_p = math.sqrt((xi / C_LIGHT) ** 2 + kp**2)
    dot = polarization_vector(pol, k_vec, xi, -1) @ polarization_vector(
        pol_p, kp_vec, xi, +1
    )
    pref = -(xi**2 / (2.0 * kappa)) * atom.alpha(xi) / (EPS0 * C_LIGHT**2)
    return pref * dot * _displacement_phase(k_vec, kp_vec, kappa, kappa_p, r_atom, z_atom)


def magnetic_reflection_element(
    beta,
    xi: float,
    k_vec: np.ndarray,
    pol: str,
    kp_vec: np.ndarray,
    pol_p: str,
    r_atom: np.ndarray = (0.0, 0.0),
    z_atom: float = 0.0,
) -> complex:
    """Magnetic-dipole analogue of the electric reflection element.

    -(beta(i xi) / 2 kappa)
      eps_hat^-_p(k) . [K^- x (K'^+ x eps_hat^+_p'(k'))]
      e^{-i(k - k').r_A} e^{-(kappa + kappa') z_A}

    ``beta`` is either a constant (m^3-like SI magnetic polarizability)
    or a callable beta(xi).
    """
    if xi <= 0.0:
        raise ValueError("xi must be positive")
    if z_atom < 0.0:
        raise ValueError("z_atom must be non-negative")
    beta_val = beta(xi) if callable(beta) else float(beta)
    _, k = _unit_tangential(k_vec)
    _, kp = _unit_tangential(kp_vec)
    kappa = math.sqrt((xi / C_LIGHT) ** 2 + k**2)
    kappa_p = math.sqrt((xi / C_LIGHT) ** 2 + kp**2)
    k_minus = complex_wavevector(k_vec, xi, -1)
    kp_plus = complex_wavevector(kp_vec, xi, +1)
    eps_in = polarization_vector(pol_p, kp_vec, xi, +1)
    eps_out = polarization_vector(pol, k_vec, xi, -1)
    triple = eps_out @ np.cross(k_minus, np.cross(kp_plus, eps_in))
    pref = -beta_val / (2.0 * kappa)
    return pref * triple * _displacement_phase(k_vec, kp_vec, kappa, kappa_p, r_atom, z_atom)


def rubidium_single_oscillator() -> SingleOscillatorPolarizability:
    """Ground-state Rb-87: alpha0/(4 pi eps0) = 47.3e-30 m^3, D2 line 780 nm."""
    return SingleOscillatorPolarizability(
        alpha0=FOUR_PI_EPS0 * RB87_ALPHA0_VOLUME,
        omega_a=RB87_OMEGA_A,
    )
