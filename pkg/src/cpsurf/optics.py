"""Surface optics on the imaginary frequency axis.

Permittivity models eps(i xi), Fresnel coefficients for a planar
interface, and the Kramers-Kronig transform that turns measured real-axis
absorption data Im eps(omega) into eps(i xi).

Everything is evaluated at imaginary frequency omega = i xi (xi >= 0),
where eps is real and >= 1 for passive media and all integrands that use
these quantities are smooth and sign-definite.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._integrate import adaptive_gauss
from .constants import (
    C_LIGHT,
    GOLD_OMEGA_P,
    SILICON_EPS_STATIC,
    SILICON_OMEGA_DL,
)

__all__ = [
    "Vacuum",
    "PerfectConductor",
    "PlasmaMetal",
    "DrudeLorentz",
    "TabulatedPermittivity",
    "FresnelSet",
    "RealAxisOpticalData",
    "permittivity_imaginary_axis",
    "fresnel",
    "kramers_kronig_imaginary_axis",
    "tabulated_from_kramers_kronig",
    "read_optical_csv",
    "write_imaginary_axis_csv",
    "read_imaginary_axis_csv",
    "gold_plasma",
    "silicon_drude_lorentz",
]


@dataclass(frozen=True)
class Vacuum:
    """eps(i xi) = 1: no interface response."""

    is_perfect: bool = field(default=False, init=False, repr=False)

    def eps(self, xi):
        return np.ones_like(np.asarray(xi, dtype=float)) if np.ndim(xi) else 1.0

    def eps_times_xi2(self, xi):
        return np.asarray(xi, dtype=float) ** 2 if np.ndim(xi) else float(xi) ** 2


@dataclass(frozen=True)
class PerfectConductor:
    """Ideal mirror: r_TE = -1, r_TM = +1 exactly at every (k, xi).

    A first-class variant, not a large-eps limit: callers must branch on
    ``is_perfect`` instead of evaluating a permittivity.
    """

    is_perfect: bool = field(default=True, init=False, repr=False)

    def eps(self, xi):
        raise ValueError(
            "perfect conductor has no finite permittivity; "
            "branch on is_perfect and use the exact reflection limits"
        )

    def eps_times_xi2(self, xi):
        self.eps(xi)


@dataclass(frozen=True)
class PlasmaMetal:
    """Collisionless-metal model eps(i xi) = 1 + omega_p^2 / xi^2."""

    omega_p: float

    is_perfect: bool = field(default=False, init=False, repr=False)

    def __post_init__(self):
        if not self.omega_p > 0.0:
            raise ValueError("omega_p must be positive")

    def eps(self, xi):
        xi = np.asarray(xi, dtype=float)
        with np.errstate(divide="ignore"):
            out = 1.0 + self.omega_p**2 / xi**2
        return out if out.ndim else float(out)

    def eps_times_xi2(self, xi):
        # Finite at xi = 0, where eps itself diverges.
        xi = np.asarray(xi, dtype=float)
        out = xi**2 + self.omega_p**2
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class DrudeLorentz:
    """Single-resonance dielectric.

    eps(i xi) = 1 + (eps_static - 1) omega_dl^2 / (omega_dl^2 + xi^2),
    which interpolates between eps_static at xi = 0 and vacuum at high xi.
    """

    omega_dl: float
    eps_static: float

    is_perfect: bool = field(default=False, init=False, repr=False)

    def __post_init__(self):
        if not self.omega_dl > 0.0:
            raise ValueError("omega_dl must be positive")
        if not self.eps_static >= 1.0:
            raise ValueError("eps_static must be >= 1")

    def eps(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = 1.0 + (self.eps_static - 1.0) * self.omega_dl**2 / (
            self.omega_dl**2 + xi**2
        )
        return out if out.ndim else float(out)

    def eps_times_xi2(self, xi):
        xi = np.asarray(xi, dtype=float)
        out = xi**2 * self.eps(xi)
        return out if out.ndim else float(out)


class TabulatedPermittivity:
    """eps(i xi) sampled on an ascending xi > 0 grid.

    Interpolation is monotone cubic (PCHIP) in log xi vs log(eps - 1), so
    interpolated values stay >= 1 and follow power-law segments exactly.
    Out-of-range queries raise unless an extrapolation mode is declared:

    * ``extrapolate_low``: "strict", "constant" (dielectric plateau) or
      "inverse_square" (metallic eps - 1 ~ A / xi^2)
    * ``extrapolate_high``: "strict" or "inverse_square" (universal
      eps - 1 ~ B / xi^2 falloff)
    """

    is_perfect = False

    def __init__(
        self,
        xi: np.ndarray,
        eps: np.ndarray,
        extrapolate_low: str = "strict",
        extrapolate_high: str = "strict",
        eps_zero: float | None = None,
    ):
        xi = np.asarray(xi, dtype=float)
        eps = np.asarray(eps, dtype=float)
        if xi.ndim != 1 or xi.size < 2:
            raise ValueError("need at least two xi samples")
        if not np.all(np.diff(xi) > 0.0):
            raise ValueError("xi grid must be strictly ascending")
        if not xi[0] > 0.0:
            raise ValueError("xi samples must be positive")
        if eps.shape != xi.shape:
            raise ValueError("xi and eps shapes differ")
        if not np.all(eps > 1.0):
            raise ValueError("tabulated eps(i xi) must exceed 1")
        if extrapolate_low not in ("strict", "constant", "inverse_square"):
            raise ValueError(f"unknown extrapolate_low {extrapolate_low!r}")
        if extrapolate_high not in ("strict", "inverse_square"):
            raise ValueError(f"unknown extrapolate_high {extrapolate_high!r}")
        self.xi = xi
        self.eps_samples = eps
        self.extrapolate_low = extrapolate_low
        self.extrapolate_high = extrapolate_high
        self.eps_zero = eps_zero
        self._interp = PchipInterpolator(np.log(xi), np.log(eps - 1.0))

    def eps(self, xi):
        scalar = np.ndim(xi) == 0
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        out = np.empty_like(xi)
        lo, hi = self.xi[0], self.xi[-1]
        inside = (xi >= lo) & (xi <= hi)
        below = xi < lo
        above = xi > hi
        if np.any(below):
            if self.extrapolate_low == "strict":
                raise ValueError(
                    f"xi = {xi[below].min():.6e} below tabulated range "
                    f"[{lo:.6e}, {hi:.6e}] and no extrapolation declared"
                )
            if self.extrapolate_low == "constant":
                out[below] = self.eps_samples[0]
            else:
                a_low = (self.eps_samples[0] - 1.0) * lo**2
                with np.errstate(divide="ignore"):
                    out[below] = 1.0 + a_low / xi[below] ** 2
            zero = below & (xi == 0.0)
            if np.any(zero) and self.eps_zero is not None:
                out[zero] = self.eps_zero
        if np.any(above):
            if self.extrapolate_high == "strict":
                raise ValueError(
                    f"xi = {xi[above].max():.6e} above tabulated range "
                    f"[{lo:.6e}, {hi:.6e}] and no extrapolation declared"
                )
            b_high = (self.eps_samples[-1] - 1.0) * hi**2
            out[above] = 1.0 + b_high / xi[above] ** 2
        if np.any(inside):
            out[inside] = 1.0 + np.exp(self._interp(np.log(xi[inside])))
        return float(out[0]) if scalar else out

    def eps_times_xi2(self, xi):
        scalar = np.ndim(xi) == 0
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        out = np.empty_like(xi)
        zero = xi == 0.0
        if np.any(zero):
            if self.extrapolate_low == "inverse_square":
                out[zero] = (self.eps_samples[0] - 1.0) * self.xi[0] ** 2
            elif self.extrapolate_low == "constant":
                out[zero] = 0.0
            else:
                raise ValueError(
                    "xi = 0 below tabulated range and no extrapolation declared"
                )
        if np.any(~zero):
            out[~zero] = xi[~zero] ** 2 * self.eps(xi[~zero])
        return float(out[0]) if scalar else out


def permittivity_imaginary_axis(model, xi):
    """eps(i xi) for any model; perfect conductors refuse (by design)."""
    return model.eps(xi)


@dataclass(frozen=True)
class FresnelSet:
    """Reflection and transmission amplitudes at one (k, xi).

    kappa   = sqrt(xi^2/c^2 + k^2)            vacuum-side decay constant
    kappa_t = sqrt(k^2 + eps(i xi) xi^2/c^2)  medium-side decay constant

    r_te = (kappa - kappa_t) / (kappa + kappa_t)
    r_tm = (eps kappa - kappa_t) / (eps kappa + kappa_t)
    t_te = 2 kappa / (kappa + kappa_t)
    t_tm = 2 sqrt(eps) kappa / (eps kappa + kappa_t)
    """

    r_te: object
    r_tm: object
    t_te: object
    t_tm: object
    kappa: object
    kappa_t: object


def fresnel(model, k, xi: float) -> FresnelSet:
    """Fresnel set at transverse wavenumber(s) k and imaginary frequency xi.

    k may be a scalar or array (m^-1, >= 0); xi is a scalar (rad/s, >= 0);
    k and xi must not both vanish.
    """
    scalar = np.ndim(k) == 0
    k = np.asarray(k, dtype=float)
    if np.any(k < 0.0) or xi < 0.0:
        raise ValueError("k and xi must be non-negative")
    if xi == 0.0 and np.any(k == 0.0):
        raise ValueError("k and xi must not both vanish")
    kappa = np.sqrt((xi / C_LIGHT) ** 2 + k**2)

    if getattr(model, "is_perfect", False):
        shape = np.broadcast_shapes(k.shape)
        minus = np.full(shape, -1.0)
        plus = np.full(shape, 1.0)
        zero = np.zeros(shape)
        inf = np.full(shape, np.inf)
        fs = FresnelSet(minus, plus, zero, zero, kappa, inf)
    else:
        eps = model.eps(xi)
        kappa_t = np.sqrt(k**2 + model.eps_times_xi2(xi) / C_LIGHT**2)
        if np.isinf(eps):
            # Plasma-type model at xi = 0: TM saturates, TE stays partial.
            r_te = (kappa - kappa_t) / (kappa + kappa_t)
            r_tm = np.ones_like(kappa)
            t_te = 2.0 * kappa / (kappa + kappa_t)
            t_tm = np.zeros_like(kappa)
        else:
            r_te = (kappa - kappa_t) / (kappa + kappa_t)
            r_tm = (eps * kappa - kappa_t) / (eps * kappa + kappa_t)
            t_te = 2.0 * kappa / (kappa + kappa_t)
            t_tm = 2.0 * math.sqrt(eps) * kappa / (eps * kappa + kappa_t)
        fs = FresnelSet(r_te, r_tm, t_te, t_tm, kappa, kappa_t)
    if scalar:
        return FresnelSet(*(float(np.asarray(v).reshape(())) for v in fs.__dict__.values()))
    return fs


@dataclass(frozen=True)
class RealAxisOpticalData:
    """Measured absorption spectrum Im eps(omega) on the real axis.

    ``drude_omega_p`` / ``drude_gamma`` (both or neither) declare the
    metallic low-frequency continuation Im eps = omega_p^2 gamma /
    (omega (omega^2 + gamma^2)) below the first sample. Above the last
    sample a 1/omega^3 falloff matched to the endpoint is assumed, which
    requires the data not to grow at the top of the range.
    """

    omega: np.ndarray
    eps_imag: np.ndarray
    drude_omega_p: float | None = None
    drude_gamma: float | None = None

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        eps_imag = np.asarray(self.eps_imag, dtype=float)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "eps_imag", eps_imag)
        if omega.ndim != 1 or omega.size < 3:
            raise ValueError("need at least three (omega, eps_imag) samples")
        if not np.all(np.diff(omega) > 0.0) or not omega[0] > 0.0:
            raise ValueError("omega grid must be positive and strictly ascending")
        if eps_imag.shape != omega.shape or np.any(eps_imag < 0.0):
            raise ValueError("eps_imag must be non-negative and match omega")
        if (self.drude_omega_p is None) != (self.drude_gamma is None):
            raise ValueError("declare both Drude parameters or neither")
        if self.drude_omega_p is not None:
            if not (self.drude_omega_p > 0.0 and self.drude_gamma > 0.0):
                raise ValueError("Drude parameters must be positive")
        if eps_imag[-1] > eps_imag[-2]:
            raise ValueError(
                "eps_imag grows at the top of the range; "
                "cannot attach a decaying high-frequency tail"
            )


def _drude_segment(omega1: float, omega_p: float, gamma: float, xi: float) -> float:
    """Integral of omega ImepsDrude / (omega^2 + xi^2) over (0, omega1]."""
    if xi == 0.0:
        raise ValueError(
            "eps(i0) diverges for a Drude metal; evaluate at xi > 0"
        )
    if abs(xi - gamma) > 1e-9 * gamma:
        return (
            omega_p**2
            * gamma
            / (xi**2 - gamma**2)
            * (math.atan(omega1 / gamma) / gamma - math.atan(omega1 / xi) / xi)
        )
    # xi ~ gamma: use the confluent antiderivative of 1/(omega^2+gamma^2)^2.
    return omega_p**2 * gamma * (
        omega1 / (2.0 * gamma**2 * (omega1**2 + gamma**2))
        + math.atan(omega1 / gamma) / (2.0 * gamma**3)
    )


def _tail_segment(omega_n: float, eps_imag_n: float, xi: float) -> float:
    """Integral over [omega_n, inf) with Im eps = eps_imag_n (omega_n/omega)^3."""
    if xi < 1e-3 * omega_n:
        # Series in (xi/omega_n)^2 avoids cancellation.
        r2 = (xi / omega_n) ** 2
        return eps_imag_n * (1.0 / 3.0 - r2 / 5.0 + r2**2 / 7.0)
    return (
        eps_imag_n
        * omega_n**3
        / xi**2
        * (1.0 / omega_n - (math.pi / 2.0 - math.atan(omega_n / xi)) / xi)
    )


def kramers_kronig_imaginary_axis(
    data: RealAxisOpticalData, xi, rel_tol: float = 1e-8
) -> np.ndarray:
    """eps(i xi) = 1 + (2/pi) Int_0^inf omega Im eps(omega) / (omega^2 + xi^2) domega.

    The data segment is integrated adaptively in log omega, split at
    omega = xi; the Drude continuation below the data and the 1/omega^3
    tail above it are added in closed form.
    """
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(xi_arr < 0.0):
        raise ValueError("xi must be non-negative")
    omega = data.omega
    interp = PchipInterpolator(omega, data.eps_imag)
    t_lo, t_hi = math.log(omega[0]), math.log(omega[-1])
    out = np.empty_like(xi_arr)
    for i, x in enumerate(xi_arr):
        def integrand(t: np.ndarray) -> np.ndarray:
            w = np.exp(t)
            return w**2 * interp(w) / (w**2 + x**2)

        splits = [t_lo, t_hi]
        if omega[0] < x < omega[-1]:
            splits = [t_lo, math.log(x), t_hi]
        total = 0.0
        for lo, hi in zip(splits[:-1], splits[1:]):
            val, _ = adaptive_gauss(integrand, lo, hi, rel_tol=rel_tol)
            total += val
        if data.drude_omega_p is not None:
            total += _drude_segment(
                omega[0], data.drude_omega_p, data.drude_gamma, float(x)
            )
        total += _tail_segment(omega[-1], float(data.eps_imag[-1]), float(x))
        out[i] = 1.0 + (2.0 / math.pi) * total
    return out if np.ndim(xi) else float(out[0])


def tabulated_from_kramers_kronig(
    data: RealAxisOpticalData,
    xi_grid: np.ndarray,
    rel_tol: float = 1e-8,
    extrapolate_low: str = "strict",
    extrapolate_high: str = "strict",
) -> TabulatedPermittivity:
    """Run the Kramers-Kronig transform and wrap the result as a model."""
    xi_grid = np.asarray(xi_grid, dtype=float)
    eps_zero = None
    positive = xi_grid > 0.0
    if np.any(~positive):
        if np.any(xi_grid < 0.0):
            raise ValueError("xi grid must be non-negative")
        eps_zero = float(kramers_kronig_imaginary_axis(data, 0.0, rel_tol))
    eps_vals = kramers_kronig_imaginary_axis(data, xi_grid[positive], rel_tol)
    return TabulatedPermittivity(
        xi_grid[positive],
        eps_vals,
        extrapolate_low=extrapolate_low,
        extrapolate_high=extrapolate_high,
        eps_zero=eps_zero,
    )


def read_optical_csv(path: str | Path) -> RealAxisOpticalData:
    """Read `omega_rad_s,eps_imag` rows; `# key=value` lines carry metadata."""
    meta: dict[str, float] = {}
    rows: list[tuple[float, float]] = []
    with open(path, newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    try:
                        meta[key.strip()] = float(value)
                    except ValueError:
                        pass
                continue
            first = line.split(",")[0].strip()
            try:
                float(first)
            except ValueError:
                expected = ["omega_rad_s", "eps_imag"]
                got = [c.strip() for c in line.split(",")]
                if got != expected:
                    raise ValueError(
                        f"unexpected optical CSV header {got}; want {expected}"
                    )
                continue
            cells = line.split(",")
            if len(cells) != 2:
                raise ValueError(f"malformed optical CSV row: {line!r}")
            rows.append((float(cells[0]), float(cells[1])))
    if not rows:
        raise ValueError(f"no data rows in {path}")
    arr = np.asarray(rows, dtype=float)
    return RealAxisOpticalData(
        omega=arr[:, 0],
        eps_imag=arr[:, 1],
        drude_omega_p=meta.get("drude_omega_p"),
        drude_gamma=meta.get("drude_gamma"),
    )


def write_imaginary_axis_csv(
    path: str | Path, xi: np.ndarray, eps: np.ndarray, header_lines: list[str] | None = None
) -> None:
    with open(path, "w", newline="") as fh:
        for line in header_lines or []:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["xi_rad_s", "eps_i_xi"])
        for x, e in zip(xi, eps):
            writer.writerow([f"{x:.12e}", f"{e:.12e}"])


def read_imaginary_axis_csv(
    path: str | Path,
    extrapolate_low: str = "strict",
    extrapolate_high: str = "strict",
) -> TabulatedPermittivity:
    rows: list[tuple[float, float]] = []
    eps_zero = None
    with open(path, newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            first = line.split(",")[0].strip()
            try:
                float(first)
            except ValueError:
                continue
            cells = line.split(",")
            xi_val, eps_val = float(cells[0]), float(cells[1])
            if xi_val == 0.0:
                eps_zero = eps_val
            else:
                rows.append((xi_val, eps_val))
    arr = np.asarray(rows, dtype=float)
    return TabulatedPermittivity(
        arr[:, 0],
        arr[:, 1],
        extrapolate_low=extrapolate_low,
        extrapolate_high=extrapolate_high,
        eps_zero=eps_zero,
    )


def gold_plasma() -> PlasmaMetal:
    """Default gold surface: plasma model, lambda_p = 136 nm."""
    return PlasmaMetal(GOLD_OMEGA_P)


def silicon_drude_lorentz() -> DrudeLorentz:
    """Default silicon surface: eps_static = 11.87, omega_dl = 6.6e15 rad/s."""
    return DrudeLorentz(SILICON_OMEGA_DL, SILICON_EPS_STATIC)
