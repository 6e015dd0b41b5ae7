"""Non-specular first-order reflection kernel.

The first-order response of the interaction to a surface-profile Fourier
component couples an incoming mode at k'' = k' - k to an outgoing mode at
k' through one non-specular surface reflection and one reflection off the
atom. After the polarization sums this reduces to a scalar kernel
a(k', k''), a function of |k'|, |k''| and the angle between them only.

Production code evaluates the premultiplied combination

    A = (xi^2 / c^2) * a(k', k'')        units 1/m^2

in which every c^2/xi^2 factor from the TM polarization vectors has been
cancelled symbolically, so the xi -> 0 endpoint of the frequency integral
is finite for any material model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT
from .optics import FresnelSet, fresnel

__all__ = [
    "KernelPoint",
    "kernel_point",
    "kernel_point_from_vectors",
    "polarization_overlaps",
    "lambda_matrix",
    "nonspecular_block",
    "a_exact",
    "a_perfect",
    "assemble_a_from_block",
]


@dataclass(frozen=True)
class KernelPoint:
    """Geometry, material and Fresnel data shared by one kernel evaluation.

    kp, kpp are |k'| and |k''|; cos_dphi / sin_dphi are the cosine and
    sine of the angle from k'' to k'. All of kp, kpp, cos_dphi, sin_dphi
    may be equal-shape arrays. ``eps`` and ``d_tm`` are None for a
    perfect conductor.
    """

    xi: float
    kp: object
    kpp: object
    cos_dphi: object
    sin_dphi: object
    kappa_p: object
    kappa_pp: object
    fres_p: FresnelSet
    fres_pp: FresnelSet
    eps: float | None
    d_tm: object
    is_perfect: bool


def kernel_point(surface, xi: float, kp, kpp, cos_dphi, sin_dphi) -> KernelPoint:
    """Build a KernelPoint, evaluating the material once per leg.

    The TM denominator d_tm = xi^2/c^2 - kappa'^2 (eps + 1) is strictly
    negative for eps >= 1; this is asserted because every TM term divides
    by it.
    """
    if not xi > 0.0:
        raise ValueError("xi must be positive")
    kp = np.asarray(kp, dtype=float)
    kpp = np.asarray(kpp, dtype=float)
    cos_dphi = np.asarray(cos_dphi, dtype=float)
    sin_dphi = np.asarray(sin_dphi, dtype=float)
    if np.any(kp < 0.0) or np.any(kpp < 0.0):
        raise ValueError("wavenumbers must be non-negative")
    xi_c2 = (xi / C_LIGHT) ** 2
    kappa_p = np.sqrt(xi_c2 + kp**2)
    kappa_pp = np.sqrt(xi_c2 + kpp**2)
    fres_p = fresnel(surface, kp, xi)
    fres_pp = fresnel(surface, kpp, xi)
    if surface.is_perfect:
        eps = None
        d_tm = None
    else:
        eps = float(surface.eps(xi))
        d_tm = xi_c2 - kappa_p**2 * (eps + 1.0)
        if not np.all(d_tm < 0.0):
            raise AssertionError("TM denominator must be strictly negative")
    return KernelPoint(
        xi=xi,
        kp=kp,
        kpp=kpp,
        cos_dphi=cos_dphi,
        sin_dphi=sin_dphi,
        kappa_p=kappa_p,
        kappa_pp=kappa_pp,
        fres_p=fres_p,
        fres_pp=fres_pp,
        eps=eps,
        d_tm=d_tm,
        is_perfect=surface.is_perfect,
    )


def kernel_point_from_vectors(surface, xi: float, kp_vec, kpp_vec) -> KernelPoint:
    """KernelPoint from explicit transverse 2-vectors k' and k''."""
    kp_vec = np.asarray(kp_vec, dtype=float)
    kpp_vec = np.asarray(kpp_vec, dtype=float)
    kp = float(np.hypot(*kp_vec))
    kpp = float(np.hypot(*kpp_vec))
    if kp == 0.0 or kpp == 0.0:
        raise ValueError("vector form needs non-zero wavevectors")
    cos_dphi = float(kp_vec @ kpp_vec) / (kp * kpp)
    sin_dphi = -float(kp_vec[0] * kpp_vec[1] - kp_vec[1] * kpp_vec[0]) / (kp * kpp)
    return kernel_point(surface, xi, kp, kpp, cos_dphi, sin_dphi)


def polarization_overlaps(point: KernelPoint) -> dict[str, object]:
    """The four overlaps eps_hat^+_p(k') . eps_hat^-_p'(k'').

    TE.TE = C, TE.TM = c kappa'' S / xi, TM.TE = c kappa' S / xi,
    TM.TM = -(c^2/xi^2)(k' k'' + kappa' kappa'' C). These carry the raw
    c/xi factors; the premultiplied kernel never calls this.
    """
    c_xi = C_LIGHT / point.xi
    return {
        "te_te": point.cos_dphi,
        "te_tm": c_xi * point.kappa_pp * point.sin_dphi,
        "tm_te": c_xi * point.kappa_p * point.sin_dphi,
        "tm_tm": -(c_xi**2)
        * (point.kp * point.kpp + point.kappa_p * point.kappa_pp * point.cos_dphi),
    }


def lambda_matrix(point: KernelPoint) -> np.ndarray:
    """Non-specular polarization-mixing matrix, rows (TE, TM) out, columns in.

    Entries (C = cos_dphi, S = sin_dphi, primes as in the point):

      [TE,TE] = 2 kappa' C
      [TE,TM] = 2 kappa' S c kappa''_t / (sqrt(eps) xi)
      [TM,TE] = 2 S sqrt(eps) (xi/c) kappa' kappa'_t / d_tm
      [TM,TM] = -2 kappa' (eps k' k'' + kappa'_t kappa''_t C) / d_tm

    In the specular limit (k'' = k', C = 1, S = 0) the diagonal reduces
    to 2 kappa' exactly.
    """
    if point.is_perfect:
        raise ValueError("lambda_matrix requires a finite permittivity")
    eps = point.eps
    sqrt_eps = math.sqrt(eps)
    xi = point.xi
    c = C_LIGHT
    te_te = 2.0 * point.kappa_p * point.cos_dphi
    te_tm = 2.0 * point.kappa_p * point.sin_dphi * c * point.fres_pp.kappa_t / (sqrt_eps * xi)
    tm_te = (
        2.0 * point.sin_dphi * sqrt_eps * (xi / c)
        * point.kappa_p * point.fres_p.kappa_t / point.d_tm
    )
    tm_tm = (
        -2.0 * point.kappa_p
        * (eps * point.kp * point.kpp + point.fres_p.kappa_t * point.fres_pp.kappa_t * point.cos_dphi)
        / point.d_tm
    )
    return np.stack(
        [
            np.stack([np.asarray(te_te, dtype=float), np.asarray(te_tm, dtype=float)], axis=-1),
            np.stack([np.asarray(tm_te, dtype=float), np.asarray(tm_tm, dtype=float)], axis=-1),
        ],
        axis=-2,
    )


def _u_factors(point: KernelPoint) -> dict[str, object]:
    # u_{p p'} = r^p(k') t^{p'}(k'') / t^p(k')
    fp, fpp = point.fres_p, point.fres_pp
    return {
        "te_te": fp.r_te * fpp.t_te / fp.t_te,
        "te_tm": fp.r_te * fpp.t_tm / fp.t_te,
        "tm_te": fp.r_tm * fpp.t_te / fp.t_tm,
        "tm_tm": fp.r_tm * fpp.t_tm / fp.t_tm,
    }


def nonspecular_block(point: KernelPoint) -> np.ndarray:
    """First-order reflection block R1[p', p''] = u_{p'p''} Lambda_{p'p''}.

    Diagonal limit: R1(k', k') = 2 kappa' r^p delta_{p p'}.
    """
    lam = lambda_matrix(point)
    u = _u_factors(point)
    out = np.empty_like(lam)
    out[..., 0, 0] = u["te_te"] * lam[..., 0, 0]
    out[..., 0, 1] = u["te_tm"] * lam[..., 0, 1]
    out[..., 1, 0] = u["tm_te"] * lam[..., 1, 0]
    out[..., 1, 1] = u["tm_tm"] * lam[..., 1, 1]
    return out


def a_exact(point: KernelPoint, z_atom: float):
    """Premultiplied kernel A = (xi^2/c^2) a(k', k'') for a real material.

    A = e^{-(kappa' + kappa'') z_A} (kappa'/kappa'') [
          (xi^2/c^2) C^2 u_TE,TE
        + S^2 kappa'' kappa''_t / sqrt(eps) u_TE,TM
        + (xi^2/c^2) sqrt(eps) kappa' kappa'_t S^2 / d_tm u_TM,TE
        + (k'k'' + kappa'kappa''C)(eps k'k'' + kappa'_t kappa''_t C) / d_tm u_TM,TM ]

    Every 1/xi^2 from the TM overlaps is cancelled against the xi^2
    premultiplier, so the xi -> 0 limit is finite (the last term
    survives). Units 1/m^2.
    """
    if point.is_perfect:
        raise ValueError("a_exact requires a finite permittivity; use a_perfect")
    if z_atom < 0.0:
        raise ValueError("z_atom must be non-negative")
    eps = point.eps
    sqrt_eps = math.sqrt(eps)
    xi_c2 = (point.xi / C_LIGHT) ** 2
    u = _u_factors(point)
    c2 = point.cos_dphi**2
    s2 = point.sin_dphi**2
    kt_p = point.fres_p.kappa_t
    kt_pp = point.fres_pp.kappa_t
    term_te_te = xi_c2 * c2 * u["te_te"]
    term_te_tm = s2 * point.kappa_pp * kt_pp / sqrt_eps * u["te_tm"]
    term_tm_te = xi_c2 * sqrt_eps * point.kappa_p * kt_p * s2 / point.d_tm * u["tm_te"]
    term_tm_tm = (
        (point.kp * point.kpp + point.kappa_p * point.kappa_pp * point.cos_dphi)
        * (eps * point.kp * point.kpp + kt_p * kt_pp * point.cos_dphi)
        / point.d_tm
        * u["tm_tm"]
    )
    envelope = np.exp(-(point.kappa_p + point.kappa_pp) * z_atom)
    return envelope * (point.kappa_p / point.kappa_pp) * (
        term_te_te + term_te_tm + term_tm_te + term_tm_tm
    )


def a_perfect(point: KernelPoint, z_atom: float):
    """Premultiplied kernel for the ideal mirror.

    A = (1/2) e^{-(kappa' + kappa'') z_A} [
          (xi^2/c^2) (k_c^2 + (kappa' - kappa'')^2) / (kappa' kappa'')
        + k_c^2 - (kappa' + kappa'')^2 ]

    with k_c^2 = |k' - k''|^2 = k'^2 + k''^2 - 2 k' k'' C. Units 1/m^2.
    """
    if z_atom < 0.0:
        raise ValueError("z_atom must be non-negative")
    xi_c2 = (point.xi / C_LIGHT) ** 2
    k_corr2 = point.kp**2 + point.kpp**2 - 2.0 * point.kp * point.kpp * point.cos_dphi
    k_corr2 = np.maximum(k_corr2, 0.0)
    diff = point.kappa_p - point.kappa_pp
    total = point.kappa_p + point.kappa_pp
    envelope = np.exp(-total * z_atom)
    return 0.5 * envelope * (
        xi_c2 * (k_corr2 + diff**2) / (point.kappa_p * point.kappa_pp)
        + (k_corr2 - total**2)
    )


def assemble_a_from_block(point: KernelPoint, z_atom: float):
    """Premultiplied kernel rebuilt from overlaps and the R1 block.

    (xi^2/c^2) e^{-(kappa'+kappa'')z_A} / (2 kappa'')
        sum_{p'p''} overlap_{p'p''} R1_{p'p''}

    Slower and not xi->0 safe; kept as the independent assembly used to
    cross-check a_exact.
    """
    overlaps = polarization_overlaps(point)
    r1 = nonspecular_block(point)
    total = (
        overlaps["te_te"] * r1[..., 0, 0]
        + overlaps["te_tm"] * r1[..., 0, 1]
        + overlaps["tm_te"] * r1[..., 1, 0]
        + overlaps["tm_tm"] * r1[..., 1, 1]
    )
    xi_c2 = (point.xi / C_LIGHT) ** 2
    envelope = np.exp(-(point.kappa_p + point.kappa_pp) * z_atom)
    return xi_c2 * envelope / (2.0 * point.kappa_pp) * total
