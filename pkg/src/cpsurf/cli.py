"""Command-line front end: grid sweeps over the plane and corrugation
results, CSV/JSON emission, and optical-data ingestion.

Configuration is a single JSON document (see README for the schema);
command-line flags override config keys. All numeric output uses
``%.12e`` and every quadrature value is paired with an error column, so
identical configs produce byte-identical files. The only environment
override is ``CPSURF_THREADS`` (worker threads for grid sweeps; rows are
always emitted in grid order).

Exit codes: 0 success, 2 validation error, 3 quadrature non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from ._integrate import ConvergenceError
from .atomics import (
    MultilevelPolarizability,
    SingleOscillatorPolarizability,
    StaticPolarizability,
    polarizability,
    rubidium_single_oscillator,
)
from .closedforms import f_cp0, rho_cp_perf
from .constants import EV, TWO_PI, constants_header_fields
from .optics import (
    DrudeLorentz,
    PerfectConductor,
    PlasmaMetal,
    gold_plasma,
    kramers_kronig_imaginary_axis,
    read_imaginary_axis_csv,
    read_optical_csv,
    silicon_drude_lorentz,
    write_imaginary_axis_csv,
)
from .profile import (
    BecProbeConfig,
    Sinusoid,
    detectability_report,
    first_order_potential,
    lateral_force,
    rb87_bec_probe,
)
from .quadrature import (
    IntegralResult,
    QuadratureSettings,
    g_evaluator,
    plane_force,
    plane_potential,
)

__all__ = ["main"]


# ---------------------------------------------------------------------------
# config plumbing


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    return cfg


def _pick(flag_value, cfg: dict, key: str, default=None):
    """Flag beats config beats default."""
    if flag_value is not None:
        return flag_value
    return cfg.get(key, default)


def _parse_grid(spec) -> list[float]:
    """Grid from a JSON list or a string: 'a,b,c', 'lin:a:b:n', 'log:a:b:n'."""
    if isinstance(spec, (list, tuple)):
        values = [float(v) for v in spec]
    else:
        text = str(spec).strip()
        if text.startswith(("lin:", "log:")):
            kind, lo, hi, n = text.split(":")
            lo, hi, n = float(lo), float(hi), int(n)
            if n < 1:
                raise ValueError("grid needs at least one point")
            if kind == "log":
                if not (lo > 0.0 and hi > 0.0):
                    raise ValueError("log grid endpoints must be positive")
                values = list(np.geomspace(lo, hi, n))
            else:
                values = list(np.linspace(lo, hi, n))
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
    if not values:
        raise ValueError("empty grid")
    return [float(v) for v in values]


def _positive_grid(spec, name: str) -> list[float]:
    values = _parse_grid(spec)
    if any(not v > 0.0 for v in values):
        raise ValueError(f"{name} grid values must be positive")
    return values


def build_atom(spec):
    """Atom model from a preset name or a config object."""
    if spec is None:
        spec = "rb87"
    if isinstance(spec, str):
        name = spec.lower().replace("_", "-")
        if name == "rb87":
            return rubidium_single_oscillator()
        if name == "rb87-static":
            base = rubidium_single_oscillator()
            return StaticPolarizability(base.alpha0)
        raise ValueError(f"unknown atom preset {spec!r} (try rb87, rb87-static)")
    model = spec.get("model")
    if model == "static":
        return StaticPolarizability(float(spec["alpha0_si"]))
    if model == "single_oscillator":
        return SingleOscillatorPolarizability(
            float(spec["alpha0_si"]), float(spec["omega_a_rad_s"])
        )
    if model == "multilevel":
        return MultilevelPolarizability(
            tuple((float(w), float(d)) for w, d in spec["transitions"])
        )
    raise ValueError(f"unknown atom model {model!r}")


def build_surface(spec):
    """Surface model from a preset name, a config object, or a table file."""
    if spec is None:
        spec = "gold"
    if isinstance(spec, str):
        name = spec.lower().replace("_", "-")
        if name == "gold":
            return gold_plasma()
        if name == "silicon":
            return silicon_drude_lorentz()
        if name in ("perfect", "perfect-conductor", "mirror"):
            return PerfectConductor()
        raise ValueError(
            f"unknown surface preset {spec!r} (try gold, silicon, perfect)"
        )
    model = spec.get("model")
    if model == "plasma":
        return PlasmaMetal(float(spec["omega_p_rad_s"]))
    if model == "drude_lorentz":
        return DrudeLorentz(float(spec["omega_dl_rad_s"]), float(spec["eps_static"]))
    if model == "table":
        return read_imaginary_axis_csv(
            spec["path"],
            extrapolate_low=spec.get("extrapolate_low", "strict"),
            extrapolate_high=spec.get("extrapolate_high", "strict"),
        )
    raise ValueError(f"unknown surface model {model!r}")


def build_settings(args, cfg: dict) -> QuadratureSettings:
    quad = dict(cfg.get("quadrature", {}))
    if getattr(args, "rel_tol", None) is not None:
        quad["rel_tol"] = args.rel_tol
    allowed = {
        "rel_tol",
        "max_panels",
        "initial_panels",
        "angular_min_half",
        "angular_max_half",
        "kz_cutoff",
    }
    unknown = set(quad) - allowed
    if unknown:
        raise ValueError(f"unknown quadrature settings: {sorted(unknown)}")
    return QuadratureSettings(**quad)


def _build_probe(cfg: dict) -> BecProbeConfig:
    probe = dict(cfg.get("probe", {}))
    base = rb87_bec_probe()
    fields = {
        "omega_tr_rad_s": "omega_tr",
        "a_scat_m": "a_scat",
        "mass_kg": "mass",
        "delta_n": "delta_n",
        "rho0_m": "rho0",
        "x0_m": "x0",
    }
    unknown = set(probe) - set(fields)
    if unknown:
        raise ValueError(f"unknown probe settings: {sorted(unknown)}")
    kwargs = {attr: getattr(base, attr) for attr in fields.values()}
    for key, attr in fields.items():
        if key in probe:
            kwargs[attr] = float(probe[key])
    return BecProbeConfig(**kwargs)


# ---------------------------------------------------------------------------
# output plumbing


def _thread_count() -> int:
    raw = os.environ.get("CPSURF_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"CPSURF_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ValueError("CPSURF_THREADS must be >= 1")
    return n


def _map_ordered(fn: Callable, items: Sequence) -> list:
    """Apply fn over grid points; results stay in input order."""
    n = _thread_count()
    if n == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _header_lines(atom_spec, surface_spec, settings: QuadratureSettings) -> list[str]:
    lines = [f"{key}={value:.12e}" for key, value in constants_header_fields().items()]
    lines.append(f"atom={json.dumps(atom_spec, sort_keys=True)}")
    lines.append(f"surface={json.dumps(surface_spec, sort_keys=True)}")
    lines.append(f"rel_tol={settings.rel_tol:.3e}")
    return lines


def _write_csv(
    path: str | None, comments: list[str], columns: list[str], rows: list[list[float]]
) -> None:
    out = []
    for line in comments:
        out.append(f"# {line}")
    out.append(",".join(columns))
    for row in rows:
        out.append(",".join(f"{v:.12e}" for v in row))
    text = "\n".join(out) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _warn_negligible(results: Sequence[IntegralResult]) -> None:
    count = sum(1 for r in results if getattr(r, "negligible", False))
    if count:
        print(
            f"warning: {count} grid point(s) beyond the k z_A cutoff; "
            "reported as 0 with the bound in the error column",
            file=sys.stderr,
        )


def _static_alpha0(atom) -> float:
    return float(polarizability(atom, 0.0))


# ---------------------------------------------------------------------------
# subcommands


def cmd_plane(args) -> int:
    cfg = _load_config(args.config)
    atom_spec = _pick(args.atom, cfg, "atom")
    surface_spec = _pick(args.surface, cfg, "surface")
    atom = build_atom(atom_spec)
    surface = build_surface(surface_spec)
    settings = build_settings(args, cfg)
    z_grid = _positive_grid(_require(args.z, cfg, "z_a_m", "plane"), "z_a_m")
    alpha0 = _static_alpha0(atom)

    def one(z: float):
        u = plane_potential(atom, surface, z, settings)
        f = plane_force(atom, surface, z, settings)
        f_ref = f_cp0(z, alpha0)
        return [
            z,
            u.value,
            u.error,
            f.value,
            f.error,
            f.value / f_ref,
            f.error / abs(f_ref),
        ]

    rows = _map_ordered(one, z_grid)
    _write_csv(
        _pick(args.output, cfg, "output_csv"),
        _header_lines(atom_spec, surface_spec, settings),
        ["z_A_m", "U0_J", "U0_err_J", "F0_N", "F0_err_N", "eta_F", "eta_F_err"],
        rows,
    )
    return 0


def _require(flag_value, cfg: dict, key: str, command: str):
    value = _pick(flag_value, cfg, key)
    if value is None:
        raise ValueError(f"{command}: {key} is required (flag or config)")
    return value


def _k_grid(args, cfg: dict, z: float, command: str) -> list[float]:
    """One wavenumber grid from --k, --wavelength, or --kz (k = kz / z_A)."""
    sources = {
        "k_1_per_m": getattr(args, "k", None),
        "lambda_m": getattr(args, "wavelength", None),
        "kz_a": getattr(args, "kz", None),
    }
    given = {key: val for key, val in sources.items() if val is not None}
    for key in sources:
        if key not in given and key in cfg:
            given[key] = cfg[key]
    if len(given) != 1:
        raise ValueError(
            f"{command}: give exactly one of k_1_per_m, lambda_m, kz_a"
        )
    key, spec = next(iter(given.items()))
    values = _parse_grid(spec)
    if key == "k_1_per_m":
        if any(v < 0.0 for v in values):
            raise ValueError("k values must be non-negative")
        return values
    if key == "lambda_m":
        if any(not v > 0.0 for v in values):
            raise ValueError("wavelengths must be positive")
        return [TWO_PI / lam for lam in values]
    if any(v < 0.0 for v in values):
        raise ValueError("kz_a values must be non-negative")
    return [kz / z for kz in values]


def cmd_response(args) -> int:
    cfg = _load_config(args.config)
    atom_spec = _pick(args.atom, cfg, "atom")
    surface_spec = _pick(args.surface, cfg, "surface")
    atom = build_atom(atom_spec)
    surface = build_surface(surface_spec)
    settings = build_settings(args, cfg)
    z_grid = _positive_grid(_require(args.z, cfg, "z_a_m", "response"), "z_a_m")
    alpha0 = _static_alpha0(atom)

    def one_z(z: float):
        ks = _k_grid(args, cfg, z, "response")
        g_of_k = g_evaluator(atom, surface, z, settings)
        f0 = plane_force(atom, surface, z, settings)
        f_ref = abs(f_cp0(z, alpha0))
        block = []
        for k in ks:
            g = g_of_k(k)
            rho_val = g.value / f0.value
            rho_err = abs(rho_val) * (
                _rel(g.error, g.value) + _rel(f0.error, f0.value)
            )
            block.append(
                (
                    [
                        z,
                        k,
                        g.value,
                        g.error,
                        g.value / f_ref,
                        g.error / f_ref,
                        rho_val,
                        rho_err,
                    ],
                    g,
                )
            )
        return block

    blocks = _map_ordered(one_z, z_grid)
    rows = [row for block in blocks for row, _ in block]
    _warn_negligible([g for block in blocks for _, g in block])
    _write_csv(
        _pick(args.output, cfg, "output_csv"),
        _header_lines(atom_spec, surface_spec, settings),
        [
            "z_A_m",
            "k_1_per_m",
            "g_N",
            "g_err_N",
            "g_over_Fcp",
            "g_over_Fcp_err",
            "rho",
            "rho_err",
        ],
        rows,
    )
    return 0


def _rel(err: float, value: float) -> float:
    return err / abs(value) if value != 0.0 else 0.0


def cmd_rho(args) -> int:
    cfg = _load_config(args.config)
    atom_spec = _pick(args.atom, cfg, "atom")
    surface_spec = _pick(args.surface, cfg, "surface")
    atom = build_atom(atom_spec)
    surface = build_surface(surface_spec)
    settings = build_settings(args, cfg)
    z_grid = _positive_grid(_require(args.z, cfg, "z_a_m", "rho"), "z_a_m")

    def one_z(z: float):
        ks = _k_grid(args, cfg, z, "rho")
        g_of_k = g_evaluator(atom, surface, z, settings)
        f0 = plane_force(atom, surface, z, settings)
        block = []
        for k in ks:
            g = g_of_k(k)
            rho_val = g.value / f0.value
            rho_err = abs(rho_val) * (
                _rel(g.error, g.value) + _rel(f0.error, f0.value)
            )
            block.append(([z, k, k * z, rho_val, rho_err, rho_cp_perf(k * z)], g))
        return block

    blocks = _map_ordered(one_z, z_grid)
    rows = [row for block in blocks for row, _ in block]
    _warn_negligible([g for block in blocks for _, g in block])
    _write_csv(
        _pick(args.output, cfg, "output_csv"),
        _header_lines(atom_spec, surface_spec, settings),
        ["z_A_m", "k_1_per_m", "kz_a", "rho", "rho_err", "rho_cp_ref"],
        rows,
    )
    return 0


def cmd_eta(args) -> int:
    cfg = _load_config(args.config)
    atom_spec = _pick(args.atom, cfg, "atom")
    surface_spec = _pick(args.surface, cfg, "surface")
    atom = build_atom(atom_spec)
    surface = build_surface(surface_spec)
    settings = build_settings(args, cfg)
    z_grid = _positive_grid(_require(args.z, cfg, "z_a_m", "eta"), "z_a_m")
    alpha0 = _static_alpha0(atom)

    def one(z: float):
        f = plane_force(atom, surface, z, settings)
        f_ref = f_cp0(z, alpha0)
        return [z, f.value / f_ref, f.error / abs(f_ref)]

    rows = _map_ordered(one, z_grid)
    _write_csv(
        _pick(args.output, cfg, "output_csv"),
        _header_lines(atom_spec, surface_spec, settings),
        ["z_A_m", "eta_F", "eta_F_err"],
        rows,
    )
    return 0


def cmd_corrugation(args) -> int:
    cfg = _load_config(args.config)
    atom_spec = _pick(args.atom, cfg, "atom")
    surface_spec = _pick(args.surface, cfg, "surface")
    atom = build_atom(atom_spec)
    surface = build_surface(surface_spec)
    settings = build_settings(args, cfg)
    z_grid = _positive_grid(_require(args.z, cfg, "z_a_m", "corrugation"), "z_a_m")
    if len(z_grid) != 1:
        raise ValueError("corrugation: exactly one z_a_m value")
    z = z_grid[0]

    corr = dict(cfg.get("corrugation", {}))
    h0 = float(_pick(args.h0, corr, "h0_m", 100e-9))
    lam = _pick(args.lambda_c, corr, "lambda_m")
    k_c = _pick(args.k_c, corr, "k_c_1_per_m")
    if (lam is None) == (k_c is None):
        raise ValueError("corrugation: give exactly one of lambda_m, k_c_1_per_m")
    k_c = TWO_PI / float(lam) if lam is not None else float(k_c)
    phase = float(_pick(args.phase, corr, "phase_rad", 0.0))
    direction = tuple(corr.get("direction", (1.0, 0.0)))
    profile = Sinusoid(h0=h0, k_c=k_c, phase=phase, direction=direction)

    x_spec = _pick(args.x, corr, "x_m")
    if x_spec is not None:
        x_grid = _parse_grid(x_spec)
    else:
        n = int(_pick(args.x_points, corr, "x_points", 9))
        if n < 1:
            raise ValueError("x_points must be >= 1")
        period = TWO_PI / k_c if k_c > 0.0 else 0.0
        x_grid = list(np.linspace(0.0, period, n))

    g_of_k = g_evaluator(atom, surface, z, settings)
    g_val = g_of_k(k_c)  # primes the per-|k| cache for the x sweep
    f0 = plane_force(atom, surface, z, settings)

    def one(x: float):
        r = (x, 0.0)
        u1 = first_order_potential(profile, r, z, g_of_k=g_of_k)
        fl = lateral_force(profile, r, z, g_of_k=g_of_k)
        h = profile.height(r)
        return [x, u1.value, u1.error, fl.value, fl.error, h * f0.value, abs(h) * f0.error]

    rows = _map_ordered(one, x_grid)
    _warn_negligible([g_val])
    report = detectability_report(profile, z, config=_build_probe(cfg), g_of_k=g_of_k)
    report_obj = {
        "u1_amplitude_J": report.u1_amplitude,
        "u1_amplitude_eV": report.u1_amplitude / EV,
        "delta_v_J": report.delta_v,
        "delta_v_eV": report.delta_v / EV,
        "ratio": report.ratio,
        "classification": report.classification,
    }
    report_text = json.dumps(report_obj, sort_keys=True)

    output = _pick(args.output, cfg, "output_csv")
    comments = _header_lines(atom_spec, surface_spec, settings)
    if output is None:
        comments = comments + [f"report={report_text}"]
    _write_csv(
        output,
        comments,
        [
            "x_m",
            "U1_J",
            "U1_err_J",
            "F_lateral_N",
            "F_lateral_err_N",
            "U1_pfa_J",
            "U1_pfa_err_J",
        ],
        rows,
    )
    if output is not None:
        print(report_text)
    return 0


def cmd_ingest_optical(args) -> int:
    data = read_optical_csv(args.input)
    xi_grid = np.geomspace(args.xi_min, args.xi_max, args.xi_points)
    eps = kramers_kronig_imaginary_axis(data, xi_grid, rel_tol=args.kk_rel_tol)
    lines = [f"{key}={value:.12e}" for key, value in constants_header_fields().items()]
    lines.append(f"source={Path(args.input).name}")
    if data.drude_omega_p is not None:
        lines.append(f"drude_omega_p={data.drude_omega_p:.12e}")
        lines.append(f"drude_gamma={data.drude_gamma:.12e}")
    if args.output is None:
        sys.stdout.write("\n".join(f"# {line}" for line in lines) + "\n")
        sys.stdout.write("xi_rad_s,eps_i_xi\n")
        for x, e in zip(xi_grid, eps):
            sys.stdout.write(f"{x:.12e},{e:.12e}\n")
    else:
        write_imaginary_axis_csv(args.output, xi_grid, eps, header_lines=lines)
    return 0


def cmd_selftest(args) -> int:
    """Fast internal battery; prints one PASS/FAIL line per check."""
    import scipy.special as sp

    from .closedforms import bessel_k0_k1, g_cp_perf

    checks: list[tuple[str, float, float]] = []

    x = np.geomspace(1e-6, 50.0, 100)
    k0, k1 = bessel_k0_k1(x)
    err = max(
        float(np.max(np.abs(k0 / sp.k0(x) - 1.0))),
        float(np.max(np.abs(k1 / sp.k1(x) - 1.0))),
    )
    checks.append(("bessel_k0_k1 vs library", err, 1e-10))

    atom = StaticPolarizability(rubidium_single_oscillator().alpha0)
    mirror = PerfectConductor()
    settings = QuadratureSettings()
    z = 2e-6
    g_of_k = g_evaluator(atom, mirror, z, settings)
    k = 0.5 / z
    ratio = g_of_k(k).value / g_cp_perf(k, z, atom.alpha0)
    checks.append(("mirror response vs closed form", abs(ratio - 1.0), 5e-4))

    gold = gold_plasma()
    rb = rubidium_single_oscillator()
    z1 = 1e-6
    g0 = g_evaluator(rb, gold, z1, settings)(1e-4 / z1)
    f0 = plane_force(rb, gold, z1, settings)
    checks.append(("k -> 0 limit vs plane force", abs(g0.value / f0.value - 1.0), 1e-3))

    # Resonance width gamma / omega0 must be resolved by the log grid.
    omega0, omega_p, gamma = 3e15, 1.2e15, 2e14
    w = np.geomspace(omega0 / 100.0, omega0 * 100.0, 2000)
    im_eps = omega_p**2 * gamma * w / ((omega0**2 - w**2) ** 2 + gamma**2 * w**2)
    from .optics import RealAxisOpticalData

    table = RealAxisOpticalData(omega=w, eps_imag=im_eps)
    xi_test = np.array([omega0 / 3.0, omega0, 3.0 * omega0])
    got = kramers_kronig_imaginary_axis(table, xi_test)
    want = 1.0 + omega_p**2 / (omega0**2 + xi_test**2 + gamma * xi_test)
    checks.append(
        ("dispersion-relation round trip", float(np.max(np.abs(got / want - 1.0))), 1e-6)
    )

    failed = 0
    for name, err, tol in checks:
        ok = err < tol
        failed += 0 if ok else 1
        print(f"{'PASS' if ok else 'FAIL'} {name}: err={err:.3e} tol={tol:.0e}")
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its keys")
    parser.add_argument("--atom", help="atom preset (rb87, rb87-static)")
    parser.add_argument("--surface", help="surface preset (gold, silicon, perfect)")
    parser.add_argument(
        "--z", help="z_A grid in m: 'a,b,c', 'lin:a:b:n', or 'log:a:b:n'"
    )
    parser.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    parser.add_argument("--output", help="output CSV path (default: stdout)")


def _add_k_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", help="corrugation wavenumber grid, 1/m")
    parser.add_argument("--wavelength", help="corrugation wavelength grid, m")
    parser.add_argument("--kz", help="dimensionless k z_A grid")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpsurf",
        description=(
            "Dispersive atom-surface potentials above planar and weakly "
            "corrugated surfaces"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plane", help="flat-surface potential and force over z_A")
    _add_common(p)
    p.set_defaults(func=cmd_plane)

    p = sub.add_parser("response", help="first-order response g(k, z_A)")
    _add_common(p)
    _add_k_flags(p)
    p.set_defaults(func=cmd_response)

    p = sub.add_parser("rho", help="roll-off factor rho = g(k, z_A) / g(0, z_A)")
    _add_common(p)
    _add_k_flags(p)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("eta", help="flat-surface force against the ideal-mirror law")
    _add_common(p)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser(
        "corrugation", help="first-order corrugation potential and probe report"
    )
    _add_common(p)
    p.add_argument("--h0", type=float, help="corrugation amplitude, m")
    p.add_argument("--lambda-c", type=float, help="corrugation wavelength, m")
    p.add_argument("--k-c", type=float, help="corrugation wavenumber, 1/m")
    p.add_argument("--phase", type=float, help="corrugation phase, rad")
    p.add_argument("--x", help="lateral positions, m (grid spec)")
    p.add_argument("--x-points", type=int, help="points across one period")
    p.set_defaults(func=cmd_corrugation)

    p = sub.add_parser(
        "ingest-optical",
        help="tabulate eps(i xi) from measured Im eps(omega) via dispersion relations",
    )
    p.add_argument("input", help="CSV with omega_rad_s,eps_imag rows")
    p.add_argument("--output", help="output CSV path (default: stdout)")
    p.add_argument("--xi-min", type=float, default=1e13, help="lowest xi, rad/s")
    p.add_argument("--xi-max", type=float, default=1e17, help="highest xi, rad/s")
    p.add_argument("--xi-points", type=int, default=81, help="log-spaced points")
    p.add_argument("--kk-rel-tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_ingest_optical)

    p = sub.add_parser("selftest", help="run fast internal consistency checks")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, json.JSONDecodeError) as exc:
        print(f"error: bad config ({exc})", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: quadrature did not converge ({exc})", file=sys.stderr)
        return 3


if __name__ == "__main__":
    main()
