"""Command-line front end.

Subcommands::

    spinmie odmr simulate   synthesize ODMR spectra for a list of couplings
    spinmie odmr fit        double-Lorentzian fit of a spectrum CSV
    spinmie mie resonances  magnetic-resonance table for the first modes
    spinmie mie fieldmap    |E|,|H| cross-section maps at resonance
    spinmie size-grapes     ellipsoid semi-minor axis from the perimeter rule

Every subcommand reads defaults, then an optional ``--config`` file
(flat ``key = value`` lines), then repeated ``--set key=value`` overrides.
Outputs land in ``--out`` (default: ``$SPINMIE_OUT_DIR`` or the working
directory).  CSV files are authoritative; SVG plots are renderings of the
same data and are byte-deterministic for identical inputs.

Exit codes: 0 success, 2 configuration error, 3 numeric failure,
4 I/O failure, 5 fit did not converge.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from spinmie import __version__
from spinmie.errors import ConfigError, FitConvergenceError, NumericError
from spinmie.fitting import double_lorentzian, fit_spectrum
from spinmie.io import (
    _parse_value,
    format_fit_report,
    load_spectrum_csv,
    read_config,
    write_field_map_csv,
    write_fit_report,
    write_resonance_csv,
    write_spectrum_csv,
)
from spinmie.mie.coefficients import MieConfig, characteristic_fn
from spinmie.mie.fields import field_map
from spinmie.mie.geometry import ellipse_perimeter, size_ellipsoid
from spinmie.mie.resonance import find_resonances
from spinmie.nv.params import TWO_PI, NvModelParams
from spinmie.nv.spectrum import OdmrSpectrum, odmr_spectrum

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4
EXIT_NO_CONVERGENCE = 5

_OUT_ENV = "SPINMIE_OUT_DIR"

_ODMR_SIM_DEFAULTS = {
    "f_start_hz": 2.84e9,
    "f_stop_hz": 2.90e9,
    "n_points": 601,
    "pump_rate": TWO_PI * 1e6,
    "dephasing_rate": TWO_PI * 1e6,
    "omega_12": TWO_PI * 2.865e9,
    "omega_13": TWO_PI * 2.875e9,
    "coupling": [TWO_PI * 0.05e6, TWO_PI * 0.15e6, TWO_PI * 0.5e6, TWO_PI * 1.5e6],
    "normalize": True,
    "include_nv0_pl": False,
    "noise_fraction": 0.0,
    "temperature_k": None,
}

_MIE_RES_DEFAULTS = {
    "n_sphere_real": 8.9,
    "n_sphere_imag": 0.0,
    "n_medium": 1.0,
    "mu_sphere": 1.0,
    "mu_medium": 1.0,
    "frequency_hz": 2.87e9,
    "orders": [1.0, 2.0, 3.0],
    "rho_min": 0.05,
    "rho_max": 1.5,
    "modes_per_order": 1,
    "grid_points": 4000,
}

_MIE_MAP_DEFAULTS = {
    **{k: v for k, v in _MIE_RES_DEFAULTS.items() if k not in ("modes_per_order",)},
    "orders": [3.0],
    "radius_m": None,
    "plane": "yz",
    "extent_m": None,
    "resolution": 101,
}

_SIZE_DEFAULTS = {
    "semi_major_m": 0.0135,
    "alpha": 0.645,
    "frequency_hz": 2.87e9,
}


def _merge_config(defaults: dict, config_path, overrides: list[str]) -> dict:
    merged = dict(defaults)
    sources = []
    if config_path:
        sources.append(read_config(config_path))
    pairs = {}
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, raw = item.partition("=")
        pairs[key.strip()] = _parse_value(raw)
    sources.append(pairs)
    for source in sources:
        for key, value in source.items():
            if key not in merged:
                raise ConfigError(
                    f"unknown key {key!r}; known keys: {', '.join(sorted(merged))}")
            merged[key] = value
    return merged


def _out_dir(args) -> Path:
    out = args.out or os.environ.get(_OUT_ENV) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _as_list(value) -> list[float]:
    if isinstance(value, (int, float)):
        return [float(value)]
    return [float(v) for v in value]


def _save_svg(fig, path):
    import matplotlib

    matplotlib.rcParams["svg.hashsalt"] = "spinmie"
    fig.savefig(path, format="svg", metadata={"Date": None})


def _new_figure():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def cmd_odmr_simulate(args) -> int:
    cfg = _merge_config(_ODMR_SIM_DEFAULTS, args.config, args.set)
    out = _out_dir(args)
    couplings = _as_list(cfg["coupling"])
    params = NvModelParams(
        pump_rate=float(cfg["pump_rate"]),
        dephasing_rate=float(cfg["dephasing_rate"]),
        omega_12=float(cfg["omega_12"]),
        omega_13=float(cfg["omega_13"]),
        temperature=cfg["temperature_k"],
    )
    rng = np.random.default_rng(args.seed)
    plt = _new_figure()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    written = []
    for i, omega in enumerate(couplings):
        spec = odmr_spectrum(params.replace(coupling=float(omega)),
                             float(cfg["f_start_hz"]), float(cfg["f_stop_hz"]),
                             int(cfg["n_points"]), normalize=bool(cfg["normalize"]),
                             include_nv0=bool(cfg["include_nv0_pl"]))
        noise = float(cfg["noise_fraction"])
        if noise > 0:
            pl = spec.pl * (1.0 + noise * rng.standard_normal(spec.pl.size))
            spec = OdmrSpectrum(spec.frequencies, np.clip(pl, 1e-30, None), spec.params)
        path = out / f"odmr_spectrum_{i:02d}.csv"
        write_spectrum_csv(path, spec)
        written.append(path)
        ax.plot(spec.frequencies / 1e9, spec.pl,
                label=f"coupling {omega / TWO_PI:.3g} Hz x 2pi")
    ax.set_xlabel("drive frequency (GHz)")
    ax.set_ylabel("PL (normalized)" if cfg["normalize"] else "PL (photons/s)")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    plot_path = out / "odmr_spectra.svg"
    _save_svg(fig, plot_path)
    plt.close(fig)
    for path in written + [plot_path]:
        print(path)
    return EXIT_OK


def cmd_odmr_fit(args) -> int:
    spectrum = load_spectrum_csv(args.input)
    fit = fit_spectrum(spectrum)
    report = format_fit_report(fit)
    sys.stdout.write(report)
    out = _out_dir(args)
    report_path = Path(args.report) if args.report else out / "fit_report.txt"
    write_fit_report(report_path, fit)
    print(report_path)
    if args.plot:
        plt = _new_figure()
        fig, ax = plt.subplots(figsize=(7, 4.5))
        ax.plot(spectrum.frequencies / 1e9, spectrum.pl, ".", ms=3, label="data")
        dense = np.linspace(spectrum.frequencies[0], spectrum.frequencies[-1], 2001)
        ax.plot(dense / 1e9,
                double_lorentzian(dense, *fit.parameters()), "k-", label="fit")
        ax.set_xlabel("drive frequency (GHz)")
        ax.set_ylabel("PL")
        ax.legend()
        fig.tight_layout()
        plot_path = out / "fit_overlay.svg"
        _save_svg(fig, plot_path)
        plt.close(fig)
        print(plot_path)
    return EXIT_OK if fit.converged else EXIT_NO_CONVERGENCE


def _mie_config_from(cfg, radius: float = 0.01) -> MieConfig:
    return MieConfig(
        n_sphere=complex(float(cfg["n_sphere_real"]), float(cfg["n_sphere_imag"])),
        n_medium=float(cfg["n_medium"]),
        mu_sphere=float(cfg["mu_sphere"]),
        mu_medium=float(cfg["mu_medium"]),
        radius=radius,
        frequency=float(cfg["frequency_hz"]),
    )


def cmd_mie_resonances(args) -> int:
    cfg = _merge_config(_MIE_RES_DEFAULTS, args.config, args.set)
    out = _out_dir(args)
    mie_cfg = _mie_config_from(cfg)
    orders = [int(v) for v in _as_list(cfg["orders"])]
    results = []
    for order in orders:
        results.extend(find_resonances(order, mie_cfg, float(cfg["rho_min"]),
                                       float(cfg["rho_max"]),
                                       mode_count=int(cfg["modes_per_order"]),
                                       grid_points=int(cfg["grid_points"])))
    table_path = out / "mie_resonances.csv"
    write_resonance_csv(table_path, results)

    plt = _new_figure()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    rho = np.linspace(float(cfg["rho_min"]), float(cfg["rho_max"]), 1500)
    for order in orders:
        ax.semilogy(rho, np.abs(characteristic_fn(order, rho, mie_cfg)),
                    label=f"order {order}")
    for res in results:
        ax.axvline(res.rho_res, color="gray", lw=0.6, ls="--")
    ax.set_xlabel("size parameter rho")
    ax.set_ylabel("|D_n(rho)|")
    ax.legend()
    fig.tight_layout()
    plot_path = out / "mie_characteristic.svg"
    _save_svg(fig, plot_path)
    plt.close(fig)

    for res in results:
        print(f"order={res.order} mode={res.mode_index} rho_res={res.rho_res:.6f} "
              f"radius={res.radius * 1e3:.3f} mm residual={res.residual:.3e}")
    print(table_path)
    print(plot_path)
    return EXIT_OK


def cmd_mie_fieldmap(args) -> int:
    cfg = _merge_config(_MIE_MAP_DEFAULTS, args.config, args.set)
    out = _out_dir(args)
    orders = [int(v) for v in _as_list(cfg["orders"])]
    written = []
    for order in orders:
        if cfg["radius_m"] is not None:
            radius = float(cfg["radius_m"])
        else:
            probe = _mie_config_from(cfg)
            radius = find_resonances(order, probe, float(cfg["rho_min"]),
                                     float(cfg["rho_max"]))[0].radius
        mie_cfg = _mie_config_from(cfg, radius=radius)
        extent = cfg["extent_m"]
        fmap = field_map(mie_cfg, plane=str(cfg["plane"]),
                         extent=None if extent is None else float(extent),
                         resolution=int(cfg["resolution"]))
        csv_path = out / f"fieldmap_n{order}.csv"
        write_field_map_csv(csv_path, fmap)
        written.append(csv_path)

        plt = _new_figure()
        fig, axes = plt.subplots(1, 2, figsize=(9, 4))
        for ax, grid, label in ((axes[0], fmap.abs_e, "|E|"),
                                (axes[1], fmap.abs_h, "|H|")):
            im = ax.pcolormesh(fmap.u * 1e3, fmap.v * 1e3, grid, shading="auto")
            circle = plt.Circle((0, 0), radius * 1e3, fill=False, color="w", lw=0.8)
            ax.add_patch(circle)
            ax.set_aspect("equal")
            ax.set_xlabel(f"{fmap.plane[0]} (mm)")
            ax.set_ylabel(f"{fmap.plane[1]} (mm)")
            ax.set_title(f"{label}, order {order}")
            fig.colorbar(im, ax=ax)
        fig.tight_layout()
        svg_path = out / f"fieldmap_n{order}.svg"
        _save_svg(fig, svg_path)
        plt.close(fig)
        written.append(svg_path)
        print(f"order={order} radius={radius * 1e3:.3f} mm plane={fmap.plane}")
    for path in written:
        print(path)
    return EXIT_OK


def cmd_size_grapes(args) -> int:
    cfg = _merge_config(_SIZE_DEFAULTS, args.config, args.set)
    semi_major = float(cfg["semi_major_m"])
    alpha = float(cfg["alpha"])
    frequency = float(cfg["frequency_hz"])
    semi_minor = size_ellipsoid(semi_major, alpha, frequency)
    perimeter = ellipse_perimeter(semi_major, semi_minor)
    wavelength = 299792458.0 / frequency
    lines = [
        f"semi_major_m = {semi_major!r}",
        f"alpha = {alpha!r}",
        f"frequency_hz = {frequency!r}",
        f"wavelength_m = {wavelength!r}",
        f"semi_minor_m = {semi_minor!r}",
        f"perimeter_m = {perimeter!r}",
        f"target_perimeter_m = {alpha * wavelength!r}",
    ]
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out or os.environ.get(_OUT_ENV):
        path = _out_dir(args) / "size_grapes.txt"
        path.write_text(text)
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinmie",
        description="NV ODMR simulation, Mie resonance sizing and contrast fitting")
    parser.add_argument("--version", action="version", version=f"spinmie {__version__}")

    def add_common(p):
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--out", help=f"output directory (default ${_OUT_ENV} or '.')")
        p.add_argument("--seed", type=int, default=0, help="seed for stochastic options")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key (repeatable)")

    sub = parser.add_subparsers(dest="command", required=True)

    odmr = sub.add_parser("odmr", help="nine-level ODMR model")
    odmr_sub = odmr.add_subparsers(dest="subcommand", required=True)
    p = odmr_sub.add_parser("simulate", help="spectra for a list of couplings")
    add_common(p)
    p.set_defaults(func=cmd_odmr_simulate)
    p = odmr_sub.add_parser("fit", help="double-Lorentzian fit of a spectrum CSV")
    p.add_argument("input", help="spectrum CSV (frequency_hz,pl)")
    p.add_argument("--report", help="fit report path (default <out>/fit_report.txt)")
    p.add_argument("--plot", action="store_true", help="write a data+fit overlay SVG")
    add_common(p)
    p.set_defaults(func=cmd_odmr_fit)

    mie = sub.add_parser("mie", help="dielectric-sphere resonances and fields")
    mie_sub = mie.add_subparsers(dest="subcommand", required=True)
    p = mie_sub.add_parser("resonances", help="magnetic-resonance table")
    add_common(p)
    p.set_defaults(func=cmd_mie_resonances)
    p = mie_sub.add_parser("fieldmap", help="|E|,|H| cross-section maps")
    add_common(p)
    p.set_defaults(func=cmd_mie_fieldmap)

    p = sub.add_parser("size-grapes", help="ellipsoid sizing from the perimeter rule")
    add_common(p)
    p.set_defaults(func=cmd_size_grapes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FitConvergenceError as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
