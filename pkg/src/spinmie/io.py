"""CSV schemas, fit reports and the key=value config format.

Spectrum and resonance tables use ``repr`` floats so a write/read round trip
is bit exact; field maps use fixed scientific notation.  All writers emit
deterministic bytes for identical inputs.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from spinmie.errors import ConfigError
from spinmie.fitting import LorentzianFit, contrast_summary
from spinmie.mie.fields import FieldMap
from spinmie.mie.resonance import ResonanceResult
from spinmie.nv.spectrum import ContrastPoint, OdmrSpectrum

SPECTRUM_HEADER = "frequency_hz,pl"
RESONANCE_HEADER = "order,mode_index,rho_res,radius_m,residual"
FIELD_MAP_HEADER = "x,y,abs_E,abs_H"
CONTRAST_HEADER = "pump_rate_rad_s,coupling_rad_s,pl_baseline,pl_resonant,contrast"


def write_spectrum_csv(path, spectrum: OdmrSpectrum):
    lines = [SPECTRUM_HEADER]
    lines += [f"{float(f)!r},{float(p)!r}"
              for f, p in zip(spectrum.frequencies, spectrum.pl)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_spectrum_csv(path) -> OdmrSpectrum:
    """Parse and validate a ``frequency_hz,pl`` file.

    Raises :class:`ConfigError` naming the offending line for malformed rows,
    non-positive PL or non-increasing frequencies.
    """
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines or lines[0].strip() != SPECTRUM_HEADER:
        raise ConfigError(f"{path}: expected header '{SPECTRUM_HEADER}'")
    freqs: list[float] = []
    pls: list[float] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected 2 columns, got {len(parts)}")
        try:
            f, p = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: non-numeric value ({exc})") from exc
        if not (math.isfinite(f) and math.isfinite(p)):
            raise ConfigError(f"{path}:{lineno}: non-finite value")
        if p <= 0:
            raise ConfigError(f"{path}:{lineno}: pl must be positive, got {p!r}")
        if freqs and f <= freqs[-1]:
            raise ConfigError(
                f"{path}:{lineno}: frequency {f!r} not strictly increasing")
        freqs.append(f)
        pls.append(p)
    if len(freqs) < 2:
        raise ConfigError(f"{path}: need at least two data rows")
    return OdmrSpectrum(np.array(freqs), np.array(pls))


def write_resonance_csv(path, results: list[ResonanceResult]):
    lines = [RESONANCE_HEADER]
    lines += [f"{r.order},{r.mode_index},{r.rho_res!r},{r.radius!r},{r.residual!r}"
              for r in results]
    Path(path).write_text("\n".join(lines) + "\n")


def write_field_map_csv(path, fmap: FieldMap):
    lines = [FIELD_MAP_HEADER]
    for i, v in enumerate(fmap.v):
        for j, u in enumerate(fmap.u):
            lines.append(f"{u:.9e},{v:.9e},{fmap.abs_e[i, j]:.9e},{fmap.abs_h[i, j]:.9e}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_contrast_csv(path, rows: list[ContrastPoint]):
    lines = [CONTRAST_HEADER]
    lines += [f"{r.pump_rate!r},{r.coupling!r},{r.pl_baseline!r},"
              f"{r.pl_resonant!r},{r.contrast!r}" for r in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def format_fit_report(fit: LorentzianFit) -> str:
    summary = contrast_summary(fit, force=True)
    pairs = [
        ("baseline", repr(fit.baseline)),
        ("amplitude_1", repr(fit.amplitude_1)),
        ("center_1_hz", repr(fit.center_1)),
        ("hwhm_1_hz", repr(fit.hwhm_1)),
        ("amplitude_2", repr(fit.amplitude_2)),
        ("center_2_hz", repr(fit.center_2)),
        ("hwhm_2_hz", repr(fit.hwhm_2)),
        ("splitting_hz", repr(fit.splitting)),
        ("contrast_1", repr(fit.contrast_1)),
        ("contrast_2", repr(fit.contrast_2)),
        ("contrast_deeper", repr(summary["deeper"])),
        ("contrast_mean", repr(summary["mean"])),
        ("contrast_total", repr(summary["total"])),
        ("contrast_deeper_percent", f"{100 * summary['deeper']:.4f}"),
        ("rss", repr(fit.rss)),
        ("converged", str(fit.converged).lower()),
        ("iterations", str(fit.iterations)),
    ]
    if fit.message:
        pairs.append(("message", fit.message))
    return "\n".join(f"{k} = {v}" for k, v in pairs) + "\n"


def write_fit_report(path, fit: LorentzianFit):
    Path(path).write_text(format_fit_report(fit))


def _parse_value(raw: str):
    text = raw.strip()
    low = text.lower()
    if low in ("true", "yes", "on"):
        return True
    if low in ("false", "no", "off"):
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    if "," in text:
        try:
            return [float(part) for part in text.split(",")]
        except ValueError:
            pass
    return text


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse flat ``key = value`` lines; '#' starts a comment."""
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        out[key] = _parse_value(raw)
    return out


def read_config(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))
