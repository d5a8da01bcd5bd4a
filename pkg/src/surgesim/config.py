"""Campaign configuration: a small sectioned key = value format.

Sections group the seaway description, ensemble sizes, the sweep grid and
the noise calibration choice.  Validation is exhaustive: every unknown
section, unknown key, type error and missing requirement is reported in
one error, each with its line number.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .seaway import ConstantGain, ForceAmplitudeModel, GainTable, SeawaySpec

__all__ = ["CampaignConfig", "load_campaign"]

_SECTION_RE = re.compile(r"^\[(?P<name>[^\]]+)\]$")
_KEY_RE = re.compile(r"^(?P<key>[^=]+?)\s*=\s*(?P<value>.*)$")

#: schema: section -> key -> (type tag, required)
_SCHEMA = {
    "seaway": {
        "h13": ("float", True),
        "t01": ("float", True),
        "n_components": ("int", False),
        "band_lo": ("float", False),
        "band_hi": ("float", False),
        "gain": ("float", False),
        "gain_table": ("path", False),
    },
    "ensemble": {
        "n_paths": ("int", False),
        "transient": ("float", False),
        "retained": ("float", False),
        "dt": ("float", False),
        "white_dt": ("float", False),
        "seed": ("int", False),
        "thin": ("int", False),
        "record_stride": ("int", False),
        "workers": ("int", False),
    },
    "sweep": {
        "fn_values": ("floats", False),
        "system": ("str", False),
    },
    "noise": {
        "method": ("str", False),
        "omega_ref": ("float", False),
        "bandwidth": ("float", False),
    },
}


@dataclass(frozen=True)
class CampaignConfig:
    """Validated campaign description.

    Attributes:
        spec: seaway spectrum and discretization (rng_seed already set).
        force_model: per-component force amplitude gain.
        gain_descriptor: short text identifying the gain for manifests.
        fn_values: sweep grid of nominal Froude numbers (may be empty).
        system: default simulated system for sweep and simulate.
        n_paths: ensemble width.
        transient: discarded initial span (s).
        retained: span kept for statistics (s).
        dt: colored/approx integrator step, or None for the band default.
        white_dt: white-system integrator step (s).
        seed: master seed.
        thin: reduction stride over retained records.
        record_stride: integration-time record thinning.
        workers: thread count for path chunks.
        noise_method: "spectral" or "variance".
        omega_ref: spectral-method reference frequency, or None for the peak.
        bandwidth: variance-method bandwidth, or None for the band width.
        source: resolved path of the loaded file.
    """

    spec: SeawaySpec
    force_model: ForceAmplitudeModel = field(repr=False)
    gain_descriptor: str
    fn_values: tuple[float, ...]
    system: str
    n_paths: int
    transient: float
    retained: float
    dt: float | None
    white_dt: float
    seed: int
    thin: int
    record_stride: int
    workers: int
    noise_method: str
    omega_ref: float | None
    bandwidth: float | None
    source: str


def _parse_value(tag: str, text: str):
    if tag == "float":
        value = float(text)
        if not math.isfinite(value):
            raise ValueError("not finite")
        return value
    if tag == "int":
        return int(text)
    if tag == "floats":
        parts = [s.strip() for s in text.split(",") if s.strip()]
        if not parts:
            raise ValueError("empty list")
        return tuple(float(s) for s in parts)
    return text


def load_campaign(path) -> CampaignConfig:
    """Load and validate a campaign file.

    Raises:
        ConfigError: listing every violation with its line number.
    """
    path = Path(path)
    values: dict[tuple[str, str], object] = {}
    lines: dict[tuple[str, str], int] = {}
    errors: list[str] = []
    section = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = _SECTION_RE.match(line)
            if m:
                section = m.group("name").strip().lower()
                if section not in _SCHEMA:
                    errors.append(f"{path}:{lineno}: unknown section [{section}]")
                    section = None
                continue
            m = _KEY_RE.match(line)
            if not m:
                errors.append(f"{path}:{lineno}: expected 'key = value', got {line!r}")
                continue
            if section is None:
                errors.append(f"{path}:{lineno}: key outside any known section")
                continue
            key = m.group("key").strip().lower()
            schema = _SCHEMA[section]
            if key not in schema:
                errors.append(f"{path}:{lineno}: unknown key {key!r} in [{section}]")
                continue
            if (section, key) in values:
                errors.append(f"{path}:{lineno}: duplicate key {key!r} in [{section}]")
                continue
            tag, _ = schema[key]
            try:
                values[(section, key)] = _parse_value(tag, m.group("value").strip())
            except ValueError as exc:
                errors.append(
                    f"{path}:{lineno}: bad value for {key!r}: "
                    f"{m.group('value').strip()!r} ({exc})")
                continue
            lines[(section, key)] = lineno

    for section_name, schema in _SCHEMA.items():
        for key, (_, required) in schema.items():
            if required and (section_name, key) not in values:
                errors.append(f"{path}: missing required key {key!r} in [{section_name}]")

    has_gain = ("seaway", "gain") in values
    has_table = ("seaway", "gain_table") in values
    if has_gain and has_table:
        errors.append(f"{path}: give either 'gain' or 'gain_table', not both")
    if not has_gain and not has_table:
        errors.append(f"{path}: one of 'gain' or 'gain_table' is required in [seaway]")

    band_lo = values.get(("seaway", "band_lo"))
    band_hi = values.get(("seaway", "band_hi"))
    if (band_lo is None) != (band_hi is None):
        errors.append(f"{path}: band_lo and band_hi must be given together")

    system = values.get(("sweep", "system"), "colored")
    if system not in ("colored", "approx", "white"):
        lineno = lines.get(("sweep", "system"))
        errors.append(f"{path}:{lineno}: unknown system {system!r}")

    method = values.get(("noise", "method"), "spectral")
    if method not in ("spectral", "variance"):
        lineno = lines.get(("noise", "method"))
        errors.append(f"{path}:{lineno}: unknown noise method {method!r}")

    if errors:
        raise ConfigError("\n".join(errors))

    if has_table:
        table_path = Path(str(values[("seaway", "gain_table")]))
        if not table_path.is_absolute():
            table_path = path.parent / table_path
        force_model: ForceAmplitudeModel = GainTable.from_csv(table_path)
        gain_descriptor = f"table:{table_path.name}"
    else:
        force_model = ConstantGain(float(values[("seaway", "gain")]))
        gain_descriptor = f"constant:{values[('seaway', 'gain')]!r}"

    seed = int(values.get(("ensemble", "seed"), 0))
    band = ((float(band_lo), float(band_hi)) if band_lo is not None else (0.0, 0.0))
    try:
        spec = SeawaySpec(
            h13=float(values[("seaway", "h13")]),
            t01=float(values[("seaway", "t01")]),
            n_components=int(values.get(("seaway", "n_components"), 64)),
            band=band,
            rng_seed=seed,
        )
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None

    return CampaignConfig(
        spec=spec,
        force_model=force_model,
        gain_descriptor=gain_descriptor,
        fn_values=tuple(values.get(("sweep", "fn_values"), ())),
        system=str(system),
        n_paths=int(values.get(("ensemble", "n_paths"), 16)),
        transient=float(values.get(("ensemble", "transient"), 100.0)),
        retained=float(values.get(("ensemble", "retained"), 600.0)),
        dt=(float(values[("ensemble", "dt")])
            if ("ensemble", "dt") in values else None),
        white_dt=float(values.get(("ensemble", "white_dt"), 0.005)),
        seed=seed,
        thin=int(values.get(("ensemble", "thin"), 1)),
        record_stride=int(values.get(("ensemble", "record_stride"), 1)),
        workers=int(values.get(("ensemble", "workers"), 1)),
        noise_method=str(method),
        omega_ref=(float(values[("noise", "omega_ref")])
                   if ("noise", "omega_ref") in values else None),
        bandwidth=(float(values[("noise", "bandwidth")])
                   if ("noise", "bandwidth") in values else None),
        source=str(path),
    )
