"""Deterministic output writers.

Every file produced here is a pure function of the inputs: floats are
written with repr (shortest round-trip), JSON keys are sorted, newlines are
fixed to "\\n", and nothing records wall-clock time.  Re-running a command
with the same inputs reproduces every output byte for byte regardless of
worker count.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

import numpy as np

from . import __version__
from .fpk import ComparisonResult, StationaryPdf
from .state import Trajectory
from .stats import SweepResult

__all__ = [
    "output_root",
    "file_sha256",
    "format_value",
    "write_csv",
    "write_json",
    "write_trajectory_csv",
    "write_sweep_csv",
    "write_histogram_csv",
    "write_pdf_csv",
    "comparison_dict",
    "base_manifest",
]

#: environment variable overriding the default output root
OUTPUT_ROOT_ENV = "SURGESIM_OUTPUT_ROOT"

#: fallback output root when neither the option nor the variable is set
DEFAULT_OUTPUT_ROOT = "surgesim_out"


def output_root(cli_value: str | None = None) -> Path:
    """Resolve the output root: option, then environment, then default."""
    if cli_value:
        return Path(cli_value)
    env = os.environ.get(OUTPUT_ROOT_ENV)
    if env:
        return Path(env)
    return Path(DEFAULT_OUTPUT_ROOT)


def file_sha256(path) -> str:
    """Hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def format_value(value) -> str:
    """Round-trip text for one CSV cell."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(path, header, rows) -> None:
    """Write rows of cells with a header line and \\n newlines."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def write_json(path, obj) -> None:
    """Write a JSON document with sorted keys and a trailing newline."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(obj, indent=2, sort_keys=True))
        fh.write("\n")


def write_trajectory_csv(path, traj: Trajectory) -> None:
    write_csv(path, ["t", "x_s", "u_s"], zip(traj.t, traj.x, traj.u))


def write_sweep_csv(path, result: SweepResult) -> None:
    header = ["fn", "u_bar", "n_p", "n_paths", "n_samples", "mean", "std",
              "skewness", "kurtosis_excess", "mean_speed_ratio",
              "qq_correlation", "ks_phase"]
    rows = [(pt.fn, pt.u_bar, pt.n_p, pt.stats.n_paths, pt.stats.n_samples,
             pt.stats.mean, pt.stats.std, pt.stats.skewness,
             pt.stats.kurtosis_excess, pt.stats.mean_speed_ratio,
             pt.stats.qq_correlation, pt.stats.ks_phase)
            for pt in result.points]
    write_csv(path, header, rows)


def write_histogram_csv(path, edges, density) -> None:
    write_csv(path, ["bin_lo", "bin_hi", "density"],
              zip(edges[:-1], edges[1:], density))


def write_pdf_csv(path, spdf: StationaryPdf, n_points: int = 2001) -> None:
    """Write the closed-form density sampled evenly over its support."""
    u = np.linspace(spdf.support[0], spdf.support[1], n_points)
    write_csv(path, ["u_s", "density"], zip(u, spdf.pdf(u)))


def comparison_dict(result: ComparisonResult) -> dict:
    """JSON-ready view of an empirical-vs-analytic comparison."""
    return {
        "n_samples": result.n_samples,
        "l1_distance": result.l1_distance,
        "ks_statistic": result.ks_statistic,
        "ks_critical_1pct": result.ks_critical_1pct,
        "moments": [
            {"name": name, "empirical": emp, "analytic": ana}
            for name, emp, ana in result.moments
        ],
    }


def base_manifest(command: str, ship_path=None, config_path=None,
                  **extra) -> dict:
    """Manifest skeleton shared by all commands.

    Records the code version, the command, input digests and any extra
    fields; deliberately no timestamps, so identical runs produce identical
    manifests.
    """
    manifest: dict = {"command": command, "version": __version__}
    if ship_path is not None:
        manifest["ship_file"] = str(Path(ship_path).name)
        manifest["ship_sha256"] = file_sha256(ship_path)
    if config_path is not None:
        manifest["config_file"] = str(Path(config_path).name)
        manifest["config_sha256"] = file_sha256(config_path)
    manifest.update(extra)
    return manifest
