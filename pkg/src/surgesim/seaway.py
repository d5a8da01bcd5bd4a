"""Ocean wave spectrum, band-limited discretization, and random-phase
synthesis of wave elevation and wave-induced surge force.

The two-parameter spectrum is

    S(omega) = 172.8 H^2 / (T^4 omega^5) * exp(-691.2 / (T^4 omega^4))

with H the significant wave height and T the mean period.  A realization
discretizes the band into equally spaced components, draws independent
uniform phases, and carries per-component force amplitudes from an
injectable gain model.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError, DomainError

__all__ = [
    "SeawaySpec",
    "WaveRealization",
    "BandCoverageWarning",
    "ForceAmplitudeModel",
    "ConstantGain",
    "GainTable",
    "spectrum_density",
    "peak_frequency",
    "synthesize",
    "synthesize_ensemble",
    "wave_elevation",
    "wave_force",
    "split_force",
    "split_force_series",
]

#: default band edges as multiples of the peak frequency
DEFAULT_BAND_MULTIPLIERS = (0.5, 7.0)

#: anything mapping (omega array, amplitude array) to force amplitudes
ForceAmplitudeModel = Callable[[np.ndarray, np.ndarray], np.ndarray]


class BandCoverageWarning(UserWarning):
    """The synthesized band excludes the spectral peak frequency."""


@dataclass(frozen=True)
class SeawaySpec:
    """Spectrum definition and discretization choices.

    Attributes:
        h13: significant wave height H_1/3 (m).
        t01: mean wave period T_01 (s).
        n_components: number of frequency components.
        band: (omega_lo, omega_hi) in rad/s; when omitted, defaults to
            (0.5, 7.0) times the peak frequency.
        rng_seed: seed for the phase generator.
        gravity: g (m/s^2) used by the deep-water dispersion relation.
    """

    h13: float
    t01: float
    n_components: int = 500
    band: tuple[float, float] = (0.0, 0.0)
    rng_seed: int = 0
    gravity: float = 9.81

    def __post_init__(self):
        if self.h13 <= 0:
            raise ConfigError(f"h13 must be positive, got {self.h13}")
        if self.t01 <= 0:
            raise ConfigError(f"t01 must be positive, got {self.t01}")
        if self.n_components < 1:
            raise ConfigError(f"n_components must be >= 1, got {self.n_components}")
        if self.band == (0.0, 0.0):
            wp = peak_frequency(self)
            object.__setattr__(
                self, "band",
                (DEFAULT_BAND_MULTIPLIERS[0] * wp, DEFAULT_BAND_MULTIPLIERS[1] * wp))
        lo, hi = self.band
        if not 0.0 < lo < hi:
            raise ConfigError(f"band must satisfy 0 < lo < hi, got {self.band}")


@dataclass(frozen=True)
class WaveRealization:
    """One sampled seaway: component frequencies, phases, and amplitudes.

    Attributes:
        omega: component frequencies (rad/s), strictly increasing.
        k: deep-water wavenumbers omega^2/g (1/m).
        phase: phases in [0, 2*pi).
        amp: elevation amplitudes a_i = sqrt(2 S(omega_i) d_omega) (m).
        force: per-component surge force amplitudes (N).
        k_wp: representative wavenumber at the spectral peak (1/m).
        gravity: g used for dispersion (m/s^2).
        d_omega: component spacing (rad/s).
    """

    omega: np.ndarray
    k: np.ndarray
    phase: np.ndarray
    amp: np.ndarray
    force: np.ndarray
    k_wp: float
    gravity: float
    d_omega: float

    def __post_init__(self):
        for name in ("omega", "k", "phase", "amp", "force"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        n = self.omega.size
        if not all(getattr(self, f).size == n for f in ("k", "phase", "amp", "force")):
            raise ConfigError("realization arrays must share one length")
        if n > 1 and not np.all(np.diff(self.omega) > 0):
            raise ConfigError("component frequencies must be strictly increasing")
        if np.any(self.amp < 0) or np.any(self.force < 0):
            raise ConfigError("amplitudes must be non-negative")

    @property
    def omega_wp(self) -> float:
        """Peak frequency implied by k_wp through deep-water dispersion."""
        return math.sqrt(self.k_wp * self.gravity)


def spectrum_density(spec: SeawaySpec, omega):
    """Spectral density (m^2 s) at frequency omega (rad/s, positive).

    Raises:
        DomainError: for omega <= 0.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0.0):
        raise DomainError("spectrum density requires omega > 0")
    t4 = spec.t01**4
    out = 172.8 * spec.h13**2 / (t4 * w**5) * np.exp(-691.2 / (t4 * w**4))
    return out if out.ndim else float(out)


def peak_frequency(spec: SeawaySpec) -> float:
    """Frequency of the spectral maximum, ((4/5) * 691.2 / T^4)^(1/4)."""
    return (0.8 * 691.2 / spec.t01**4) ** 0.25


class ConstantGain:
    """Force amplitude model F_i = gain * a_i with a single constant gain."""

    def __init__(self, gain: float):
        if gain < 0:
            raise ConfigError(f"gain must be non-negative, got {gain}")
        self.gain = float(gain)

    def __call__(self, omega: np.ndarray, amp: np.ndarray) -> np.ndarray:
        return self.gain * np.asarray(amp, dtype=float)


class GainTable:
    """Frequency-dependent force gain, linearly interpolated from a table.

    Gains outside the tabulated range clamp to the end values.
    """

    def __init__(self, omega: np.ndarray, gain: np.ndarray):
        omega = np.asarray(omega, dtype=float)
        gain = np.asarray(gain, dtype=float)
        if omega.size < 2:
            raise ConfigError("gain table needs at least two rows")
        if not np.all(np.diff(omega) > 0):
            raise ConfigError("gain table frequencies must be strictly increasing")
        if np.any(gain < 0):
            raise ConfigError("gains must be non-negative")
        self.omega = omega
        self.gain = gain

    @classmethod
    def from_csv(cls, path) -> "GainTable":
        """Load a two-column CSV of (omega rad/s, gain N/m); '#' comments allowed."""
        try:
            table = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
        except ValueError as exc:
            raise ConfigError(f"{path}: malformed gain table: {exc}") from None
        if table.shape[1] != 2:
            raise ConfigError(f"{path}: gain table must have exactly 2 columns")
        return cls(table[:, 0], table[:, 1])

    def __call__(self, omega: np.ndarray, amp: np.ndarray) -> np.ndarray:
        g = np.interp(np.asarray(omega, dtype=float), self.omega, self.gain)
        return g * np.asarray(amp, dtype=float)


def synthesize(spec: SeawaySpec,
               force_model: Callable[[np.ndarray, np.ndarray], np.ndarray],
               rng: np.random.Generator | None = None) -> WaveRealization:
    """Sample one realization of the seaway.

    Components sit at the midpoints of an equally spaced partition of the
    band, with elevation amplitudes a_i = sqrt(2 S(omega_i) d_omega), phases
    i.i.d. uniform on [0, 2*pi), wavenumbers from deep-water dispersion, and
    force amplitudes from the injected gain model.

    Args:
        spec: spectrum and discretization parameters.
        force_model: maps (omega array, amplitude array) to force amplitudes.
        rng: phase generator; when omitted, a fresh generator is seeded from
            spec.rng_seed.

    Returns:
        The sampled realization.

    Warns:
        BandCoverageWarning: when the band excludes the peak frequency, so
            the representative wavenumber falls outside the synthesized band.
    """
    lo, hi = spec.band
    w_wp = peak_frequency(spec)
    if not lo <= w_wp <= hi:
        warnings.warn(BandCoverageWarning(
            f"band [{lo:.4g}, {hi:.4g}] excludes the peak frequency {w_wp:.4g}"))
    n = spec.n_components
    d_omega = (hi - lo) / n
    omega = lo + (np.arange(n) + 0.5) * d_omega
    amp = np.sqrt(2.0 * spectrum_density(spec, omega) * d_omega)
    if rng is None:
        rng = np.random.default_rng(spec.rng_seed)
    phase = rng.uniform(0.0, 2.0 * math.pi, size=n)
    force = np.asarray(force_model(omega, amp), dtype=float)
    if force.shape != omega.shape:
        raise ConfigError("force model returned a wrong-shaped array")
    return WaveRealization(
        omega=omega,
        k=omega**2 / spec.gravity,
        phase=phase,
        amp=amp,
        force=force,
        k_wp=w_wp**2 / spec.gravity,
        gravity=spec.gravity,
        d_omega=d_omega,
    )


def synthesize_ensemble(spec: SeawaySpec,
                        force_model: Callable[[np.ndarray, np.ndarray], np.ndarray],
                        n_paths: int) -> list[WaveRealization]:
    """Sample independent realizations from split seed streams.

    Stream i of the ensemble uses child i of SeedSequence(spec.rng_seed),
    so any subset of paths can be regenerated without the others.
    """
    seq = np.random.SeedSequence(spec.rng_seed)
    return [synthesize(spec, force_model, rng=np.random.default_rng(child))
            for child in seq.spawn(n_paths)]


def wave_elevation(r: WaveRealization, t, x):
    """Elevation sum_i a_i cos(omega_i t - k_i x + eps_i) at (t, x) (m)."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    ph = (r.omega * t[..., None]) - (r.k * x[..., None]) + r.phase
    out = np.cos(ph) @ r.amp
    return out if out.ndim else float(out)


def wave_force(r: WaveRealization, t, x):
    """Surge force sum_i F_i sin(omega_i t - k_i x + eps_i) at (t, x) (N)."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    ph = (r.omega * t[..., None]) - (r.k * x[..., None]) + r.phase
    out = np.sin(ph) @ r.force
    return out if out.ndim else float(out)


def split_force(r: WaveRealization, t):
    """Position-free quadrature pair (F_Ws, F_Wc) at time t.

    F_Ws = sum_i F_i sin(omega_i t + eps_i) and
    F_Wc = sum_i F_i cos(omega_i t + eps_i); with every wavenumber collapsed
    to k_wp the full force equals cos(k_wp x) F_Ws - sin(k_wp x) F_Wc.
    """
    ph = r.omega * float(t) + r.phase
    return float(np.sin(ph) @ r.force), float(np.cos(ph) @ r.force)


def split_force_series(r: WaveRealization, tgrid: np.ndarray):
    """Vectorized split_force over a time grid; returns (F_Ws, F_Wc) arrays."""
    tgrid = np.asarray(tgrid, dtype=float)
    ph = np.outer(tgrid, r.omega) + r.phase
    return np.sin(ph) @ r.force, np.cos(ph) @ r.force
