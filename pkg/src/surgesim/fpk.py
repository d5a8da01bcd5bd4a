"""Closed-form stationary density of the surge velocity perturbation.

With evenly split noise the velocity diffusion is position-independent and
the stationary density follows in closed form:

    p(u) = C exp(-(4 M / D^2) sum_i alpha_i u^(i+1) / (i+1)),  M = m + m_x.

Equivalently p solves the flux balance d/du[f(u) p] + (D^2 / 4M) p'' = 0
with f(u) = sum_i alpha_i u^i, which the residual helper checks by finite
differences.  Normalization is done in log space with max subtraction on a
dense trapezoid grid whose support expands until the endpoint density is
negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import ConfigError, InsufficientSamplesError, NotNormalizableError
from .ship import AlphaCoeffs, OperatingPoint, ShipParams, compute_alphas
from .stochastic import NoiseIntensity

__all__ = [
    "StationaryPdf",
    "ComparisonResult",
    "stationary_pdf",
    "period_average_diffusion",
    "compare_to_empirical",
    "flux_residual",
]

#: endpoint-to-peak density ratio below which the support is wide enough
TAIL_RATIO = 1e-12

#: fewest samples accepted by the empirical comparison
MIN_COMPARE_SAMPLES = 10_000


def period_average_diffusion(noise: NoiseIntensity, mass_total: float) -> float:
    """Diffusion coefficient (D1^2 + D2^2) / (4 (m + m_x)) of the flux form.

    This is the coefficient multiplying p'' when the stationary equation is
    written with the drift as a force; averaging cos^2 and sin^2 over a
    wavelength gives the same value for any split of D between channels.
    """
    if mass_total <= 0:
        raise ConfigError(f"total mass must be positive, got {mass_total}")
    return (noise.d1**2 + noise.d2**2) / (4.0 * mass_total)


def _potential(alpha: AlphaCoeffs, u: np.ndarray) -> np.ndarray:
    """Integral of the drift force, sum_i alpha_i u^(i+1) / (i+1)."""
    u = np.asarray(u, dtype=float)
    acc = np.zeros_like(u)
    for i, a in enumerate(alpha, start=1):
        acc += a * u ** (i + 1) / (i + 1)
    return acc


def _drift(alpha: AlphaCoeffs, u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    acc = np.zeros_like(u)
    for a in reversed(tuple(alpha)):
        acc = (acc + a) * u
    return acc


class StationaryPdf:
    """Normalized stationary velocity density and its derived quantities.

    Args:
        alpha: drift force coefficients about the operating point.
        mass_total: m + m_x (kg).
        d_squared: total noise intensity D^2 = D1^2 + D2^2 (N^2 s).
        support: optional (lo, hi) integration support; when omitted the
            support starts at 6 linearized standard deviations and doubles
            until both endpoint densities fall below 1e-12 of the peak.
        n_grid: trapezoid grid size.

    Raises:
        NotNormalizableError: if the potential does not confine (the
            highest nonzero coefficient is negative or of odd force power),
            if D^2 is not positive, or if the support expansion fails.
    """

    def __init__(self, alpha: AlphaCoeffs, mass_total: float, d_squared: float,
                 support: tuple[float, float] | None = None,
                 n_grid: int = 200_001):
        if mass_total <= 0:
            raise ConfigError(f"total mass must be positive, got {mass_total}")
        if d_squared <= 0:
            raise NotNormalizableError(
                "zero or negative noise intensity gives no stationary density")
        self.alpha = alpha
        self.mass_total = float(mass_total)
        self.d_squared = float(d_squared)
        self.beta = 4.0 * self.mass_total / self.d_squared

        coeffs = tuple(alpha)
        lead = max((i for i, a in enumerate(coeffs) if a != 0.0), default=None)
        if lead is None:
            raise NotNormalizableError("all drift coefficients vanish")
        if (lead + 1) % 2 == 0:
            raise NotNormalizableError(
                f"leading force power {lead + 1} is even; potential does not confine")
        if coeffs[lead] < 0:
            raise NotNormalizableError(
                f"leading coefficient alpha_{lead + 1} = {coeffs[lead]} is negative")

        if coeffs[0] > 0:
            self.sigma_lin = math.sqrt(self.d_squared / (4.0 * self.mass_total * coeffs[0]))
        else:
            self.sigma_lin = (self.d_squared / (4.0 * self.mass_total * coeffs[lead])) \
                ** (1.0 / (lead + 2))

        if support is None:
            lo, hi = -6.0 * self.sigma_lin, 6.0 * self.sigma_lin
            for _ in range(200):
                if self._tails_negligible(lo, hi):
                    break
                lo *= 2.0
                hi *= 2.0
            else:
                raise NotNormalizableError("support expansion did not converge")
            support = (lo, hi)
        lo, hi = float(support[0]), float(support[1])
        if not lo < hi:
            raise ConfigError(f"support must satisfy lo < hi, got {support}")
        self.support = (lo, hi)

        self.grid = np.linspace(lo, hi, n_grid)
        phi = -self.beta * _potential(alpha, self.grid)
        self._phi_max = float(np.max(phi))
        weight = np.exp(phi - self._phi_max)
        z = float(np.trapezoid(weight, self.grid))
        if not (z > 0 and math.isfinite(z)):
            raise NotNormalizableError("normalization integral is not finite")
        self._log_norm = math.log(z) + self._phi_max
        self.density = weight / z
        self._cdf_grid = cumulative_trapezoid(self.density, self.grid, initial=0.0)
        self._cdf_grid /= self._cdf_grid[-1]

    def _tails_negligible(self, lo: float, hi: float) -> bool:
        probe = np.linspace(lo, hi, 4097)
        phi = -self.beta * _potential(self.alpha, probe)
        peak = float(np.max(phi))
        return (phi[0] - peak < math.log(TAIL_RATIO)
                and phi[-1] - peak < math.log(TAIL_RATIO))

    def pdf(self, u) -> np.ndarray:
        """Density at u, from the closed form (valid off the grid too)."""
        phi = -self.beta * _potential(self.alpha, u)
        return np.exp(phi - self._log_norm)

    def cdf(self, u) -> np.ndarray:
        """Cumulative distribution, interpolated on the quadrature grid."""
        return np.interp(u, self.grid, self._cdf_grid, left=0.0, right=1.0)

    def moment(self, k: int, central: bool = False) -> float:
        """k-th raw (or central) moment by trapezoid quadrature."""
        shift = self.mean if central else 0.0
        return float(np.trapezoid((self.grid - shift) ** k * self.density, self.grid))

    @property
    def mean(self) -> float:
        return float(np.trapezoid(self.grid * self.density, self.grid))

    @property
    def variance(self) -> float:
        m1 = self.mean
        return float(np.trapezoid((self.grid - m1) ** 2 * self.density, self.grid))

    @property
    def mode(self) -> float:
        """Density peak, refined by a parabola through the top grid points."""
        i = int(np.argmax(self.density))
        if i == 0 or i == self.grid.size - 1:
            return float(self.grid[i])
        y0, y1, y2 = self.density[i - 1:i + 2]
        denom = y0 - 2.0 * y1 + y2
        if denom == 0.0:
            return float(self.grid[i])
        h = self.grid[1] - self.grid[0]
        return float(self.grid[i] + 0.5 * h * (y0 - y2) / denom)

    def sample(self, n: int, seed: int = 0) -> np.ndarray:
        """Draw n samples by inverting the gridded cumulative distribution."""
        rng = np.random.default_rng(seed)
        return np.interp(rng.uniform(size=n), self._cdf_grid, self.grid)


def stationary_pdf(p: ShipParams, op: OperatingPoint, noise: NoiseIntensity,
                   support: tuple[float, float] | None = None,
                   n_grid: int = 200_001) -> StationaryPdf:
    """Stationary density for a ship at an operating point with given noise."""
    alpha = compute_alphas(p, op)
    return StationaryPdf(alpha, p.total_mass, noise.d_squared,
                         support=support, n_grid=n_grid)


@dataclass(frozen=True)
class ComparisonResult:
    """Empirical-vs-analytic comparison summary.

    Attributes:
        n_samples: retained sample count.
        l1_distance: integral of |histogram - analytic| over the bins.
        ks_statistic: sup-norm distance between the empirical and analytic
            cumulative distributions.
        bin_edges: Freedman-Diaconis bin edges used for the histogram.
        empirical_density: histogram density per bin.
        moments: rows (name, empirical, analytic) for the mean, the
            variance and the third and fourth central moments.
    """

    n_samples: int
    l1_distance: float
    ks_statistic: float
    bin_edges: np.ndarray
    empirical_density: np.ndarray
    moments: tuple[tuple[str, float, float], ...]

    @property
    def ks_critical_1pct(self) -> float:
        """Large-sample 1 percent Kolmogorov-Smirnov critical value."""
        return 1.628 / math.sqrt(self.n_samples)


def compare_to_empirical(spdf: StationaryPdf, samples,
                         min_samples: int = MIN_COMPARE_SAMPLES) -> ComparisonResult:
    """Compare retained velocity samples against the closed-form density.

    Histogram bins follow the Freedman-Diaconis rule; the analytic mass per
    bin comes from cumulative-distribution differences, so the L1 distance
    is insensitive to in-bin curvature.

    Raises:
        InsufficientSamplesError: with fewer than min_samples samples.
    """
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size < min_samples:
        raise InsufficientSamplesError(
            f"need at least {min_samples} samples, got {samples.size}")
    edges = np.histogram_bin_edges(samples, bins="fd")
    hist, edges = np.histogram(samples, bins=edges, density=True)
    widths = np.diff(edges)
    analytic_mass = np.diff(spdf.cdf(edges))
    l1 = float(np.sum(np.abs(hist * widths - analytic_mass)))

    xs = np.sort(samples)
    cdf_at = spdf.cdf(xs)
    n = xs.size
    upper = np.arange(1, n + 1) / n - cdf_at
    lower = cdf_at - np.arange(0, n) / n
    ks = float(max(upper.max(), lower.max()))

    mean_e = float(np.mean(xs))
    cent = xs - mean_e
    moments = (
        ("mean", mean_e, spdf.mean),
        ("variance", float(np.mean(cent**2)), spdf.variance),
        ("central_m3", float(np.mean(cent**3)), spdf.moment(3, central=True)),
        ("central_m4", float(np.mean(cent**4)), spdf.moment(4, central=True)),
    )
    return ComparisonResult(n_samples=n, l1_distance=l1, ks_statistic=ks,
                            bin_edges=edges, empirical_density=hist,
                            moments=moments)


def flux_residual(spdf: StationaryPdf, h: float | None = None,
                  n_points: int = 4001, span: float = 6.0) -> float:
    """Normalized sup-norm residual of d/du[f p] + (D^2/4M) p''.

    Central differences with step h (default 1e-3 of the linearized scale)
    on a grid spanning the given multiple of that scale; the residual is
    scaled by max|f p| divided by the scale, so it is invariant to the
    normalization constant.
    """
    scale = spdf.sigma_lin
    if h is None:
        h = 1e-3 * scale
    u = np.linspace(-span * scale, span * scale, n_points)
    f = lambda x: _drift(spdf.alpha, x)
    d1 = (f(u + h) * spdf.pdf(u + h) - f(u - h) * spdf.pdf(u - h)) / (2.0 * h)
    d2 = (spdf.pdf(u + h) - 2.0 * spdf.pdf(u) + spdf.pdf(u - h)) / h**2
    nu = spdf.d_squared / (4.0 * spdf.mass_total)
    resid = d1 + nu * d2
    norm = float(np.max(np.abs(f(u) * spdf.pdf(u)))) / scale
    return float(np.max(np.abs(resid))) / norm
