"""Ensemble reduction and Froude-number sweeps.

Reductions pool post-transient samples from every path.  Paths are first
sorted by path id, so any permutation of the input list gives bit-identical
results; each sweep point derives its own random stream from the master
seed, so adding or removing points never perturbs the others.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import norm

from .errors import ConfigError, EmptyAfterCutError
from .seaway import ForceAmplitudeModel, SeawaySpec, synthesize, synthesize_ensemble
from .ship import ShipParams, solve_revs
from .state import SurgeState
from .stochastic import (calibrate_noise, simulate_approx_ensemble,
                         simulate_colored_ensemble, simulate_white_ensemble)

__all__ = [
    "EnsembleStats",
    "SweepPoint",
    "SweepResult",
    "reduce_ensemble",
    "pool_samples",
    "qq_correlation",
    "phase_uniformity_ks",
    "run_sweep",
    "SWEEP_SYSTEMS",
]

SWEEP_SYSTEMS = ("colored", "approx", "white")


@dataclass(frozen=True)
class EnsembleStats:
    """Pooled post-transient statistics of a stochastic ensemble.

    Attributes:
        n_paths: number of contributing paths.
        n_samples: pooled retained sample count.
        mean: mean velocity perturbation (m/s).
        std: its standard deviation (m/s).
        skewness: standardized third central moment (0 if degenerate).
        kurtosis_excess: standardized fourth central moment minus 3.
        mean_speed_ratio: mean of (u_bar + u_S) / u_bar, or nan when no
            operating speed was supplied.
        qq_correlation: normal quantile-quantile correlation of the pooled
            velocities, nan when degenerate.
        ks_phase: uniformity sup-norm of (k_wp x_S) mod 2 pi, nan when no
            wavenumber was supplied.
        degenerate: True when the pooled velocity variance vanishes.
        hist_edges: Freedman-Diaconis histogram bin edges.
        hist_density: histogram density per bin (unit total mass).
    """

    n_paths: int
    n_samples: int
    mean: float
    std: float
    skewness: float
    kurtosis_excess: float
    mean_speed_ratio: float
    qq_correlation: float
    ks_phase: float
    degenerate: bool
    hist_edges: np.ndarray
    hist_density: np.ndarray


def pool_samples(trajectories, transient_cut: float, thin: int = 1,
                 component: str = "u") -> np.ndarray:
    """Pooled samples with t > transient_cut, every thin-th record per path.

    Paths are pooled in path-id order, so the result does not depend on the
    input ordering.
    """
    if thin < 1:
        raise ConfigError(f"thin stride must be >= 1, got {thin}")
    if component not in ("u", "x", "t"):
        raise ConfigError(f"unknown component {component!r}")
    parts = []
    for tr in sorted(trajectories, key=lambda tr: tr.path_id):
        keep = tr.t > transient_cut
        arr = {"u": tr.u, "x": tr.x, "t": tr.t}[component]
        parts.append(arr[keep][::thin])
    pooled = np.concatenate(parts) if parts else np.empty(0)
    if pooled.size == 0:
        raise EmptyAfterCutError(
            f"no samples remain after t > {transient_cut}")
    return pooled


def qq_correlation(samples: np.ndarray) -> float:
    """Correlation of sorted standardized samples with normal quantiles.

    Plotting positions are (i - 0.5) / n.  Returns nan for degenerate
    samples.
    """
    samples = np.asarray(samples, dtype=float).ravel()
    n = samples.size
    if n < 3:
        return float("nan")
    s = float(np.std(samples))
    if s <= 1e-12 * max(1.0, abs(float(np.mean(samples)))):
        return float("nan")
    ordered = np.sort(samples)
    quantiles = norm.ppf((np.arange(1, n + 1) - 0.5) / n)
    return float(np.corrcoef(ordered, quantiles)[0, 1])


def phase_uniformity_ks(x_samples: np.ndarray, k_wp: float) -> float:
    """Kolmogorov-Smirnov distance of (k_wp x) mod 2 pi from uniform."""
    phases = np.sort(np.mod(k_wp * np.asarray(x_samples, dtype=float), 2.0 * math.pi))
    n = phases.size
    target = phases / (2.0 * math.pi)
    upper = np.arange(1, n + 1) / n - target
    lower = target - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def reduce_ensemble(trajectories, transient_cut: float, thin: int = 1,
                    k_wp: float | None = None,
                    u_bar: float | None = None) -> EnsembleStats:
    """Reduce an ensemble of trajectories to pooled statistics.

    Args:
        trajectories: iterable of Trajectory objects (any order).
        transient_cut: samples at t <= this are discarded (s).
        thin: keep every thin-th retained record per path.
        k_wp: representative wavenumber for the phase-uniformity test.
        u_bar: operating speed for the mean-speed ratio.

    Raises:
        EmptyAfterCutError: when nothing remains after the cut.
    """
    trajectories = list(trajectories)
    u = pool_samples(trajectories, transient_cut, thin=thin, component="u")
    n = u.size
    mean = float(np.mean(u))
    cent = u - mean
    var = float(np.mean(cent**2))
    std = math.sqrt(var)
    # roundoff from identical samples leaves a spread of order eps * |mean|
    degenerate = std <= 1e-12 * max(1.0, abs(mean))
    if degenerate:
        skew = 0.0
        kurt = 0.0
        qq = float("nan")
        edges = np.array([mean - 0.5, mean + 0.5])
        density = np.array([1.0])
    else:
        skew = float(np.mean(cent**3)) / std**3
        kurt = float(np.mean(cent**4)) / var**2 - 3.0
        qq = qq_correlation(u)
        edges = np.histogram_bin_edges(u, bins="fd")
        density, edges = np.histogram(u, bins=edges, density=True)
    if k_wp is not None:
        x = pool_samples(trajectories, transient_cut, thin=thin, component="x")
        ks = phase_uniformity_ks(x, k_wp)
    else:
        ks = float("nan")
    if u_bar is not None and u_bar != 0.0:
        ratio = float(np.mean(u_bar + u)) / u_bar
    else:
        ratio = float("nan")
    return EnsembleStats(n_paths=len(trajectories), n_samples=n, mean=mean,
                         std=std, skewness=skew, kurtosis_excess=kurt,
                         mean_speed_ratio=ratio, qq_correlation=qq,
                         ks_phase=ks, degenerate=degenerate,
                         hist_edges=edges, hist_density=density)


@dataclass(frozen=True)
class SweepPoint:
    """One Froude number of a sweep: operating point plus reduced stats."""

    fn: float
    u_bar: float
    n_p: float
    stats: EnsembleStats


@dataclass(frozen=True)
class SweepResult:
    """Reduced ensemble statistics over a grid of Froude numbers."""

    system: str
    seed: int
    n_paths: int
    d_squared: float
    points: tuple[SweepPoint, ...]

    @property
    def fn_values(self) -> np.ndarray:
        return np.array([pt.fn for pt in self.points])

    @property
    def std_curve(self) -> np.ndarray:
        """Ensemble standard deviation of u_S at each Froude number."""
        return np.array([pt.stats.std for pt in self.points])

    @property
    def fn_of_max_std(self) -> float:
        """Froude number where the velocity spread peaks."""
        return float(self.fn_values[int(np.argmax(self.std_curve))])


def _point_seed(master: np.random.SeedSequence, index: int,
                children) -> int:
    return int(children[index].generate_state(1, dtype=np.uint64)[0])


def run_sweep(p: ShipParams, spec: SeawaySpec, force_model: ForceAmplitudeModel,
              fn_values, system: str = "colored", n_paths: int = 16,
              transient: float = 100.0, retained: float = 600.0,
              dt: float | None = None, white_dt: float = 0.005,
              seed: int = 0, thin: int = 1, record_stride: int = 1,
              workers: int = 1) -> SweepResult:
    """Sweep the nominal Froude number and reduce an ensemble at each point.

    Each sweep point draws its realizations (or noise increments) from its
    own child of the master seed, so point results are independent of which
    other points are present.  The propeller rate at each point is solved
    for self-propulsion at the nominal speed.

    Args:
        p: ship constants.
        spec: seaway description; its rng_seed is superseded by seed.
        force_model: amplitude gain used to synthesize the force.
        fn_values: iterable of nominal Froude numbers.
        system: "colored", "approx" or "white".
        n_paths: ensemble width per point.
        transient: discarded initial span (s).
        retained: span kept for statistics (s).
        dt: integrator step for the colored/approx systems (band default).
        white_dt: integrator step for the white system (s).
        seed: master seed.
        thin: reduction stride over retained records.
        record_stride: integration-time thinning of stored records.
        workers: thread count for path chunks (does not affect results).
    """
    if system not in SWEEP_SYSTEMS:
        raise ConfigError(f"unknown system {system!r}; expected one of {SWEEP_SYSTEMS}")
    fn_values = [float(f) for f in fn_values]
    horizon = transient + retained
    master = np.random.SeedSequence(seed)
    children = master.spawn(len(fn_values))
    reference = synthesize(replace(spec, rng_seed=seed), force_model)
    noise = calibrate_noise(reference)
    ic = SurgeState()

    points = []
    for i, fn in enumerate(fn_values):
        op = solve_revs(p, p.speed_of_froude(fn))
        point_seed = _point_seed(master, i, children)
        if system == "white":
            trajs = simulate_white_ensemble(
                p, op, noise, reference.k_wp, ic, horizon, white_dt,
                seed=point_seed, n_paths=n_paths,
                record_stride=record_stride, workers=workers)
        else:
            realizations = synthesize_ensemble(
                replace(spec, rng_seed=point_seed), force_model, n_paths)
            simulate = (simulate_colored_ensemble if system == "colored"
                        else simulate_approx_ensemble)
            trajs = simulate(p, op, realizations, ic, horizon, dt=dt,
                             record_stride=record_stride, workers=workers)
        stats = reduce_ensemble(trajs, transient, thin=thin,
                                k_wp=reference.k_wp, u_bar=op.u_bar)
        points.append(SweepPoint(fn=fn, u_bar=op.u_bar, n_p=op.n_p, stats=stats))
    return SweepResult(system=system, seed=seed, n_paths=n_paths,
                       d_squared=noise.d_squared, points=tuple(points))
