"""Regular-wave surge dynamics: trajectory integration, capture/surging
classification in wave-fixed coordinates, and bisection for the lower
(surf-riding) and upper (wave-blocking) speed thresholds.

In the wave frame xi = k (x_S - c t) the dynamics are autonomous: a
trajectory either settles onto an equilibrium travelling at celerity
("Captured") or keeps slipping through wave phases ("Periodic").  The two
Froude numbers where the captured outcome appears and disappears bound the
surf-riding band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BlowUpError, ConfigError, NoTransitionError
from .seaway import SeawaySpec, peak_frequency
from .ship import (AlphaCoeffs, OperatingPoint, ShipParams, compute_alphas,
                   drift_force, solve_revs)
from .state import SurgeState, Trajectory

__all__ = [
    "RegularWave",
    "PhasePortrait",
    "ThresholdResult",
    "simulate_regular",
    "classify",
    "standard_grid",
    "find_thresholds",
    "equivalent_regular_wave",
    "LABEL_CAPTURED",
    "LABEL_PERIODIC",
    "LABEL_UNDECIDED",
]

LABEL_CAPTURED = "Captured"
LABEL_PERIODIC = "Periodic"
LABEL_UNDECIDED = "Undecided"

#: minimum integrator resolution, steps per encounter (or wave) period
MIN_STEPS_PER_PERIOD = 50


@dataclass(frozen=True)
class RegularWave:
    """A single deep-water wave component acting on the hull.

    Attributes:
        wavelength: lambda (m).
        steepness: wave steepness H/lambda, capped at steepness_cap.
        force_amp: surge force amplitude F_W (N).
        gravity: g (m/s^2).
        steepness_cap: physical steepness limit (configurable).
    """

    wavelength: float
    steepness: float
    force_amp: float
    gravity: float = 9.81
    steepness_cap: float = 0.1

    def __post_init__(self):
        if self.wavelength <= 0:
            raise ConfigError(f"wavelength must be positive, got {self.wavelength}")
        if not 0.0 < self.steepness < self.steepness_cap:
            raise ConfigError(
                f"steepness must lie in (0, {self.steepness_cap}), got {self.steepness}")
        if self.force_amp < 0:
            raise ConfigError(f"force_amp must be non-negative, got {self.force_amp}")

    @property
    def wavenumber(self) -> float:
        """k = 2 pi / lambda (1/m)."""
        return 2.0 * math.pi / self.wavelength

    @property
    def celerity(self) -> float:
        """Deep-water celerity sqrt(g lambda / 2 pi) (m/s)."""
        return math.sqrt(self.gravity * self.wavelength / (2.0 * math.pi))

    @property
    def frequency(self) -> float:
        """omega = k c (rad/s)."""
        return self.wavenumber * self.celerity

    @property
    def period(self) -> float:
        """Wave period 2 pi / omega (s)."""
        return 2.0 * math.pi / self.frequency

    def encounter_period(self, u: float) -> float:
        """Encounter period at ship speed u; infinite at celerity."""
        w_e = abs(self.frequency - self.wavenumber * u)
        return math.inf if w_e == 0.0 else 2.0 * math.pi / w_e


@dataclass(frozen=True)
class PhasePortrait:
    """Classified trajectory fan from a grid of initial conditions.

    Attributes:
        ics: the initial conditions, one per trajectory.
        labels: outcome per trajectory (Captured / Periodic / Undecided).
        paths: per-trajectory sampled (t, xi, u_S) arrays in wave-fixed
            coordinates, decimated for storage; empty when path storage
            was disabled.
        fn_bar: Froude number of the operating point.
        wave: the forcing wave.
    """

    ics: tuple
    labels: tuple
    paths: tuple
    fn_bar: float
    wave: RegularWave

    def count(self, label: str) -> int:
        """Number of trajectories with the given label."""
        return sum(1 for l in self.labels if l == label)


@dataclass(frozen=True)
class ThresholdResult:
    """Bisected band edges with bracket diagnostics.

    Attributes:
        fn_lwr: lower threshold (capture appears), None if absent in range.
        fn_ups: upper threshold (capture disappears), None if absent.
        bracket_lwr: final (lo, hi) bracket of the lower threshold.
        bracket_ups: final (lo, hi) bracket of the upper threshold.
        iterations_lwr: bisection steps spent on the lower edge.
        iterations_ups: bisection steps spent on the upper edge.
    """

    fn_lwr: float | None
    fn_ups: float | None
    bracket_lwr: tuple | None
    bracket_ups: tuple | None
    iterations_lwr: int
    iterations_ups: int

    def __post_init__(self):
        if self.fn_lwr is not None and self.fn_ups is not None:
            if not self.fn_lwr < self.fn_ups:
                raise ConfigError("thresholds must satisfy fn_lwr < fn_ups")


def _default_dt(wave: RegularWave, u_bar: float) -> float:
    period = min(wave.period, wave.encounter_period(u_bar))
    return period / (2.0 * MIN_STEPS_PER_PERIOD)


def _check_dt(dt: float, wave: RegularWave, u_bar: float) -> None:
    period = min(wave.period, wave.encounter_period(u_bar))
    if dt * MIN_STEPS_PER_PERIOD > period:
        raise ConfigError(
            f"dt = {dt} too coarse: need >= {MIN_STEPS_PER_PERIOD} steps per "
            f"period {period:.4g} s")


def _rk4_regular(alpha: AlphaCoeffs, mass: float, u_bar: float,
                 wave: RegularWave, x0: np.ndarray, u0: np.ndarray,
                 dt: float, n_steps: int, blowup_limit: float,
                 record_stride: int = 0, window_start: int | None = None,
                 phase0: float = 0.0):
    """Vectorized RK4 core for the regular-wave system.

    Integrates dx = u_bar + u, du = (-drift(u) + F sin(w t - k x + phase0))/M
    for a fan of initial states.  Optionally records decimated full paths
    and, from window_start on, the trailing-window history used by the
    classifier.

    Returns (t_rec, x_rec, u_rec, win_t, win_x, win_u) where the rec arrays
    are empty unless record_stride > 0 and the win arrays are empty unless
    window_start is given.
    """
    fw, w, k = wave.force_amp, wave.frequency, wave.wavenumber
    x = np.array(x0, dtype=float, copy=True)
    u = np.array(u0, dtype=float, copy=True)

    def rhs(t, x, u):
        force = fw * np.sin(w * t - k * x + phase0)
        du = (-drift_force(alpha, u) + force) / mass
        return u_bar + u, du

    rec_t, rec_x, rec_u = [], [], []
    win_t, win_x, win_u = [], [], []
    if record_stride:
        rec_t.append(0.0); rec_x.append(x.copy()); rec_u.append(u.copy())
    t = 0.0
    for i in range(n_steps):
        k1x, k1u = rhs(t, x, u)
        k2x, k2u = rhs(t + 0.5 * dt, x + 0.5 * dt * k1x, u + 0.5 * dt * k1u)
        k3x, k3u = rhs(t + 0.5 * dt, x + 0.5 * dt * k2x, u + 0.5 * dt * k2u)
        k4x, k4u = rhs(t + dt, x + dt * k3x, u + dt * k3u)
        x = x + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        u = u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        t = (i + 1) * dt
        if not np.all(np.isfinite(u)) or np.any(np.abs(u) > blowup_limit):
            raise BlowUpError(
                f"velocity perturbation exceeded {blowup_limit:.3g} m/s at t = {t:.3g} s")
        if record_stride and (i + 1) % record_stride == 0:
            rec_t.append(t); rec_x.append(x.copy()); rec_u.append(u.copy())
        if window_start is not None and i >= window_start:
            win_t.append(t); win_x.append(x.copy()); win_u.append(u.copy())
    return (np.array(rec_t), np.array(rec_x), np.array(rec_u),
            np.array(win_t), np.array(win_x), np.array(win_u))


def simulate_regular(p: ShipParams, op: OperatingPoint, wave: RegularWave,
                     ic: SurgeState, horizon: float, dt: float | None = None,
                     record_stride: int = 1, blowup_factor: float = 5.0,
                     phase0: float = 0.0) -> Trajectory:
    """Integrate one trajectory under a single regular wave.

    Fixed-step explicit fourth-order Runge-Kutta on the earth-fixed state
    (x_S, u_S); the step must resolve both the wave period and the
    encounter period.

    Args:
        p: ship constants.
        op: operating point (sets u_bar and the drift coefficients).
        wave: the forcing wave.
        ic: initial state.
        horizon: integration span (s).
        dt: step (s); defaults to 1/100 of the limiting period.
        record_stride: keep every record_stride-th step in the output.
        blowup_factor: divergence guard in multiples of celerity.
        phase0: phase offset of the forcing.

    Returns:
        The sampled trajectory.

    Raises:
        BlowUpError: if |u_S| exceeds blowup_factor * celerity.
        ConfigError: if dt is too coarse for the encounter period.
    """
    if horizon <= 0:
        raise ConfigError(f"horizon must be positive, got {horizon}")
    if dt is None:
        dt = _default_dt(wave, op.u_bar)
    _check_dt(dt, wave, op.u_bar)
    n_steps = int(round(horizon / dt))
    alpha = compute_alphas(p, op)
    t_rec, x_rec, u_rec, *_ = _rk4_regular(
        alpha, p.total_mass, op.u_bar, wave,
        np.array([ic.x]), np.array([ic.u]), dt, n_steps,
        blowup_limit=blowup_factor * wave.celerity,
        record_stride=record_stride, phase0=phase0)
    return Trajectory(t_rec + ic.t, x_rec[:, 0], u_rec[:, 0], dt=dt)


def classify(p: ShipParams, op: OperatingPoint, wave: RegularWave,
             grid, horizon: float | None = None, dt: float | None = None,
             v_tol_factor: float = 0.02, settle_periods: float = 20.0,
             store_paths: bool = True, path_samples: int = 1024,
             blowup_factor: float = 5.0) -> PhasePortrait:
    """Label a fan of initial conditions as Captured, Periodic, or Undecided.

    Captured: the relative velocity stays inside |u_total - c| <
    v_tol_factor * c throughout the trailing settle window.  Periodic: the
    wave-frame phase xi = k (x - c t) advances monotonically by more than
    4 pi over that window.  Anything else is Undecided and reported as such.

    Args:
        p: ship constants.
        op: operating point.
        wave: the forcing wave.
        grid: iterable of SurgeState initial conditions.
        horizon: integration span (s); defaults to 200 wave periods.
        dt: step (s); defaults to 1/100 of the limiting period.
        v_tol_factor: capture tube half-width as a fraction of celerity.
        settle_periods: trailing window length in wave periods.
        store_paths: keep decimated wave-frame paths for plotting/export.
        path_samples: target number of stored samples per path.
        blowup_factor: divergence guard in multiples of celerity.

    Returns:
        The classified portrait.
    """
    ics = tuple(grid)
    if not ics:
        raise ConfigError("classification grid must be non-empty")
    if horizon is None:
        horizon = 200.0 * wave.period
    if dt is None:
        dt = _default_dt(wave, op.u_bar)
    _check_dt(dt, wave, op.u_bar)
    n_steps = int(round(horizon / dt))
    n_window = min(n_steps, int(round(settle_periods * wave.period / dt)))
    stride = max(1, n_steps // path_samples) if store_paths else 0

    alpha = compute_alphas(p, op)
    c, k = wave.celerity, wave.wavenumber
    x0 = np.array([s.x for s in ics], dtype=float)
    u0 = np.array([s.u for s in ics], dtype=float)
    t_rec, x_rec, u_rec, win_t, win_x, win_u = _rk4_regular(
        alpha, p.total_mass, op.u_bar, wave, x0, u0, dt, n_steps,
        blowup_limit=blowup_factor * c, record_stride=stride,
        window_start=n_steps - n_window)

    rel = op.u_bar + win_u - c                       # (window, n_ic)
    xi = k * (win_x - c * win_t[:, None])
    captured = np.max(np.abs(rel), axis=0) < v_tol_factor * c
    dxi = np.diff(xi, axis=0)
    monotone = np.all(dxi >= 0.0, axis=0) | np.all(dxi <= 0.0, axis=0)
    advanced = np.abs(xi[-1] - xi[0]) > 4.0 * math.pi
    labels = tuple(
        LABEL_CAPTURED if captured[i]
        else LABEL_PERIODIC if (monotone[i] and advanced[i])
        else LABEL_UNDECIDED
        for i in range(len(ics)))

    paths = ()
    if store_paths:
        xi_rec = k * (x_rec - c * t_rec[:, None])
        paths = tuple((t_rec, xi_rec[:, i], u_rec[:, i]) for i in range(len(ics)))
    return PhasePortrait(ics=ics, labels=labels, paths=paths,
                         fn_bar=op.fn_bar, wave=wave)


def standard_grid(wave: RegularWave, n_ic: int):
    """Fan of initial conditions spread over one wavelength at u_S = 0."""
    return [SurgeState(x=wave.wavelength * i / n_ic, u=0.0) for i in range(n_ic)]


def find_thresholds(p: ShipParams, wave: RegularWave,
                    fn_range: tuple[float, float], tol: float = 2e-3,
                    n_ic: int = 8, scan_points: int = 11,
                    horizon_periods: float = 300.0,
                    settle_periods: float = 20.0) -> ThresholdResult:
    """Bisect the Froude numbers where wave capture appears and disappears.

    The indicator is "any trajectory of the standard initial-condition fan
    is Captured".  Scanning fn_range localizes the lower (off -> on) and
    upper (on -> off) change points, then bisection narrows each bracket
    to the requested tolerance.  A threshold whose change point lies
    outside fn_range is reported as None.

    Args:
        p: ship constants.
        wave: the forcing wave.
        fn_range: (lo, hi) Froude-number search range.
        tol: maximum bracket width of each returned threshold.
        n_ic: size of the standard initial-condition fan.
        scan_points: coarse scan resolution before bisection.
        horizon_periods: classification horizon in wave periods.
        settle_periods: trailing settle window in wave periods.

    Returns:
        Thresholds with final brackets and iteration counts.

    Raises:
        NoTransitionError: if the indicator never changes over fn_range.
    """
    lo, hi = fn_range
    if not lo < hi:
        raise ConfigError(f"fn_range must satisfy lo < hi, got {fn_range}")
    grid = standard_grid(wave, n_ic)
    horizon = horizon_periods * wave.period

    def any_captured(fn: float) -> bool:
        op = solve_revs(p, p.speed_of_froude(fn))
        portrait = classify(p, op, wave, grid, horizon=horizon,
                            settle_periods=settle_periods, store_paths=False)
        return portrait.count(LABEL_CAPTURED) > 0

    fns = np.linspace(lo, hi, scan_points)
    flags = [any_captured(fn) for fn in fns]
    if not any(flags) or all(flags):
        raise NoTransitionError(
            f"capture indicator is constant ({flags[0]}) over {fn_range}")

    def bisect(a: float, fa: bool, b: float, fb: bool):
        it = 0
        while b - a > tol:
            mid = 0.5 * (a + b)
            if any_captured(mid) == fa:
                a = mid
            else:
                b = mid
            it += 1
        return float(0.5 * (a + b)), (float(a), float(b)), it

    on = [i for i, f in enumerate(flags) if f]
    first_on, last_on = on[0], on[-1]

    fn_lwr = bracket_lwr = None
    it_lwr = 0
    if first_on > 0:
        fn_lwr, bracket_lwr, it_lwr = bisect(
            fns[first_on - 1], False, fns[first_on], True)
    fn_ups = bracket_ups = None
    it_ups = 0
    if last_on < len(fns) - 1:
        fn_ups, bracket_ups, it_ups = bisect(
            fns[last_on], True, fns[last_on + 1], False)
    return ThresholdResult(fn_lwr=fn_lwr, fn_ups=fn_ups,
                           bracket_lwr=bracket_lwr, bracket_ups=bracket_ups,
                           iterations_lwr=it_lwr, iterations_ups=it_ups)


def equivalent_regular_wave(spec: SeawaySpec, force_model,
                            steepness_cap: float = 0.1) -> RegularWave:
    """Regular wave standing in for a seaway in deterministic studies.

    Uses the wavelength of the spectral peak and the significant amplitude
    H_1/3 / 2; the force amplitude comes from the same gain model that
    scales the irregular components, so deterministic thresholds and
    irregular campaigns share one forcing convention.
    """
    w_wp = peak_frequency(spec)
    k_wp = w_wp**2 / spec.gravity
    wavelength = 2.0 * math.pi / k_wp
    amp = spec.h13 / 2.0
    force = float(np.asarray(force_model(np.array([w_wp]), np.array([amp])))[0])
    return RegularWave(wavelength=wavelength, steepness=2.0 * amp / wavelength,
                       force_amp=force, gravity=spec.gravity,
                       steepness_cap=steepness_cap)
