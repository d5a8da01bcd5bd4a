"""The three irregular-sea surge systems and their shared plumbing.

Colored system: full superposition force evaluated at the instantaneous
ship position (the ground truth).  Approximate system: every component
wavenumber collapsed to the representative k_WP, splitting the force into
two position-free quadrature processes.  White system: those processes
replaced by independent Gaussian white noises of calibrated intensity,
integrated in the Ito sense, which is valid because the Wong-Zakai drift
correction vanishes identically for this diffusion structure.

Ensembles run path-per-stream: path i uses child i of a SeedSequence, and
paths are simulated in fixed-size chunks so results never depend on the
degree of parallelism.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BlowUpError, ConfigError, NonFiniteIncrementError
from .seaway import WaveRealization
from .ship import AlphaCoeffs, OperatingPoint, ShipParams, compute_alphas, drift_force
from .state import SurgeState, Trajectory

__all__ = [
    "NoiseIntensity",
    "SdeCoeffs",
    "simulate_colored",
    "simulate_approx",
    "simulate_white",
    "simulate_colored_ensemble",
    "simulate_approx_ensemble",
    "simulate_white_ensemble",
    "calibrate_noise",
    "wong_zakai_correction",
    "wong_zakai_fd",
]

#: steps per shortest synthesized period required of the colored/approx integrators
MIN_STEPS_PER_COMPONENT_PERIOD = 20

#: fixed chunk width for ensemble simulation; independent of worker count so
#: that outputs are bit-identical under any parallelism degree
ENSEMBLE_CHUNK = 8


@dataclass(frozen=True)
class NoiseIntensity:
    """White-noise intensities for the two quadrature forcings.

    Attributes:
        d1: intensity of the cosine-channel noise (N sqrt(s)).
        d2: intensity of the sine-channel noise (N sqrt(s)).
        method: calibration method recorded for output metadata.
    """

    d1: float
    d2: float
    method: str = ""

    def __post_init__(self):
        if self.d1 < 0 or self.d2 < 0:
            raise ConfigError("noise intensities must be non-negative")

    @property
    def d_squared(self) -> float:
        """Total intensity D^2 = D1^2 + D2^2 (N^2 s)."""
        return self.d1 * self.d1 + self.d2 * self.d2


@dataclass(frozen=True)
class SdeCoeffs:
    """Drift and diffusion of the white-noise surge SDE.

    State ordering is (x_S, u_S).  The diffusion matrix has a zero first
    row; the second row is (D1 cos(k_wp x), -D2 sin(k_wp x)) / (m + m_x),
    so its squared norm reproduces the diffusion coefficient
    (D1^2 cos^2 + D2^2 sin^2) / (m + m_x)^2 of the reduced equation.
    """

    alpha: AlphaCoeffs
    mass_total: float
    u_bar: float
    noise: NoiseIntensity
    k_wp: float

    def drift(self, t: float, state: np.ndarray) -> np.ndarray:
        """Drift vector mu(t, x) at the given state (t unused; autonomous)."""
        x, u = state
        return np.array([self.u_bar + u,
                         -drift_force(self.alpha, u) / self.mass_total])

    def sigma(self, state: np.ndarray) -> np.ndarray:
        """Diffusion matrix at the given state."""
        x = state[0]
        m = self.mass_total
        return np.array([
            [0.0, 0.0],
            [self.noise.d1 * math.cos(self.k_wp * x) / m,
             -self.noise.d2 * math.sin(self.k_wp * x) / m],
        ])

    def sigma_jac(self, state: np.ndarray) -> np.ndarray:
        """Analytic partials d sigma_ij / d x_k, indexed [i, j, k]."""
        x = state[0]
        m = self.mass_total
        jac = np.zeros((2, 2, 2))
        jac[1, 0, 0] = -self.noise.d1 * self.k_wp * math.sin(self.k_wp * x) / m
        jac[1, 1, 0] = -self.noise.d2 * self.k_wp * math.cos(self.k_wp * x) / m
        return jac


def wong_zakai_correction(sigma: np.ndarray, sigma_jac: np.ndarray) -> np.ndarray:
    """Drift correction mu_i = 1/2 sum_jk sigma_kj d(sigma_ij)/d(x_k).

    Args:
        sigma: diffusion matrix at a state, shape (n, m).
        sigma_jac: its partials d sigma_ij / d x_k, shape (n, m, n).

    Returns:
        The correction vector, shape (n,).

    For the surge diffusion this vanishes identically: the first row of
    sigma is zero, and the only nonzero partials are with respect to x_1,
    which contract against that zero row.
    """
    return 0.5 * np.einsum("kj,ijk->i", sigma, sigma_jac)


def wong_zakai_fd(sigma_fn, state: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Finite-difference evaluation of the Wong-Zakai correction.

    Central differences of an arbitrary sigma(state) callable; serves as an
    independent cross-check of the analytic contraction.
    """
    state = np.asarray(state, dtype=float)
    n = state.size
    sig = np.asarray(sigma_fn(state), dtype=float)
    jac = np.zeros(sig.shape + (n,))
    for k in range(n):
        dpos = state.copy(); dpos[k] += h
        dneg = state.copy(); dneg[k] -= h
        jac[:, :, k] = (np.asarray(sigma_fn(dpos)) - np.asarray(sigma_fn(dneg))) / (2.0 * h)
    return wong_zakai_correction(sig, jac)


def calibrate_noise(realization: WaveRealization, method: str = "spectral",
                    omega_ref: float | None = None,
                    bandwidth: float | None = None) -> NoiseIntensity:
    """Set the white-noise intensity from a synthesized realization.

    spectral (default): D^2 = 2 pi S_F(omega_ref) where S_F(omega_i) =
    F_i^2 / (2 d_omega) is the one-sided force spectral density and
    omega_ref defaults to the spectral peak (nearest component bin).

    variance: D^2 = pi * sum_i F_i^2 / bandwidth, matching total force
    variance spread over the given bandwidth (defaults to the synthesized
    band width).

    Either way the intensity is split evenly, D1 = D2 = D / sqrt(2), which
    makes the velocity diffusion position-independent.

    Raises:
        ConfigError: for an unknown method or an empty realization.
    """
    if realization.omega.size == 0:
        raise ConfigError("cannot calibrate noise from an empty realization")
    if method == "spectral":
        ref = realization.omega_wp if omega_ref is None else float(omega_ref)
        i = int(np.argmin(np.abs(realization.omega - ref)))
        s_f = realization.force[i] ** 2 / (2.0 * realization.d_omega)
        d_squared = 2.0 * math.pi * s_f
    elif method == "variance":
        if bandwidth is None:
            bandwidth = realization.d_omega * realization.omega.size
        if bandwidth <= 0:
            raise ConfigError(f"bandwidth must be positive, got {bandwidth}")
        d_squared = math.pi * float(np.sum(realization.force**2)) / bandwidth
    else:
        raise ConfigError(f"unknown calibration method {method!r}")
    d = math.sqrt(d_squared / 2.0)
    return NoiseIntensity(d1=d, d2=d, method=method)


def _check_component_dt(dt: float, omega_hi: float) -> None:
    shortest = 2.0 * math.pi / omega_hi
    if dt * MIN_STEPS_PER_COMPONENT_PERIOD > shortest:
        raise ConfigError(
            f"dt = {dt} too coarse: need >= {MIN_STEPS_PER_COMPONENT_PERIOD} steps "
            f"per shortest component period {shortest:.4g} s")


def _default_component_dt(omega_hi: float) -> float:
    return 2.0 * math.pi / omega_hi / 24.0


def _stack_realizations(realizations) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, float]:
    """Validate a shared frequency grid and stack per-path phase arrays."""
    first = realizations[0]
    for r in realizations[1:]:
        if not (np.array_equal(r.omega, first.omega)
                and np.array_equal(r.force, first.force)):
            raise ConfigError("ensemble realizations must share one component grid")
    phases = np.stack([r.phase for r in realizations])
    return first.omega, first.k, first.force, phases, first.k_wp


def _celerity(realization: WaveRealization) -> float:
    return math.sqrt(realization.gravity / realization.k_wp)


def _guard(u: np.ndarray, limit: float, t: float) -> None:
    if not np.all(np.isfinite(u)) or np.any(np.abs(u) > limit):
        raise BlowUpError(
            f"velocity perturbation exceeded {limit:.3g} m/s at t = {t:.4g} s")


def _colored_core(alpha, mass, u_bar, omega, k, force, phases,
                  x0, u0, dt, n_steps, record_stride, blowup_limit):
    """RK4 over an ensemble chunk under the full superposition force."""
    x = np.array(x0, dtype=float, copy=True)
    u = np.array(u0, dtype=float, copy=True)

    def rhs(t, x, u):
        ph = omega * t - k * x[:, None] + phases
        f = np.sin(ph) @ force
        return u_bar + u, (-drift_force(alpha, u) + f) / mass

    rec_t = [0.0]; rec_x = [x.copy()]; rec_u = [u.copy()]
    t = 0.0
    for i in range(n_steps):
        k1x, k1u = rhs(t, x, u)
        k2x, k2u = rhs(t + 0.5 * dt, x + 0.5 * dt * k1x, u + 0.5 * dt * k1u)
        k3x, k3u = rhs(t + 0.5 * dt, x + 0.5 * dt * k2x, u + 0.5 * dt * k2u)
        k4x, k4u = rhs(t + dt, x + dt * k3x, u + dt * k3u)
        x = x + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        u = u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        t = (i + 1) * dt
        if (i + 1) % 64 == 0 or i + 1 == n_steps:
            _guard(u, blowup_limit, t)
        if (i + 1) % record_stride == 0:
            rec_t.append(t); rec_x.append(x.copy()); rec_u.append(u.copy())
    return np.array(rec_t), np.array(rec_x), np.array(rec_u)


def _split_series_blocked(omega, force, phases, tgrid, block=8192):
    """(n_paths, n_times) quadrature series with bounded temporaries."""
    n_paths = phases.shape[0]
    fws = np.empty((n_paths, tgrid.size))
    fwc = np.empty((n_paths, tgrid.size))
    for p in range(n_paths):
        for start in range(0, tgrid.size, block):
            seg = tgrid[start:start + block]
            ph = np.outer(seg, omega) + phases[p]
            fws[p, start:start + block] = np.sin(ph) @ force
            fwc[p, start:start + block] = np.cos(ph) @ force
    return fws, fwc


def _approx_core(alpha, mass, u_bar, omega, force, phases, k_wp,
                 x0, u0, dt, n_steps, record_stride, blowup_limit):
    """RK4 over an ensemble chunk with the representative-wavenumber force.

    The quadrature processes are precomputed on the half-step grid, so the
    four stages read them by index.
    """
    half_grid = np.arange(2 * n_steps + 1) * (0.5 * dt)
    fws, fwc = _split_series_blocked(omega, force, phases, half_grid)
    x = np.array(x0, dtype=float, copy=True)
    u = np.array(u0, dtype=float, copy=True)

    def rhs(j, x, u):
        f = np.cos(k_wp * x) * fws[:, j] - np.sin(k_wp * x) * fwc[:, j]
        return u_bar + u, (-drift_force(alpha, u) + f) / mass

    rec_t = [0.0]; rec_x = [x.copy()]; rec_u = [u.copy()]
    for i in range(n_steps):
        j = 2 * i
        k1x, k1u = rhs(j, x, u)
        k2x, k2u = rhs(j + 1, x + 0.5 * dt * k1x, u + 0.5 * dt * k1u)
        k3x, k3u = rhs(j + 1, x + 0.5 * dt * k2x, u + 0.5 * dt * k2u)
        k4x, k4u = rhs(j + 2, x + dt * k3x, u + dt * k3u)
        x = x + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        u = u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        t = (i + 1) * dt
        if (i + 1) % 64 == 0 or i + 1 == n_steps:
            _guard(u, blowup_limit, t)
        if (i + 1) % record_stride == 0:
            rec_t.append(t); rec_x.append(x.copy()); rec_u.append(u.copy())
    return np.array(rec_t), np.array(rec_x), np.array(rec_u)


def _run_chunked(worker, n_paths: int, workers: int = 1):
    """Run ensemble chunks of fixed width, optionally on a thread pool.

    The chunk layout depends only on n_paths, so any worker count yields
    identical per-path results.
    """
    chunks = [(start, min(start + ENSEMBLE_CHUNK, n_paths))
              for start in range(0, n_paths, ENSEMBLE_CHUNK)]
    if workers <= 1 or len(chunks) == 1:
        results = [worker(a, b) for a, b in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda ab: worker(*ab), chunks))
    out = []
    for res in results:
        out.extend(res)
    return out


def simulate_colored(p: ShipParams, op: OperatingPoint,
                     realization: WaveRealization, ic: SurgeState,
                     horizon: float, dt: float | None = None,
                     record_stride: int = 1,
                     blowup_factor: float = 5.0) -> Trajectory:
    """Integrate one path under the full superposition force.

    Fixed-step RK4 on (x_S, u_S) with the force evaluated at the moving
    ship position; the step must resolve the highest synthesized frequency.

    Raises:
        ConfigError: if dt is too coarse for the band.
        BlowUpError: if |u_S| exceeds blowup_factor times the celerity of
            the representative wave.
    """
    [traj] = simulate_colored_ensemble(p, op, [realization], ic, horizon,
                                       dt=dt, record_stride=record_stride,
                                       blowup_factor=blowup_factor)
    return traj


def simulate_colored_ensemble(p: ShipParams, op: OperatingPoint,
                              realizations, ic: SurgeState, horizon: float,
                              dt: float | None = None, record_stride: int = 1,
                              blowup_factor: float = 5.0,
                              workers: int = 1) -> list[Trajectory]:
    """Integrate independent paths, one seaway realization each."""
    omega, k, force, phases, k_wp = _stack_realizations(realizations)
    if dt is None:
        dt = _default_component_dt(omega[-1])
    _check_component_dt(dt, omega[-1])
    n_steps = int(round(horizon / dt))
    alpha = compute_alphas(p, op)
    limit = blowup_factor * _celerity(realizations[0])

    def worker(a, b):
        x0 = np.full(b - a, float(ic.x))
        u0 = np.full(b - a, float(ic.u))
        t, x, u = _colored_core(alpha, p.total_mass, op.u_bar, omega, k, force,
                                phases[a:b], x0, u0, dt, n_steps,
                                record_stride, limit)
        return [Trajectory(t, x[:, i], u[:, i], dt=dt, path_id=a + i)
                for i in range(b - a)]

    return _run_chunked(worker, len(realizations))


def simulate_approx(p: ShipParams, op: OperatingPoint,
                    realization: WaveRealization, ic: SurgeState,
                    horizon: float, dt: float | None = None,
                    record_stride: int = 1,
                    blowup_factor: float = 5.0) -> Trajectory:
    """Integrate one path with all wavenumbers collapsed to k_WP.

    The force becomes cos(k_WP x) F_Ws(t) - sin(k_WP x) F_Wc(t) with the
    two quadrature processes precomputed from the realization.
    """
    [traj] = simulate_approx_ensemble(p, op, [realization], ic, horizon,
                                      dt=dt, record_stride=record_stride,
                                      blowup_factor=blowup_factor)
    return traj


def simulate_approx_ensemble(p: ShipParams, op: OperatingPoint,
                             realizations, ic: SurgeState, horizon: float,
                             dt: float | None = None, record_stride: int = 1,
                             blowup_factor: float = 5.0,
                             workers: int = 1) -> list[Trajectory]:
    """Integrate independent representative-wavenumber paths."""
    omega, _, force, phases, k_wp = _stack_realizations(realizations)
    if dt is None:
        dt = _default_component_dt(omega[-1])
    _check_component_dt(dt, omega[-1])
    n_steps = int(round(horizon / dt))
    alpha = compute_alphas(p, op)
    limit = blowup_factor * _celerity(realizations[0])

    def worker(a, b):
        x0 = np.full(b - a, float(ic.x))
        u0 = np.full(b - a, float(ic.u))
        t, x, u = _approx_core(alpha, p.total_mass, op.u_bar, omega, force,
                               phases[a:b], k_wp, x0, u0, dt, n_steps,
                               record_stride, limit)
        return [Trajectory(t, x[:, i], u[:, i], dt=dt, path_id=a + i)
                for i in range(b - a)]

    return _run_chunked(worker, len(realizations))


def _white_core(alpha, mass, u_bar, noise: NoiseIntensity, k_wp,
                x0, u0, dt, n_steps, record_stride, blowup_limit,
                increments):
    """Euler-Maruyama over an ensemble chunk, Ito interpretation.

    increments has shape (n_paths, 2, n_steps) and already carries the
    sqrt(dt) scaling.
    """
    x = np.array(x0, dtype=float, copy=True)
    u = np.array(u0, dtype=float, copy=True)
    rec_t = [0.0]; rec_x = [x.copy()]; rec_u = [u.copy()]
    d1, d2 = noise.d1, noise.d2
    for i in range(n_steps):
        dw1 = increments[:, 0, i]
        dw2 = increments[:, 1, i]
        kick = (d1 * np.cos(k_wp * x) * dw1 - d2 * np.sin(k_wp * x) * dw2) / mass
        x = x + (u_bar + u) * dt
        u = u + (-drift_force(alpha, u) / mass) * dt + kick
        if (i + 1) % 256 == 0 or i + 1 == n_steps:
            t = (i + 1) * dt
            _guard(u, blowup_limit, t)
        if (i + 1) % record_stride == 0:
            rec_t.append((i + 1) * dt); rec_x.append(x.copy()); rec_u.append(u.copy())
    return np.array(rec_t), np.array(rec_x), np.array(rec_u)


def simulate_white(p: ShipParams, op: OperatingPoint, noise: NoiseIntensity,
                   k_wp: float, ic: SurgeState, horizon: float, dt: float,
                   seed: int = 0, record_stride: int = 1,
                   blowup_limit: float | None = None,
                   increments: np.ndarray | None = None) -> Trajectory:
    """Integrate one path of the white-noise SDE.

    Euler-Maruyama in the Ito sense (the Wong-Zakai correction of this
    diffusion is identically zero).  The step must satisfy the stability
    guard dt * alpha_1 / (m + m_x) < 0.1.

    Args:
        p: ship constants.
        op: operating point.
        noise: calibrated intensities.
        k_wp: representative wavenumber (1/m).
        ic: initial state.
        horizon: integration span (s).
        dt: step (s).
        seed: stream seed (ignored when increments are supplied).
        record_stride: keep every record_stride-th step.
        blowup_limit: |u_S| divergence guard (m/s); default 50 sigma of the
            linearized response or 10 m/s, whichever is larger.
        increments: optional pre-drawn Wiener increments, shape
            (2, n_steps), already scaled by sqrt(dt); lets callers bridge
            refinements of one Brownian path.

    Raises:
        ConfigError: if the stability guard fails.
        NonFiniteIncrementError: if any supplied or drawn increment is not
            finite.
        BlowUpError: on divergence.
    """
    alpha = compute_alphas(p, op)
    _check_white_dt(dt, alpha, p.total_mass)
    n_steps = int(round(horizon / dt))
    if increments is None:
        rng = np.random.default_rng(seed)
        increments = rng.standard_normal((2, n_steps)) * math.sqrt(dt)
    else:
        increments = np.asarray(increments, dtype=float)
        if increments.shape != (2, n_steps):
            raise ConfigError(
                f"increments must have shape (2, {n_steps}), got {increments.shape}")
    if not np.all(np.isfinite(increments)):
        raise NonFiniteIncrementError("non-finite Wiener increment")
    if blowup_limit is None:
        blowup_limit = _default_white_guard(alpha, p.total_mass, noise)
    t, x, u = _white_core(alpha, p.total_mass, op.u_bar, noise, k_wp,
                          np.array([ic.x]), np.array([ic.u]), dt, n_steps,
                          record_stride, blowup_limit,
                          increments[None, :, :])
    return Trajectory(t, x[:, 0], u[:, 0], dt=dt)


def simulate_white_ensemble(p: ShipParams, op: OperatingPoint,
                            noise: NoiseIntensity, k_wp: float,
                            ic: SurgeState, horizon: float, dt: float,
                            seed: int, n_paths: int, record_stride: int = 1,
                            blowup_limit: float | None = None,
                            workers: int = 1) -> list[Trajectory]:
    """Integrate independent white-noise paths from split seed streams.

    Path i draws its increments from child i of SeedSequence(seed), drawn
    path-by-path, so results are independent of chunking and worker count.
    """
    alpha = compute_alphas(p, op)
    _check_white_dt(dt, alpha, p.total_mass)
    n_steps = int(round(horizon / dt))
    if blowup_limit is None:
        limit = _default_white_guard(alpha, p.total_mass, noise)
    else:
        limit = blowup_limit
    children = np.random.SeedSequence(seed).spawn(n_paths)
    sqdt = math.sqrt(dt)

    def worker(a, b):
        incs = np.stack([
            np.random.default_rng(children[i]).standard_normal((2, n_steps)) * sqdt
            for i in range(a, b)])
        if not np.all(np.isfinite(incs)):
            raise NonFiniteIncrementError("non-finite Wiener increment")
        x0 = np.full(b - a, float(ic.x))
        u0 = np.full(b - a, float(ic.u))
        t, x, u = _white_core(alpha, p.total_mass, op.u_bar, noise, k_wp,
                              x0, u0, dt, n_steps, record_stride, limit, incs)
        return [Trajectory(t, x[:, i], u[:, i], dt=dt, path_id=a + i)
                for i in range(b - a)]

    return _run_chunked(worker, n_paths, workers=workers)


def _check_white_dt(dt: float, alpha: AlphaCoeffs, mass: float) -> None:
    if dt * alpha[0] / mass >= 0.1:
        raise ConfigError(
            f"dt = {dt} violates the stability guard dt * alpha_1 / (m + m_x) < 0.1")


def _default_white_guard(alpha: AlphaCoeffs, mass: float,
                         noise: NoiseIntensity) -> float:
    if alpha[0] > 0 and noise.d_squared > 0:
        sigma_lin = math.sqrt(noise.d_squared / (4.0 * mass * alpha[0]))
        return max(10.0, 50.0 * sigma_lin)
    return 10.0
