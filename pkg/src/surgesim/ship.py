"""Hull and propulsion model: resistance/thrust curves, calm-water
equilibrium, and the polynomial drift coefficients of the velocity
perturbation equation.

The drift reduction expands thrust-minus-resistance about the calm-water
equilibrium speed, producing five coefficients alpha_1..alpha_5 such that

    R(u_bar + e) - T(u_bar + e, n_P) = sum_i alpha_i e^i

for every perturbation e.  All downstream simulators and the stationary
density work with these coefficients.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import AmbiguousRootWarning, ConfigError, NoRootError

__all__ = [
    "ShipParams",
    "OperatingPoint",
    "AlphaCoeffs",
    "resistance",
    "thrust",
    "solve_equilibrium",
    "solve_revs",
    "compute_alphas",
    "drift_force",
    "load_ship_params",
    "SHIP_FILE_KEYS",
]

#: balance tolerance, relative to the local thrust scale
TOL_BALANCE = 1e-8


@dataclass(frozen=True)
class ShipParams:
    """Hull and propulsion constants, SI units throughout.

    Attributes:
        length: ship length L_S (m).
        mass: ship mass m (kg).
        added_mass: surge added mass m_x (kg).
        resistance_coeffs: (r1..r5), quintic resistance polynomial (N per
            (m/s)^i, no constant term).
        thrust_deduction: t_P (dimensionless, in [0, 1)).
        wake_fraction: w_P (dimensionless, in [0, 1)).
        prop_diameter: propeller diameter D_P (m).
        kt_coeffs: (kt0, kt1, kt2) of the quadratic thrust-coefficient fit
            K_T(J) = kt2 J^2 + kt1 J + kt0.
        water_density: rho (kg/m^3).
        gravity: g (m/s^2).
        u_max: upper edge of the declared operating speed range (m/s);
            defaults to 2*sqrt(L_S g), i.e. Froude number 2.
    """

    length: float
    mass: float
    added_mass: float
    resistance_coeffs: tuple[float, float, float, float, float]
    thrust_deduction: float
    wake_fraction: float
    prop_diameter: float
    kt_coeffs: tuple[float, float, float]
    water_density: float = 1000.0
    gravity: float = 9.81
    u_max: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "resistance_coeffs",
                           tuple(float(c) for c in self.resistance_coeffs))
        object.__setattr__(self, "kt_coeffs",
                           tuple(float(c) for c in self.kt_coeffs))
        if len(self.resistance_coeffs) != 5:
            raise ConfigError("resistance_coeffs must have exactly 5 entries")
        if len(self.kt_coeffs) != 3:
            raise ConfigError("kt_coeffs must have exactly 3 entries")
        if self.length <= 0:
            raise ConfigError(f"length must be positive, got {self.length}")
        if self.mass <= 0:
            raise ConfigError(f"mass must be positive, got {self.mass}")
        if self.mass + self.added_mass <= 0:
            raise ConfigError("total mass m + m_x must be positive")
        if self.prop_diameter <= 0:
            raise ConfigError(f"prop_diameter must be positive, got {self.prop_diameter}")
        if self.water_density <= 0:
            raise ConfigError(f"water_density must be positive, got {self.water_density}")
        if self.gravity <= 0:
            raise ConfigError(f"gravity must be positive, got {self.gravity}")
        if not 0.0 <= self.thrust_deduction < 1.0:
            raise ConfigError(f"thrust_deduction must lie in [0, 1), got {self.thrust_deduction}")
        if not 0.0 <= self.wake_fraction < 1.0:
            raise ConfigError(f"wake_fraction must lie in [0, 1), got {self.wake_fraction}")
        if self.u_max <= 0.0:
            object.__setattr__(self, "u_max", 2.0 * math.sqrt(self.length * self.gravity))
        # resistance must stay positive over the declared range; sampled check
        us = np.linspace(1e-6, self.u_max, 512)
        if np.any(resistance(self, us) <= 0.0):
            raise ConfigError("resistance is not positive over (0, u_max]")

    @property
    def total_mass(self) -> float:
        """m + m_x (kg)."""
        return self.mass + self.added_mass

    def froude(self, u: float) -> float:
        """Froude number of speed u (m/s)."""
        return u / math.sqrt(self.length * self.gravity)

    def speed_of_froude(self, fn: float) -> float:
        """Speed (m/s) of Froude number fn."""
        return fn * math.sqrt(self.length * self.gravity)


@dataclass(frozen=True)
class OperatingPoint:
    """A calm-water equilibrium: propeller revolutions and balanced speed.

    Attributes:
        n_p: propeller revolutions (1/s).
        u_bar: calm-water equilibrium speed (m/s).
        fn_bar: Froude number of u_bar.
    """

    n_p: float
    u_bar: float
    fn_bar: float

    def validate(self, p: ShipParams) -> None:
        """Check Froude consistency and the thrust-resistance balance.

        Raises:
            ConfigError: if either invariant fails.
        """
        fn = p.froude(self.u_bar)
        if abs(fn - self.fn_bar) > 1e-12 * max(1.0, abs(fn)):
            raise ConfigError(
                f"fn_bar {self.fn_bar} inconsistent with u_bar {self.u_bar}")
        residual = thrust(p, self.u_bar, self.n_p) - resistance(p, self.u_bar)
        scale = max(1.0, abs(thrust(p, self.u_bar, self.n_p)))
        if abs(residual) > TOL_BALANCE * scale:
            raise ConfigError(
                f"thrust-resistance residual {residual:.3e} N exceeds tolerance")


@dataclass(frozen=True)
class AlphaCoeffs:
    """Drift coefficients alpha_1..alpha_5 multiplying u_S^i."""

    alpha: tuple[float, float, float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        if len(self.alpha) != 5:
            raise ConfigError("alpha must have exactly 5 entries")

    def __iter__(self):
        return iter(self.alpha)

    def __getitem__(self, i: int) -> float:
        return self.alpha[i]


def resistance(p: ShipParams, u):
    """Quintic hull resistance, sum_i r_i u^i for i = 1..5 (N).

    Accepts scalars or arrays.  The polynomial has no constant term, so
    resistance(0) is exactly 0.
    """
    r1, r2, r3, r4, r5 = p.resistance_coeffs
    u = np.asarray(u, dtype=float)
    out = u * (r1 + u * (r2 + u * (r3 + u * (r4 + u * r5))))
    return out if out.ndim else float(out)


def thrust(p: ShipParams, u, n_p: float):
    """Propeller thrust (1 - t_P) rho n_P^2 D_P^4 K_T(J_T) (N).

    The advance ratio is J_T = (1 - w_P) u / (n_P D_P) and K_T is the
    quadratic fit kt2 J^2 + kt1 J + kt0.

    Args:
        p: ship constants.
        u: ship speed (m/s), scalar or array.
        n_p: propeller revolutions (1/s); must be nonzero.

    Raises:
        ZeroDivisionError: if n_p == 0 (advance ratio undefined).
    """
    if n_p == 0.0:
        raise ZeroDivisionError("advance ratio undefined for n_p = 0")
    kt0, kt1, kt2 = p.kt_coeffs
    u = np.asarray(u, dtype=float)
    j = (1.0 - p.wake_fraction) * u / (n_p * p.prop_diameter)
    kt = kt2 * j * j + kt1 * j + kt0
    out = (1.0 - p.thrust_deduction) * p.water_density * n_p**2 * p.prop_diameter**4 * kt
    return out if out.ndim else float(out)


def _balance(p: ShipParams, u, n_p: float):
    return thrust(p, u, n_p) - resistance(p, u)


def solve_equilibrium(p: ShipParams, n_p: float, scan_points: int = 2048) -> OperatingPoint:
    """Find the calm-water speed where thrust balances resistance.

    Scans the bracket [0, u_max] for sign changes of T - R, refines each
    with a bracketed root solver, and returns the smallest crossing.

    Args:
        p: ship constants.
        n_p: propeller revolutions (1/s).
        scan_points: samples of the dense sign-change scan.

    Returns:
        The operating point at the balanced speed.

    Raises:
        NoRootError: if T - R never changes sign on [0, u_max].

    Warns:
        AmbiguousRootWarning: if more than one crossing exists; the warning
            carries all refined roots and the smallest is returned.
    """
    if _balance(p, 0.0, n_p) <= 0.0:
        raise NoRootError(
            f"net thrust at rest is not positive for n_p = {n_p}; no crossing")
    us = np.linspace(0.0, p.u_max, scan_points)
    vals = _balance(p, us, n_p)
    sign_flips = np.nonzero(np.diff(np.signbit(vals)))[0]
    if sign_flips.size == 0:
        raise NoRootError(
            f"no thrust-resistance crossing on [0, {p.u_max:.3f}] for n_p = {n_p}")
    roots = [brentq(lambda u: _balance(p, u, n_p), us[i], us[i + 1],
                    xtol=1e-13, rtol=1e-15) for i in sign_flips]
    if len(roots) > 1:
        warnings.warn(AmbiguousRootWarning(
            f"{len(roots)} balance crossings at n_p = {n_p}: {roots}; "
            "returning the smallest", tuple(roots)))
    u_bar = min(roots)
    return OperatingPoint(n_p=n_p, u_bar=u_bar, fn_bar=p.froude(u_bar))


def solve_revs(p: ShipParams, u_bar: float) -> OperatingPoint:
    """Find propeller revolutions that balance the ship at a target speed.

    The balance residual is quadratic in n_P because K_T is quadratic in
    the advance ratio, so the crossing is solved in closed form and the
    positive root is returned.

    Args:
        p: ship constants.
        u_bar: target calm-water speed (m/s), must be positive.

    Returns:
        The operating point with n_p filled in.

    Raises:
        NoRootError: if no positive revolutions balance the ship.
    """
    if u_bar <= 0.0:
        raise NoRootError(f"target speed must be positive, got {u_bar}")
    kt0, kt1, kt2 = p.kt_coeffs
    c = (1.0 - p.thrust_deduction) * p.water_density
    d = p.prop_diameter
    w1 = 1.0 - p.wake_fraction
    # T(u, n) - R(u) = a2 n^2 + a1 n + a0
    a2 = c * d**4 * kt0
    a1 = c * d**3 * kt1 * w1 * u_bar
    a0 = c * d**2 * kt2 * (w1 * u_bar) ** 2 - resistance(p, u_bar)
    candidates = []
    if a2 == 0.0:
        if a1 != 0.0:
            candidates.append(-a0 / a1)
    else:
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc >= 0.0:
            sq = math.sqrt(disc)
            candidates.extend([(-a1 + sq) / (2.0 * a2), (-a1 - sq) / (2.0 * a2)])
    positive = sorted(n for n in candidates if n > 0.0)
    if not positive:
        raise NoRootError(f"no positive revolutions balance u_bar = {u_bar}")
    n_p = positive[0]
    return OperatingPoint(n_p=n_p, u_bar=u_bar, fn_bar=p.froude(u_bar))


def compute_alphas(p: ShipParams, op: OperatingPoint) -> AlphaCoeffs:
    """Expand thrust-minus-resistance about the operating point.

    Returns the coefficients alpha_1..alpha_5 of the velocity perturbation
    drift.  alpha_1 and alpha_2 carry the thrust-curve contributions through
    the kt_1, kt_2 coefficients; alpha_3..alpha_5 come from the resistance
    polynomial alone and alpha_5 equals r_5 exactly.
    """
    r1, r2, r3, r4, r5 = p.resistance_coeffs
    kt0, kt1, kt2 = p.kt_coeffs
    u = op.u_bar
    c = (1.0 - p.thrust_deduction) * p.water_density
    w1 = 1.0 - p.wake_fraction
    d = p.prop_diameter
    a1 = (r1 + 2.0 * r2 * u + 3.0 * r3 * u**2 + 4.0 * r4 * u**3 + 5.0 * r5 * u**4
          - 2.0 * u * kt2 * c * w1**2 * d**2
          - kt1 * c * w1 * op.n_p * d**3)
    a2 = (r2 + 3.0 * r3 * u + 6.0 * r4 * u**2 + 10.0 * r5 * u**3
          - kt2 * c * w1**2 * d**2)
    a3 = r3 + 4.0 * r4 * u + 10.0 * r5 * u**2
    a4 = r4 + 5.0 * r5 * u
    a5 = r5
    return AlphaCoeffs((a1, a2, a3, a4, a5))


def drift_force(alpha: AlphaCoeffs, u):
    """Polynomial drift sum_i alpha_i u^i (N); exactly 0 at u = 0."""
    a1, a2, a3, a4, a5 = alpha.alpha
    u = np.asarray(u, dtype=float)
    out = u * (a1 + u * (a2 + u * (a3 + u * (a4 + u * a5))))
    return out if out.ndim else float(out)


#: recognized ship-file keys and whether each is required
SHIP_FILE_KEYS = {
    "length": True,
    "mass": True,
    "added_mass": True,
    "r1": True,
    "r2": True,
    "r3": True,
    "r4": True,
    "r5": True,
    "thrust_deduction": True,
    "wake_fraction": True,
    "prop_diameter": True,
    "kt0": True,
    "kt1": True,
    "kt2": True,
    "water_density": False,
    "gravity": False,
    "u_max": False,
}


def load_ship_params(path) -> ShipParams:
    """Load ship constants from a flat key = value text file.

    Blank lines and '#' comments are ignored.  Unknown keys, duplicate
    keys, malformed lines, and missing required keys are rejected with the
    offending line number in the message.

    Args:
        path: file path (str or PathLike).

    Returns:
        The validated ship constants.

    Raises:
        ConfigError: on any schema violation.
    """
    values: dict[str, float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, _, text = line.partition("=")
            key = key.strip()
            if key not in SHIP_FILE_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
            try:
                values[key] = float(text.strip())
            except ValueError:
                raise ConfigError(
                    f"{path}:{lineno}: value for {key!r} is not a number: {text.strip()!r}"
                ) from None
    missing = [k for k, required in SHIP_FILE_KEYS.items() if required and k not in values]
    if missing:
        raise ConfigError(f"{path}: missing required keys: {', '.join(missing)}")
    return ShipParams(
        length=values["length"],
        mass=values["mass"],
        added_mass=values["added_mass"],
        resistance_coeffs=(values["r1"], values["r2"], values["r3"],
                           values["r4"], values["r5"]),
        thrust_deduction=values["thrust_deduction"],
        wake_fraction=values["wake_fraction"],
        prop_diameter=values["prop_diameter"],
        kt_coeffs=(values["kt0"], values["kt1"], values["kt2"]),
        water_density=values.get("water_density", 1000.0),
        gravity=values.get("gravity", 9.81),
        u_max=values.get("u_max", 0.0),
    )
