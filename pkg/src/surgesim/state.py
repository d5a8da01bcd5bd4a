"""State containers shared by the deterministic and stochastic integrators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SurgeState:
    """Earth-fixed surge position and velocity perturbation at one instant.

    Attributes:
        x: position x_S (m).
        u: velocity perturbation u_S from the calm-water speed (m/s).
        t: time stamp (s).
    """

    x: float = 0.0
    u: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.u) and np.isfinite(self.t)):
            raise ValueError("SurgeState fields must be finite")


@dataclass(frozen=True)
class Trajectory:
    """Sampled output of one simulated path.

    The arrays hold samples at a fixed recording stride of the integrator
    grid; ``t[0]`` is the initial condition. ``u`` stores the velocity
    perturbation u_S, not the total speed.

    Attributes:
        t: sample times (s), strictly increasing.
        x: positions x_S (m).
        u: velocity perturbations u_S (m/s).
        dt: integrator step (s) behind the samples.
        path_id: index of the path inside an ensemble (0 for single runs).
    """

    t: np.ndarray
    x: np.ndarray
    u: np.ndarray
    dt: float
    path_id: int = 0

    def __post_init__(self):
        for name in ("t", "x", "u"):
            arr = getattr(self, name)
            object.__setattr__(self, name, np.asarray(arr, dtype=float))
        if not (self.t.shape == self.x.shape == self.u.shape):
            raise ValueError("trajectory arrays must share one shape")

    def __len__(self) -> int:
        return self.t.size

    def after(self, t_cut: float) -> "Trajectory":
        """Return the sub-trajectory with t > t_cut."""
        keep = self.t > t_cut
        return Trajectory(self.t[keep], self.x[keep], self.u[keep],
                          dt=self.dt, path_id=self.path_id)
