"""Nonlinear ship surge in following seas.

Deterministic surf-riding analysis in regular waves, stochastic surge in
irregular seas through a chain of simplifying systems (full superposition
force, representative-wavenumber force, white-noise limit), and the
closed-form stationary density of the surge velocity perturbation.
"""

__version__ = "0.1.0"

from .errors import (AmbiguousRootWarning, BlowUpError, ConfigError,
                     DomainError, EmptyAfterCutError,
                     InsufficientSamplesError, NoRootError,
                     NonFiniteIncrementError, NoTransitionError,
                     NotNormalizableError, SurgeSimError)
from .state import SurgeState, Trajectory
from .ship import (AlphaCoeffs, OperatingPoint, ShipParams, compute_alphas,
                   drift_force, load_ship_params, resistance, solve_equilibrium,
                   solve_revs, thrust)
from .seaway import (BandCoverageWarning, ConstantGain, ForceAmplitudeModel,
                     GainTable, SeawaySpec, WaveRealization, peak_frequency,
                     spectrum_density, split_force, split_force_series,
                     synthesize, synthesize_ensemble, wave_elevation,
                     wave_force)
from .regular import (PhasePortrait, RegularWave, ThresholdResult, classify,
                      equivalent_regular_wave, find_thresholds,
                      simulate_regular, standard_grid)
from .stochastic import (NoiseIntensity, SdeCoeffs, calibrate_noise,
                         simulate_approx, simulate_approx_ensemble,
                         simulate_colored, simulate_colored_ensemble,
                         simulate_white, simulate_white_ensemble,
                         wong_zakai_correction, wong_zakai_fd)
from .fpk import (ComparisonResult, StationaryPdf, compare_to_empirical,
                  flux_residual, period_average_diffusion, stationary_pdf)
from .stats import (EnsembleStats, SweepPoint, SweepResult, phase_uniformity_ks,
                    pool_samples, qq_correlation, reduce_ensemble, run_sweep)
from .config import CampaignConfig, load_campaign

__all__ = [
    "__version__",
    "SurgeSimError", "ConfigError", "DomainError", "NoRootError",
    "NoTransitionError", "BlowUpError", "NonFiniteIncrementError",
    "NotNormalizableError", "InsufficientSamplesError", "EmptyAfterCutError",
    "AmbiguousRootWarning", "BandCoverageWarning",
    "SurgeState", "Trajectory",
    "ShipParams", "OperatingPoint", "AlphaCoeffs",
    "resistance", "thrust", "solve_equilibrium", "solve_revs",
    "compute_alphas", "drift_force", "load_ship_params",
    "SeawaySpec", "WaveRealization", "ForceAmplitudeModel",
    "ConstantGain", "GainTable", "spectrum_density", "peak_frequency",
    "synthesize", "synthesize_ensemble", "wave_elevation", "wave_force",
    "split_force", "split_force_series",
    "RegularWave", "PhasePortrait", "ThresholdResult",
    "simulate_regular", "classify", "standard_grid", "find_thresholds",
    "equivalent_regular_wave",
    "NoiseIntensity", "SdeCoeffs", "calibrate_noise",
    "simulate_colored", "simulate_approx", "simulate_white",
    "simulate_colored_ensemble", "simulate_approx_ensemble",
    "simulate_white_ensemble", "wong_zakai_correction", "wong_zakai_fd",
    "StationaryPdf", "ComparisonResult", "stationary_pdf",
    "period_average_diffusion", "compare_to_empirical", "flux_residual",
    "EnsembleStats", "SweepPoint", "SweepResult", "reduce_ensemble",
    "pool_samples", "qq_correlation", "phase_uniformity_ks", "run_sweep",
    "CampaignConfig", "load_campaign",
]
