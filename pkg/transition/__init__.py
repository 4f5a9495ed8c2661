"""Pulse tracking, the approximate center manifold and the logarithmic drift law."""

from transition.experiment import (
    ReducedComparison,
    ShiftRegimeReport,
    TransitionResult,
    compare_with_reduced_ode,
    run_transition_experiment,
    shift_regime_report,
)
from transition.fitting import LogLawFit, WindowTooShort, fit_log_law
from transition.manifold import (
    DecayFit,
    EnergySlope,
    ManifoldProfile,
    NegativeProfile,
    build_manifold_profile,
    manifold_coefficient,
    manifold_datum,
    manifold_energy_slope,
    manifold_remainder,
    remainder_decay_fit,
)
from transition.pulse import PulseLost, PulseTracker, PulseTrajectory, locate_pulse, pulse_band, track_pulse
from transition.reduced import (
    ReducedODEResult,
    RegimeMismatch,
    closed_form,
    closed_form_residual,
    drift_law,
    reduced_ode,
)

__all__ = [
    "DecayFit",
    "EnergySlope",
    "LogLawFit",
    "ManifoldProfile",
    "NegativeProfile",
    "PulseLost",
    "PulseTracker",
    "PulseTrajectory",
    "ReducedComparison",
    "ReducedODEResult",
    "RegimeMismatch",
    "ShiftRegimeReport",
    "TransitionResult",
    "WindowTooShort",
    "build_manifold_profile",
    "closed_form",
    "closed_form_residual",
    "compare_with_reduced_ode",
    "drift_law",
    "fit_log_law",
    "locate_pulse",
    "manifold_coefficient",
    "manifold_datum",
    "manifold_energy_slope",
    "manifold_remainder",
    "pulse_band",
    "reduced_ode",
    "remainder_decay_fit",
    "run_transition_experiment",
    "shift_regime_report",
    "track_pulse",
]
