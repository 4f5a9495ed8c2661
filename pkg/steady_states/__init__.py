"""Bounded nonnegative steady states by phase-plane quadrature, and their shift sets."""

from steady_states.arc import EnergyLevel, InversionFailure, PhasePlaneArc
from steady_states.phase_plane import (
    TrajectoryClass,
    bump_robin_point,
    phase_plane_class,
    shifted_ground_energy,
    shoot_ground_state,
)
from steady_states.profiles import (
    InvalidM,
    ProfileKind,
    ProfileTail,
    SteadyProfile,
    build_active_state,
    build_compact_bump,
    build_ground_state,
    half_width,
)
from steady_states.shifts import ShiftSets, find_shift_sets, shift_residual

__all__ = [
    "EnergyLevel",
    "InvalidM",
    "InversionFailure",
    "PhasePlaneArc",
    "ProfileKind",
    "ProfileTail",
    "ShiftSets",
    "SteadyProfile",
    "TrajectoryClass",
    "build_active_state",
    "build_compact_bump",
    "build_ground_state",
    "bump_robin_point",
    "find_shift_sets",
    "half_width",
    "phase_plane_class",
    "shift_residual",
    "shifted_ground_energy",
    "shoot_ground_state",
]
