"""Shift sets: where shifted ground / active states satisfy u(0) = b u_x(0)."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np

from constants import ROOT_SCAN_POINTS
from errors import ValidationError
from nonlinearity import Nonlinearity, ground_shift_roots
from nonlinearity.numerics import scan_roots
from steady_states.profiles import ProfileKind, SteadyProfile, ground_arc

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftSets:
    """Z_ground(b) as (s0, z) pairs with V(-z) = s0, and Z_active(b) as z <= 0."""

    b: float
    ground: Tuple[Tuple[float, float], ...]
    active: Tuple[float, ...]
    scan_points: int

    @property
    def ground_shifts(self) -> List[float]:
        return [z for _, z in self.ground]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "b": self.b,
            "ground": [{"s0": s0, "z": z} for s0, z in self.ground],
            "active": list(self.active),
            "scan_points": self.scan_points,
        }


def ground_shift_positions(f: Nonlinearity, roots, extent: float) -> List[float]:
    """z = int_{s0}^theta ds / sqrt(F(s)) for every root s0."""
    if not len(roots):
        return []
    reach = max(extent, float(np.max(np.abs(np.log(roots)))) / f.lam)
    return ground_arc(f, reach).position(np.asarray(roots)).tolist()


def active_shifts(vstar: SteadyProfile, b: float) -> Tuple[float, ...]:
    """All z = -x with v_*(x) = b v_*'(x) on (0, x_max]; {0} when b = 0."""
    if b == 0.0:
        return (0.0,)
    residual = lambda x: vstar(x) - b * vstar.derivative(x)
    roots = scan_roots(residual, vstar.grid[1:])
    if not roots:
        raise ValidationError(
            f"no active shift on (0, {vstar.grid[-1]:.6g}] for b={b}; build v_* on a longer interval"
        )
    return tuple(sorted(-x for x in roots))


def find_shift_sets(
    f: Nonlinearity,
    V: SteadyProfile,
    vstar: SteadyProfile,
    b: float,
    scan_points: int = ROOT_SCAN_POINTS,
) -> ShiftSets:
    if b < 0.0:
        raise ValueError(f"b must be >= 0, got {b}")
    if V.kind is not ProfileKind.GROUND or vstar.kind is not ProfileKind.ACTIVE:
        raise ValueError("find_shift_sets needs a ground profile and an active profile")
    roots = ground_shift_roots(f, b, scan_points)
    positions = ground_shift_positions(f, roots, V.grid[-1])
    ground = tuple(zip(roots, positions))
    active = active_shifts(vstar, b)
    logger.info("b=%.6g: %d ground shift(s), %d active shift(s)", b, len(ground), len(active))
    return ShiftSets(b=float(b), ground=ground, active=active, scan_points=scan_points)


def shift_residual(profile: SteadyProfile, z: float, b: float) -> float:
    """|v(-z) - b v'(-z)| for the shifted profile v(. - z) at x = 0."""
    return float(abs(profile(-z) - b * profile.derivative(-z)))
