"""Phase-plane queries: trajectory classes, a shooting oracle, Robin points, energies."""

import logging
from enum import Enum
from typing import Tuple

import numpy as np
from scipy import integrate, optimize

from errors import NumericalFailure
from nonlinearity import Nonlinearity
from nonlinearity.numerics import quad_checked, sqrt_endpoint_quad
from steady_states.profiles import ProfileKind, SteadyProfile

logger = logging.getLogger(__name__)

LEVEL_TOL = 1e-12


class TrajectoryClass(str, Enum):
    EQUILIBRIUM = "equilibrium"
    GROUND = "ground"
    ACTIVE = "active"
    COMPACT = "compact"
    PERIODIC = "periodic"
    UNBOUNDED = "unbounded"


def phase_plane_class(f: Nonlinearity, v0: float, p0: float) -> TrajectoryClass:
    """
    Class of the v'' + f(v) = 0 trajectory through (v0, p0), v0 >= 0, read off its
    level q = F(v0) - p0^2. Positive periodic orbits are reported, never tabulated.
    """
    if v0 < 0.0:
        raise ValueError("the phase plane is restricted to v >= 0")
    q = float(f.F(v0)) - p0 * p0
    scale = LEVEL_TOL * max(1.0, abs(f.F_one))
    if p0 == 0.0 and abs(float(f.f(v0))) <= LEVEL_TOL:
        return TrajectoryClass.EQUILIBRIUM
    if abs(q - f.F_one) <= scale:
        return TrajectoryClass.ACTIVE
    if v0 > 1.0:
        return TrajectoryClass.UNBOUNDED
    if abs(q) <= scale:
        return TrajectoryClass.GROUND
    if q > 0.0:
        return TrajectoryClass.PERIODIC
    if q > f.F_one:
        return TrajectoryClass.COMPACT
    return TrajectoryClass.UNBOUNDED


def shoot_ground_state(f: Nonlinearity, z_max: float, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Integrate V'' = -f(V) from (theta, 0) with DOP853 on [0, z_max]. The orbit leaves
    the separatrix at rate e^{lambda z}; this is a reference, not a builder.
    """
    z = np.linspace(0.0, z_max, n + 1)
    solution = integrate.solve_ivp(
        lambda _, y: [y[1], -float(f.f(y[0]))],
        (0.0, z_max), [f.theta, 0.0],
        method="DOP853", t_eval=z, rtol=1e-13, atol=1e-18,
    )
    if not solution.success:
        raise NumericalFailure(f"shooting failed: {solution.message}")
    return solution.t, solution.y[0], solution.y[1]


def bump_robin_point(bump: SteadyProfile, b: float) -> float:
    """The x'_m in [0, L_m] with v_m(x'_m) = b v_m'(x'_m); 0 when b = 0."""
    if bump.kind is not ProfileKind.COMPACT_BUMP:
        raise ValueError("bump_robin_point needs a compact bump")
    if b == 0.0:
        return 0.0
    residual = lambda x: float(bump(x) - b * bump.derivative(x))
    return float(optimize.brentq(residual, 0.0, bump.half_width, xtol=1e-14))


def shifted_ground_energy(f: Nonlinearity, s0: float, b: float, left_of_peak: bool = True) -> float:
    """
    E[V(. - z)] on the half-line with V(-z) = s0, using V'^2 = F(V):
    2 int sqrt(F) over the part of the orbit inside x >= 0, plus s0^2 / b.
    left_of_peak=True means z > 0 (the peak lies inside the domain).
    """
    root_F = lambda s: float(np.sqrt(max(float(f.F(s)), 0.0)))
    mid = 0.5 * f.theta
    whole = quad_checked(root_F, 0.0, mid) + sqrt_endpoint_quad(root_F, mid, f.theta)
    if s0 <= mid:
        below = quad_checked(root_F, 0.0, s0)
    else:
        below = quad_checked(root_F, 0.0, mid) + quad_checked(root_F, mid, s0)
    inside = whole + (whole - below) if left_of_peak else below
    boundary = s0 * s0 / b if b > 0.0 else 0.0
    return 2.0 * inside + boundary
