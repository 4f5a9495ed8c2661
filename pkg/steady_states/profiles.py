"""Ground state V, active state v_* and compact bumps v_m, tabulated on uniform grids."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from constants import ACTIVE_TAIL_GAP, MAX_GROUND_SPACING
from errors import ValidationError
from nonlinearity import Nonlinearity, compute_constants
from steady_states.arc import (
    EnergyLevel,
    PhasePlaneArc,
    approach_piece,
    decay_piece,
    linear_piece,
    turning_piece,
)

logger = logging.getLogger(__name__)

# Extra decay (in units of 1/lambda) the ground arc carries past z_max.
GROUND_ARC_MARGIN = 20.0
MIN_GROUND_EXTENT = 5.0


class InvalidM(ValidationError):
    """Compact bump level m outside the admissible range."""
    pass


class ProfileKind(str, Enum):
    GROUND = "Ground"
    ACTIVE = "Active"
    COMPACT_BUMP = "CompactBump"


@dataclass(frozen=True)
class ProfileTail:
    """
    Behaviour beyond the tabulated grid.

    Ground: V(z) = amplitude e^{-rate |z|} - correction e^{-order rate |z|}.
    Active: v(x) = 1 - amplitude e^{-rate x}.
    CompactBump: v = 0 beyond support_end.
    """

    amplitude: float = 0.0
    rate: float = 0.0
    correction: float = 0.0
    order: int = 0
    support_end: Optional[float] = None


@dataclass(frozen=True, eq=False)
class SteadyProfile:
    kind: ProfileKind
    grid: np.ndarray
    values: np.ndarray
    slopes: np.ndarray
    tail: ProfileTail
    energy_level: EnergyLevel = field(repr=False)
    half_width: Optional[float] = None
    m: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "_spline", CubicHermiteSpline(self.grid, self.values, self.slopes))

    @property
    def f(self) -> Nonlinearity:
        return self.energy_level.f

    @property
    def level(self) -> float:
        """q in v'^2 = F(v) - q."""
        return self.energy_level.level

    @property
    def dx(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.asarray(self._spline(np.clip(x, self.grid[0], self.grid[-1])), dtype=float)
        tail = self.tail
        if self.kind is ProfileKind.GROUND:
            r = np.abs(x)
            far = tail.amplitude * np.exp(-tail.rate * r) - tail.correction * np.exp(-tail.order * tail.rate * r)
            out = np.where(r > self.grid[-1], far, out)
        elif self.kind is ProfileKind.ACTIVE:
            beyond = x > self.grid[-1]
            out = np.where(beyond, 1.0 - tail.amplitude * np.exp(-tail.rate * np.maximum(x, 0.0)), out)
            out = np.where(x < 0.0, 0.0, out)
        else:
            out = np.where((x < 0.0) | (x > tail.support_end), 0.0, out)
        return out

    def derivative(self, x) -> np.ndarray:
        """v' taken from the first integral, signed by the side of the peak."""
        x = np.asarray(x, dtype=float)
        v = self(x)
        size = self.energy_level.slope(np.minimum(v, self.energy_level.top))
        tail = self.tail
        if self.kind is ProfileKind.GROUND:
            out = -np.sign(x) * size
            outside = np.abs(x) > self.grid[-1]
            if np.any(outside):
                r = np.abs(x)
                far = -np.sign(x) * (
                    tail.rate * tail.amplitude * np.exp(-tail.rate * r)
                    - tail.order * tail.rate * tail.correction * np.exp(-tail.order * tail.rate * r)
                )
                out = np.where(outside, far, out)
            return out
        if self.kind is ProfileKind.ACTIVE:
            beyond = x > self.grid[-1]
            far = tail.rate * tail.amplitude * np.exp(-tail.rate * np.maximum(x, 0.0))
            out = np.where(beyond, far, size)
            return np.where(x < 0.0, 0.0, out)
        inside = (x >= 0.0) & (x <= tail.support_end)
        return np.where(inside, np.sign(self.half_width - x) * size, 0.0)

    def residual(self) -> float:
        """max |v'' + f(v)| with v'' from centered second differences on the grid."""
        v = self.values
        second = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / self.dx ** 2
        return float(np.max(np.abs(second + self.f.f(v[1:-1]))))

    def first_integral_error(self) -> float:
        """max |v'^2 - (F(v) - q)| over interior nodes."""
        v, p = self.values[1:-1], self.slopes[1:-1]
        return float(np.max(np.abs(p * p - (self.f.F(v) - self.level))))

    def to_rows(self) -> List[Tuple[float, float, float]]:
        return list(zip(self.grid.tolist(), self.values.tolist(), self.slopes.tolist()))


# ==================== Builders ====================

def ground_arc(f: Nonlinearity, extent: float) -> PhasePlaneArc:
    """|z| = int_{V(z)}^theta ds / sqrt(F(s)), carried past z = extent."""
    level = EnergyLevel(f, f.theta, level=0.0)
    q_max = f.lam * extent + abs(np.log(f.theta)) + GROUND_ARC_MARGIN
    return PhasePlaneArc([
        turning_piece(level, 0.5 * f.theta),
        decay_piece(level, 0.5 * f.theta, q_max),
    ])


def build_ground_state(f: Nonlinearity, z_max: float, n: Optional[int] = None) -> SteadyProfile:
    """
    Even ground state V with V(0) = theta on [-z_max, z_max], n intervals per side.
    Spacing is tightened to MAX_GROUND_SPACING / lambda if n is too small.
    """
    if z_max < MIN_GROUND_EXTENT / f.lam:
        raise ValidationError(f"z_max must be >= {MIN_GROUND_EXTENT}/lambda = {MIN_GROUND_EXTENT / f.lam:.6g}")
    needed = int(np.ceil(z_max * f.lam / MAX_GROUND_SPACING))
    if n is None or n < needed:
        if n is not None:
            logger.debug("ground grid raised from %d to %d intervals", n, needed)
        n = needed

    arc = ground_arc(f, z_max)
    half = np.linspace(0.0, z_max, n + 1)
    v_half = arc.invert(half)
    v_half[0] = f.theta
    level = EnergyLevel(f, f.theta, level=0.0)
    p_half = -level.slope(v_half)
    p_half[0] = 0.0

    grid = np.concatenate([-half[:0:-1], half])
    values = np.concatenate([v_half[:0:-1], v_half])
    slopes = np.concatenate([-p_half[:0:-1], p_half])

    constants = compute_constants(f)
    correction, order = 0.0, 0
    if constants.H_k is not None:
        correction, order = constants.H_k, constants.k_order
    tail = ProfileTail(amplitude=constants.A, rate=f.lam, correction=correction, order=order)
    logger.info("ground state built: z_max=%.6g n=%d A=%.12g", z_max, n, constants.A)
    return SteadyProfile(ProfileKind.GROUND, grid, values, slopes, tail, level)


def build_active_state(f: Nonlinearity, x_max: float, n: int) -> SteadyProfile:
    """Increasing v_* with v_*(0) = 0, v_* -> 1, on [0, x_max] with n intervals."""
    if not f.F_one < 0.0:
        raise ValidationError("active state needs F(1) < 0")
    level = EnergyLevel(f, 1.0)
    arc = PhasePlaneArc([
        linear_piece(level, 0.0, 0.5),
        approach_piece(level, 0.5, -np.log(ACTIVE_TAIL_GAP)),
    ])
    mu = float(np.sqrt(-f.fp(1.0)))
    amplitude = ACTIVE_TAIL_GAP * np.exp(mu * arc.length)

    grid = np.linspace(0.0, x_max, n + 1)
    on_arc = grid <= arc.length
    values = np.empty_like(grid)
    values[on_arc] = arc.invert(grid[on_arc])
    values[~on_arc] = 1.0 - amplitude * np.exp(-mu * grid[~on_arc])
    values[0] = 0.0
    slopes = level.slope(values)

    tail = ProfileTail(amplitude=amplitude, rate=mu)
    logger.info("active state built: x_max=%.6g n=%d, arc reaches 1 - %.1e at x=%.6g", x_max, n, ACTIVE_TAIL_GAP, arc.length)
    return SteadyProfile(ProfileKind.ACTIVE, grid, values, slopes, tail, level)


def _check_m(f: Nonlinearity, m: float) -> None:
    if not f.theta < m < 1.0:
        raise InvalidM(f"compact bump needs m in (theta, 1) = ({f.theta:.6g}, 1), got {m}")


def bump_arc(f: Nonlinearity, m: float) -> PhasePlaneArc:
    """x(v) = int_0^v ds / sqrt(F(s) - F(m)) on [0, m]; its length is L_m."""
    _check_m(f, m)
    level = EnergyLevel(f, m)
    return PhasePlaneArc([
        linear_piece(level, 0.0, 0.5 * m),
        turning_piece(level, 0.5 * m, reverse=True),
    ])


def half_width(f: Nonlinearity, m: float) -> float:
    """L_m = int_0^m ds / sqrt(F(s) - F(m))."""
    return bump_arc(f, m).length


def build_compact_bump(f: Nonlinearity, m: float, n: int) -> SteadyProfile:
    """v_m on [0, 2 L_m] with peak m at L_m, n intervals per half, zero outside."""
    arc = bump_arc(f, m)
    L = arc.length
    half = np.linspace(0.0, L, n + 1)
    v_half = arc.invert(half)
    v_half[0], v_half[-1] = 0.0, m
    level = EnergyLevel(f, m)
    p_half = level.slope(v_half)
    p_half[-1] = 0.0

    grid = np.concatenate([half, 2.0 * L - half[-2::-1]])
    values = np.concatenate([v_half, v_half[-2::-1]])
    slopes = np.concatenate([p_half, -p_half[-2::-1]])
    tail = ProfileTail(support_end=2.0 * L)
    logger.debug("compact bump m=%.6g: L_m=%.12g", m, L)
    return SteadyProfile(ProfileKind.COMPACT_BUMP, grid, values, slopes, tail, level, half_width=L, m=m)
