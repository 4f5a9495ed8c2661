"""Finite / infinite shift regimes from g(s) = s / sqrt(F(s)) on (0, theta)."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Tuple

import numpy as np

from constants import ROOT_SCAN_POINTS
from nonlinearity.model import Nonlinearity
from nonlinearity.numerics import scan_roots

logger = logging.getLogger(__name__)

NEAR_ZERO_START = 6       # geometric samples theta * 2^-j for j >= 6 count as "near 0"
NEAR_ZERO_LEVELS = 24
NEAR_ZERO_TAIL = 4        # smallest samples that fix the sign of b - g at s = 0
LIMIT_RTOL = 1e-9         # |b - 1/lambda| below this is decided by the samples


class RegimeLabel(str, Enum):
    INFINITE_SHIFT = "InfiniteShift"
    FINITE_SHIFT = "FiniteShift"
    MIXED = "Mixed"


@dataclass(frozen=True)
class RegimeReport:
    label: RegimeLabel
    b: float
    roots: Tuple[float, ...]
    g_limit: float
    g_min: float
    oscillation_flag: bool
    scan_points: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label.value,
            "b": self.b,
            "roots": list(self.roots),
            "g_limit": self.g_limit,
            "g_min": self.g_min,
            "oscillation_flag": self.oscillation_flag,
            "scan_points": self.scan_points,
        }


def shape_ratio(f: Nonlinearity, s: np.ndarray) -> np.ndarray:
    """g(s) = s / sqrt(F(s)), tending to 1/lambda as s -> 0+."""
    s = np.asarray(s, dtype=float)
    return s / np.sqrt(np.maximum(f.F(s), 0.0))


def ground_shift_roots(f: Nonlinearity, b: float, scan_points: int = ROOT_SCAN_POINTS) -> Tuple[float, ...]:
    """All s0 in (0, theta) with b sqrt(F(s0)) = s0."""
    if b <= 0.0:
        return ()
    theta = f.theta
    grid = theta * np.arange(1, scan_points + 1) / (scan_points + 1)
    near = theta * 2.0 ** -np.arange(NEAR_ZERO_START + NEAR_ZERO_LEVELS, NEAR_ZERO_START - 1, -1, dtype=float)
    grid = np.unique(np.concatenate([near[near < grid[0]], grid]))
    residual = lambda s: b * np.sqrt(np.maximum(f.F(s), 0.0)) - s
    return tuple(scan_roots(residual, grid))


def _near_zero_trend(b: float, g_near: np.ndarray) -> Tuple[float, int]:
    """Sign of b - g on the smallest samples and the number of sign changes as s -> 0."""
    d = b - g_near
    signs = np.sign(d[d != 0.0])
    changes = int(np.count_nonzero(signs[1:] != signs[:-1]))
    tail = d[-NEAR_ZERO_TAIL:]
    if np.all(tail >= 0.0):
        return 1.0, changes
    if np.all(tail < 0.0):
        return -1.0, changes
    return 0.0, changes


def regime_partition(f: Nonlinearity, b: float, scan_points: int = ROOT_SCAN_POINTS) -> RegimeReport:
    """Classify b against g(s) = s/sqrt(F(s)): infinite shift, finite shift, or both possible.

    g(0+) = 1/lambda, so b above the limit is a finite-shift value and b below it
    (with g <= b somewhere) is Mixed. At the limit itself the near-zero samples decide.
    """
    if b < 0.0:
        raise ValueError(f"b must be >= 0, got {b}")
    theta = f.theta
    g_limit = 1.0 / f.lam
    uniform = theta * np.arange(1, scan_points) / scan_points
    near = theta * 2.0 ** -np.arange(NEAR_ZERO_START, NEAR_ZERO_START + NEAR_ZERO_LEVELS, dtype=float)
    g_all = shape_ratio(f, np.concatenate([near, uniform]))
    g_near = shape_ratio(f, near)

    roots = ground_shift_roots(f, b, scan_points)
    trend, changes = _near_zero_trend(b, g_near)
    oscillation = changes >= 2
    gap = b - g_limit
    if abs(gap) > LIMIT_RTOL * g_limit:
        trend = float(np.sign(gap))

    if np.all(b < g_all):
        label = RegimeLabel.INFINITE_SHIFT
    elif trend > 0.0 and not oscillation:
        label = RegimeLabel.FINITE_SHIFT
    else:
        label = RegimeLabel.MIXED
    if oscillation:
        logger.warning("g(s) oscillates about b=%.6g near s=0; regime reported as %s and flagged", b, label.value)

    return RegimeReport(
        label=label, b=float(b), roots=roots, g_limit=g_limit,
        g_min=float(np.min(g_all)), oscillation_flag=oscillation, scan_points=scan_points,
    )
