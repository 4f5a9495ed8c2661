"""Pulse position xi(t): leftmost local maximum above alpha, refined by a parabola."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from constants import BAND_HIGH_FRACTION, BAND_LOW_FRACTION
from errors import NumericalFailure
from nonlinearity import Nonlinearity
from pde_solver import Field, RunHook

logger = logging.getLogger(__name__)


class PulseLost(NumericalFailure):
    """No local maximum above alpha: the run has resolved to vanishing."""
    pass


def pulse_band(f: Nonlinearity) -> Tuple[float, float]:
    """umax band of transition-like shapes around the ground-state peak theta."""
    return (
        f.alpha + BAND_LOW_FRACTION * (f.theta - f.alpha),
        f.theta + BAND_HIGH_FRACTION * (1.0 - f.theta),
    )


def locate_pulse(field: Field, alpha: float) -> Tuple[float, float]:
    """(xi, umax) of the leftmost local maximum above alpha."""
    u = field.values
    interior = np.flatnonzero((u[1:-1] >= u[:-2]) & (u[1:-1] > u[2:]) & (u[1:-1] > alpha)) + 1
    if len(u) > 1 and u[0] > u[1] and u[0] > alpha:
        return 0.0, float(u[0])
    if len(interior) == 0:
        raise PulseLost(f"no local maximum above alpha at t={field.t:.6g}")
    i = int(interior[0])
    left, mid, right = u[i - 1], u[i], u[i + 1]
    curvature = left - 2.0 * mid + right
    offset = 0.5 * (left - right) / curvature if curvature != 0.0 else 0.0
    peak = mid - 0.25 * (left - right) * offset
    return (i + offset) * field.dx, float(peak)


@dataclass(frozen=True)
class PulseTrajectory:
    samples: Tuple[Tuple[float, float, float], ...]
    band: Tuple[float, float]
    valid_window: Optional[Tuple[float, float]]
    truncated: bool = False
    lost_at: Optional[float] = None

    @property
    def t(self) -> np.ndarray:
        return np.array([s[0] for s in self.samples])

    @property
    def xi(self) -> np.ndarray:
        return np.array([s[1] for s in self.samples])

    @property
    def umax(self) -> np.ndarray:
        return np.array([s[2] for s in self.samples])

    def window_samples(self) -> List[Tuple[float, float, float]]:
        if self.valid_window is None:
            return []
        t1, t2 = self.valid_window
        return [s for s in self.samples if t1 <= s[0] <= t2]

    def settling(self) -> Tuple[float, float]:
        """Largest |xi(t + dt) - xi(t)| over the first and the last quarter of the valid window."""
        xi = np.array([s[1] for s in self.window_samples()])
        if len(xi) < 8:
            raise ValueError("valid window too short to compare quarters")
        steps = np.abs(np.diff(xi))
        quarter = max(1, len(steps) // 4)
        return float(np.max(steps[:quarter])), float(np.max(steps[-quarter:]))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "samples": len(self.samples),
            "band": list(self.band),
            "valid_window": None if self.valid_window is None else list(self.valid_window),
            "truncated": self.truncated,
            "lost_at": self.lost_at,
        }


def valid_window(samples, band: Tuple[float, float]) -> Optional[Tuple[float, float]]:
    """Longest stretch of consecutive samples with umax inside the band."""
    best, start, best_len = None, None, 0
    for k, (t, _, umax) in enumerate(samples):
        inside = band[0] < umax < band[1]
        if inside and start is None:
            start = k
        if start is not None and (not inside or k == len(samples) - 1):
            stop = k if inside else k - 1
            if stop - start + 1 > best_len:
                best_len = stop - start + 1
                best = (samples[start][0], samples[stop][0])
            start = None
    return best


class PulseTracker(RunHook):
    """
    Records (t, xi, umax) per snapshot. Once the pulse has entered the band,
    leaving it again (or losing the maximum) ends tracking; with stop_on_exit
    the run is stopped there.
    """

    name = "pulse"

    def __init__(self, interval: float, f: Nonlinearity, stop_on_exit: bool = True) -> None:
        super().__init__(interval)
        self.f = f
        self.band = pulse_band(f)
        self.stop_on_exit = stop_on_exit
        self.samples: List[Tuple[float, float, float]] = []
        self.entered = False
        self.lost_at: Optional[float] = None

    def on_snapshot(self, field: Field) -> bool:
        if self.lost_at is not None:
            return self.stop_on_exit
        try:
            xi, umax = locate_pulse(field, self.f.alpha)
        except PulseLost:
            self.lost_at = field.t
            logger.debug("pulse lost at t=%.6g", field.t)
            return self.stop_on_exit
        inside = self.band[0] < umax < self.band[1]
        if self.entered and not inside:
            self.lost_at = field.t
            logger.debug("pulse left the band at t=%.6g (umax=%.6g)", field.t, umax)
            return self.stop_on_exit
        self.entered = self.entered or inside
        self.samples.append((field.t, xi, umax))
        return False

    def trajectory(self) -> PulseTrajectory:
        samples = tuple(self.samples)
        return PulseTrajectory(
            samples=samples, band=self.band, valid_window=valid_window(samples, self.band),
            truncated=self.lost_at is not None, lost_at=self.lost_at,
        )


def track_pulse(snapshots: Iterable[Field], f: Nonlinearity) -> PulseTrajectory:
    """Pulse trajectory of a recorded snapshot stream, truncated where the pulse is lost."""
    tracker = PulseTracker(1.0, f)
    for snapshot in snapshots:
        if tracker.on_snapshot(snapshot):
            break
    return tracker.trajectory()
