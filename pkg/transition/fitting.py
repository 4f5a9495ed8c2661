"""Least-squares fit of xi(t) against ln t over the pulse's valid window."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from errors import ValidationError
from nonlinearity import DerivedConstants, Nonlinearity
from transition.pulse import PulseTrajectory
from transition.reduced import drift_law

logger = logging.getLogger(__name__)

MIN_DECADES = 1.0


class WindowTooShort(ValidationError):
    """The valid window spans less than one decade in t."""
    pass


@dataclass(frozen=True)
class LogLawFit:
    slope: float
    intercept: float
    window: Tuple[float, float]
    rms: float
    predicted_slope: float
    predicted_intercept: float
    points: int

    @property
    def slope_deviation(self) -> float:
        return abs(self.slope - self.predicted_slope) / self.predicted_slope

    @property
    def intercept_residual(self) -> float:
        return self.intercept - self.predicted_intercept

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "window": list(self.window),
            "rms": self.rms,
            "points": self.points,
            "predicted_slope": self.predicted_slope,
            "predicted_intercept": self.predicted_intercept,
            "slope_deviation": self.slope_deviation,
            "intercept_residual": self.intercept_residual,
        }


def fit_log_law(
    traj: PulseTrajectory,
    f: Nonlinearity,
    b: float,
    constants: Optional[DerivedConstants] = None,
    window: Optional[Tuple[float, float]] = None,
) -> LogLawFit:
    """
    Regress xi on ln t; the predicted law is xi = ln t / k + ln(k c) / k with
    (k, c) = (2 lambda, c(b)) or (3 lambda, c_hat) at b lambda = 1.
    """
    window = window or traj.valid_window
    if window is None:
        raise WindowTooShort("trajectory has no valid window")
    t1, t2 = window
    if t1 <= 0.0 or np.log10(t2 / t1) < MIN_DECADES:
        raise WindowTooShort(f"window [{t1:.6g}, {t2:.6g}] spans less than one decade")
    rate, c, _ = drift_law(f, b, constants)

    samples = [s for s in traj.samples if t1 <= s[0] <= t2]
    log_t = np.log([s[0] for s in samples])
    xi = np.array([s[1] for s in samples])
    slope, intercept = np.polyfit(log_t, xi, 1)
    rms = float(np.sqrt(np.mean((xi - (slope * log_t + intercept)) ** 2)))
    fit = LogLawFit(
        slope=float(slope), intercept=float(intercept), window=(float(t1), float(t2)), rms=rms,
        predicted_slope=1.0 / rate, predicted_intercept=float(np.log(rate * c) / rate), points=len(samples),
    )
    logger.info("log-law fit: slope %.6g (predicted %.6g), rms %.3g", fit.slope, fit.predicted_slope, rms)
    return fit
