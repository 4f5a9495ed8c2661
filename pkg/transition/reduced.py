"""
Reduced motion along the manifold: y' = c(b) e^{-2 lambda y} for b lambda < 1,
y' = c_hat e^{-3 lambda y} for b lambda = 1. Integrated numerically and in closed form.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from errors import NumericalFailure, ValidationError
from nonlinearity import DerivativeUnavailable, DerivedConstants, Nonlinearity, compute_constants
from transition.manifold import is_critical

logger = logging.getLogger(__name__)

REDUCED_SAMPLES = 400


class RegimeMismatch(ValidationError):
    """b lambda > 1: c(b) < 0 and the logarithmic drift law does not apply."""
    pass


def drift_law(f: Nonlinearity, b: float, constants: Optional[DerivedConstants] = None) -> Tuple[float, float, str]:
    """(rate k, constant c) of y' = c e^{-k y}, and which branch applies."""
    lam = f.lam
    if b * lam > 1.0 and not is_critical(b, lam):
        raise RegimeMismatch(f"b lambda = {b * lam:.6g} > 1: no logarithmic drift")
    constants = constants or compute_constants(f)
    if is_critical(b, lam):
        if constants.c_hat is None:
            raise DerivativeUnavailable("b lambda = 1 needs f''(0) for c_hat")
        return 3.0 * lam, constants.c_hat, "critical"
    return 2.0 * lam, constants.c_b(b), "subcritical"


def closed_form(t, y0: float, rate: float, c: float) -> np.ndarray:
    """y(t) = ln(rate c t + e^{rate y0}) / rate."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        drift = np.log(rate * c * t)
    return np.logaddexp(drift, rate * y0) / rate


@dataclass(frozen=True)
class ReducedODEResult:
    t: np.ndarray
    y: np.ndarray
    y_closed: np.ndarray
    rate: float
    constant: float
    y0: float
    branch: str

    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.y - self.y_closed)))

    def rows(self):
        return list(zip(self.t.tolist(), self.y.tolist(), self.y_closed.tolist()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rate": self.rate, "constant": self.constant, "y0": self.y0, "branch": self.branch,
            "t_end": float(self.t[-1]), "max_deviation": self.max_deviation(),
        }


def reduced_ode(
    f: Nonlinearity,
    b: float,
    y0: float,
    t_end: float,
    samples: int = REDUCED_SAMPLES,
    constants: Optional[DerivedConstants] = None,
) -> ReducedODEResult:
    rate, c, branch = drift_law(f, b, constants)
    t = np.concatenate([[0.0], np.geomspace(t_end * 1e-6, t_end, samples)]) if t_end > 0.0 else np.array([0.0])
    solution = solve_ivp(
        lambda _, y: c * np.exp(-rate * y), (0.0, max(t_end, 0.0)), [y0],
        method="DOP853", t_eval=t, rtol=1e-12, atol=1e-14,
    )
    if not solution.success:
        raise NumericalFailure(f"reduced ODE integration failed: {solution.message}")
    y_closed = closed_form(t, y0, rate, c)
    logger.debug("reduced ODE (%s): rate=%.6g c=%.6g y0=%.6g t_end=%.6g", branch, rate, c, y0, t_end)
    return ReducedODEResult(t=t, y=solution.y[0], y_closed=y_closed, rate=rate, constant=c, y0=y0, branch=branch)


def closed_form_residual(t, y0: float, rate: float, c: float) -> np.ndarray:
    """|y'(t) - c e^{-rate y(t)}| for the closed form, y' taken analytically."""
    t = np.asarray(t, dtype=float)
    derivative = c * np.exp(-np.logaddexp(np.log(rate * c) + np.log(np.maximum(t, 1e-300)), rate * y0))
    return np.abs(derivative - c * np.exp(-rate * closed_form(t, y0, rate, c)))
