"""Energy, sign changes of u_x, Gaussian tail envelope and boundary residual of a Field."""

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
from scipy.integrate import trapezoid

from constants import DECAY_NOISE_FLOOR, SIGN_FLAT_TOL
from nonlinearity import Nonlinearity
from pde_solver.field import Field

MIN_DECAY_POINTS = 3


def energy(field: Field, f: Nonlinearity) -> float:
    """
    int_0^L (u_x^2 + F(u)) dx + u(0)^2 / b, with forward differences for u_x and the
    trapezoidal rule for F. The boundary term is dropped for b = 0.
    """
    u, dx = field.values, field.dx
    gradient = float(np.sum(np.diff(u) ** 2) / dx)
    potential = float(trapezoid(f.F(u), dx=dx))
    boundary = u[0] ** 2 / field.b if field.b > 0.0 else 0.0
    return gradient + potential + float(boundary)


def sign_changes_ux(field: Field) -> int:
    """Sign alternations of the centered differences of u, flat stretches skipped."""
    d = field.values[2:] - field.values[:-2]
    signs = np.sign(d[np.abs(d) > SIGN_FLAT_TOL])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def robin_residual(field: Field) -> float:
    """|u_0 - b (-3 u_0 + 4 u_1 - u_2) / (2 dx)|."""
    u = field.values
    slope = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * field.dx)
    return float(abs(u[0] - field.b * slope))


@dataclass(frozen=True)
class DecayReport:
    t: float
    passed: bool
    margin: float
    slope: Optional[float]
    intercept: Optional[float]
    points: int
    x_min: float
    restricted: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t, "passed": self.passed, "margin": self.margin, "slope": self.slope,
            "intercept": self.intercept, "points": self.points, "x_min": self.x_min,
            "restricted": self.restricted,
        }


def decay_check(field: Field, h: float, front: Optional[float] = None) -> DecayReport:
    """
    Fit log u = c + k (-x^2 / (16 t)) on x > max(2h, front) where u is above the
    noise floor. The envelope C(t) e^{-x^2/(16t)} bounds the tail when k >= 1;
    the prefactor is the fitted constant c. With a front given the check is
    only reported for the region ahead of it.
    """
    if field.t <= 0.0:
        raise ValueError("decay_check needs t > 0")
    x_min = 2.0 * h if front is None else max(2.0 * h, front)
    x, u = field.x, field.values
    mask = (x > x_min) & (u > DECAY_NOISE_FLOOR)
    points = int(np.count_nonzero(mask))
    restricted = front is not None
    if points < MIN_DECAY_POINTS:
        return DecayReport(field.t, True, float("inf"), None, None, points, x_min, restricted)
    regressor = -x[mask] ** 2 / (16.0 * field.t)
    slope, intercept = np.polyfit(regressor, np.log(u[mask]), 1)
    margin = float(slope - 1.0)
    return DecayReport(field.t, margin >= 0.0, margin, float(slope), float(intercept), points, x_min, restricted)
