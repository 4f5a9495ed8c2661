"""
Robin-compatible near-ground states Phi(x, xi) = V(xi - x) - B(xi) e^{-lambda x}
with B(xi) = (V(xi) + b V'(xi)) / (1 + b lambda), and their remainder
R = Phi_xx + f(Phi).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from errors import ValidationError
from nonlinearity import Nonlinearity, compute_constants
from pde_solver import DatumFamily, Field, InitialDatum, energy
from steady_states import ProfileKind, SteadyProfile

logger = logging.getLogger(__name__)

CRITICAL_TOL = 1e-12
DATUM_CUT_LAMBDA = 30.0   # Phi is cut off smoothly beyond xi + 30/lambda


class NegativeProfile(ValidationError):
    """Phi(., xi) is not positive: xi is too small for this b."""
    pass


def is_critical(b: float, lam: float) -> bool:
    return abs(b * lam - 1.0) < CRITICAL_TOL


@dataclass(frozen=True, eq=False)
class ManifoldProfile:
    xi: float
    B: float
    b: float
    grid: np.ndarray
    values: np.ndarray
    V: SteadyProfile = field(repr=False)

    def boundary_residual(self) -> float:
        """|Phi(0) - b Phi_x(0)| with Phi_x(0) = -V'(xi) + lambda B."""
        lam = self.V.tail.rate
        phi0 = float(self.V(self.xi)) - self.B
        slope0 = -float(self.V.derivative(self.xi)) + lam * self.B
        return abs(phi0 - self.b * slope0)

    def to_dict(self) -> Dict[str, Any]:
        return {"xi": self.xi, "B": self.B, "b": self.b, "points": int(len(self.grid))}


def manifold_coefficient(V: SteadyProfile, b: float, xi: float) -> float:
    """B(xi) = (V(xi) + b V'(xi)) / (1 + b lambda)."""
    lam = V.tail.rate
    return float((V(xi) + b * V.derivative(xi)) / (1.0 + b * lam))


def manifold_values(V: SteadyProfile, b: float, xi: float, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    B = manifold_coefficient(V, b, xi)
    return V(xi - x) - B * np.exp(-V.tail.rate * x)


def build_manifold_profile(V: SteadyProfile, b: float, xi: float, grid) -> ManifoldProfile:
    if V.kind is not ProfileKind.GROUND:
        raise ValueError("the manifold is built on the ground state")
    if xi < 0.0 or b < 0.0:
        raise ValidationError(f"need xi >= 0 and b >= 0, got xi={xi}, b={b}")
    grid = np.asarray(grid, dtype=float)
    B = manifold_coefficient(V, b, xi)
    base = V(xi - grid)
    values = base - B * np.exp(-V.tail.rate * grid)
    bad = (values <= 0.0) & (base > 0.0)
    if b == 0.0:
        bad &= grid > 0.0
    if np.any(bad):
        x_bad = float(grid[np.argmax(bad)])
        raise NegativeProfile(f"Phi(x, {xi:.6g}) <= 0 at x={x_bad:.6g} for b={b}")
    return ManifoldProfile(xi=float(xi), B=B, b=float(b), grid=grid, values=values, V=V)


def manifold_datum(V: SteadyProfile, b: float, xi: float, sigma: float = 1.0) -> InitialDatum:
    """Phi(., xi) as an initial datum, cut off smoothly over [xi + c, xi + c + 1/lambda]."""
    lam = V.tail.rate
    cut = xi + DATUM_CUT_LAMBDA / lam
    width = 1.0 / lam
    B = manifold_coefficient(V, b, xi)
    build_manifold_profile(V, b, xi, np.linspace(0.0, cut, 2001))

    def render(x):
        x = np.asarray(x, dtype=float)
        s = np.clip((x - cut) / width, 0.0, 1.0)
        return (V(xi - x) - B * np.exp(-lam * x)) * (1.0 - s * s * (3.0 - 2.0 * s))

    return InitialDatum(
        DatumFamily.MANIFOLD, render, support_end=cut + width, sigma=sigma,
        params={"xi": xi, "B": B, "b": b},
    )


# ==================== Remainder ====================

def manifold_remainder(profile: ManifoldProfile, method: str = "exact") -> np.ndarray:
    """
    R = Phi_xx + f(Phi) on the profile grid. "exact" uses V'' = -f(V):
    R = f(V - W) - f(V) + f'(0) W with W = B e^{-lambda x}. "fd" takes Phi_xx by
    centered differences (interior nodes only); its truncation error is of
    order dx^2 Phi'''' and hides the e^{-2 lambda xi} scale for large xi.
    """
    f = profile.V.f
    x = profile.grid
    if method == "exact":
        v = profile.V(profile.xi - x)
        w = profile.B * np.exp(-profile.V.tail.rate * x)
        return f.f(v - w) - f.f(v) + f.fp(0.0) * w
    if method == "fd":
        phi = profile.values
        dx = x[1] - x[0]
        second = (phi[2:] - 2.0 * phi[1:-1] + phi[:-2]) / dx ** 2
        return second + f.f(phi[1:-1])
    raise ValueError(f"method must be 'exact' or 'fd', got {method!r}")


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    predicted_slope: float
    relative_error: float
    xi: Sequence[float]
    sup: Sequence[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slope": self.slope, "intercept": self.intercept,
            "predicted_slope": self.predicted_slope, "relative_error": self.relative_error,
            "xi": list(self.xi), "sup": list(self.sup),
        }


def remainder_decay_fit(
    V: SteadyProfile,
    b: float,
    xis: Sequence[float],
    grid=None,
    method: str = "exact",
) -> DecayFit:
    """
    Slope of log sup|R(., xi)| against xi; predicted -2 lambda, or -3 lambda
    when b lambda = 1.
    """
    lam = V.tail.rate
    sups = []
    for xi in xis:
        x = grid if grid is not None else np.linspace(0.0, xi + 20.0 / lam, 4001)
        profile = build_manifold_profile(V, b, xi, x)
        sups.append(float(np.max(np.abs(manifold_remainder(profile, method)))))
    slope, intercept = np.polyfit(np.asarray(xis, dtype=float), np.log(sups), 1)
    predicted = -3.0 * lam if is_critical(b, lam) else -2.0 * lam
    return DecayFit(
        slope=float(slope), intercept=float(intercept), predicted_slope=predicted,
        relative_error=float(abs(slope - predicted) / abs(predicted)),
        xi=tuple(float(x) for x in xis), sup=tuple(sups),
    )


@dataclass(frozen=True)
class EnergySlope:
    xi: Sequence[float]
    measured: Sequence[float]
    predicted: Sequence[float]

    @property
    def ratios(self) -> np.ndarray:
        return np.asarray(self.measured) / np.asarray(self.predicted)


def manifold_energy_slope(
    V: SteadyProfile,
    b: float,
    xis: Sequence[float],
    dx: Optional[float] = None,
    step: Optional[float] = None,
) -> EnergySlope:
    """
    -1/2 dE[Phi(., xi)]/dxi by centered differences of the discrete energy,
    against 2 lambda^2 (1 - b lambda) A^2 e^{-2 lambda xi} / (1 + b lambda).
    """
    f = V.f
    lam = f.lam
    dx = dx or 0.005 / lam
    step = step or 0.1 / lam
    A = compute_constants(f).A
    end = max(xis) + 40.0 / lam
    x = np.arange(int(np.ceil(end / dx)) + 1) * dx

    def E(xi: float) -> float:
        values = manifold_values(V, b, xi, x)
        values[-1] = 0.0
        return energy(Field(b=b, dx=dx, values=values), f)

    measured = [-0.5 * (E(xi + step) - E(xi - step)) / (2.0 * step) for xi in xis]
    predicted = [
        2.0 * lam ** 2 * (1.0 - b * lam) * A ** 2 * np.exp(-2.0 * lam * xi) / (1.0 + b * lam) for xi in xis
    ]
    return EnergySlope(xi=tuple(xis), measured=tuple(measured), predicted=tuple(float(p) for p in predicted))
