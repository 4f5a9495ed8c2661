"""Initial data u(x, 0) = sigma phi(x) with compact support."""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, Optional

import numpy as np

from errors import ValidationError
from nonlinearity import Nonlinearity
from pde_solver.field import Field
from pde_solver.scheme import SolverConfig
from steady_states import SteadyProfile, build_compact_bump, bump_robin_point

logger = logging.getLogger(__name__)

PLATEAU_EDGE = 0.1
BUMP_PROFILE_INTERVALS = 400


class DatumFamily(str, Enum):
    SCALED_BUMP = "ScaledBump"
    TWIN_BUMP = "TwinBump"
    CAPPED_GROUND = "CappedGround"
    BUMP_OFFSET = "BumpOffset"
    MANIFOLD = "Manifold"


class BumpShape(str, Enum):
    TRIANGLE = "triangle"
    SMOOTH = "smooth"
    PLATEAU = "plateau"


def _smoothstep(t: np.ndarray) -> np.ndarray:
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


def bump_shape(shape: BumpShape, h: float) -> Callable[[np.ndarray], np.ndarray]:
    """Unit-height shapes supported on [0, h]."""
    if h <= 0.0:
        raise ValidationError(f"support length h must be positive, got {h}")
    shape = BumpShape(shape)
    if shape is BumpShape.TRIANGLE:
        return lambda x: np.maximum(0.0, 1.0 - np.abs(2.0 * np.asarray(x) / h - 1.0))
    if shape is BumpShape.SMOOTH:
        def smooth(x):
            y = 2.0 * np.asarray(x, dtype=float) / h - 1.0
            inside = np.abs(y) < 1.0
            out = np.zeros_like(y)
            out[inside] = np.exp(1.0 - 1.0 / (1.0 - y[inside] ** 2))
            return out
        return smooth
    edge = PLATEAU_EDGE * h

    def plateau(x):
        x = np.asarray(x, dtype=float)
        return _smoothstep(x / edge) * _smoothstep((h - x) / edge)
    return plateau


@dataclass(frozen=True)
class InitialDatum:
    """sigma times a unit-scale shape; support_end bounds the support of the shape."""

    family: DatumFamily
    renderer: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    support_end: float
    sigma: float = 1.0
    params: Dict[str, Any] = field(default_factory=dict, compare=False)

    def render(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        values = self.sigma * np.asarray(self.renderer(x), dtype=float)
        values = np.where((x >= 0.0) & (x <= self.support_end), values, 0.0)
        return np.maximum(values, 0.0)

    def scaled(self, sigma: float) -> "InitialDatum":
        return replace(self, sigma=float(sigma))

    def sup(self, samples: int = 4001) -> float:
        return float(np.max(self.render(np.linspace(0.0, self.support_end, samples))))

    def describe(self) -> Dict[str, Any]:
        return {"family": self.family.value, "sigma": self.sigma, "support_end": self.support_end, **self.params}


# ==================== Factories ====================

def scaled_bump(shape: BumpShape = BumpShape.TRIANGLE, h: float = 1.0, sigma: float = 1.0) -> InitialDatum:
    shape = BumpShape(shape)
    return InitialDatum(
        DatumFamily.SCALED_BUMP, bump_shape(shape, h), support_end=h, sigma=sigma,
        params={"shape": shape.value, "h": h},
    )


def twin_bump(shape: BumpShape = BumpShape.SMOOTH, h: float = 1.0, gap: float = 1.0, sigma: float = 1.0) -> InitialDatum:
    """Two unit bumps on [0, h] and [h + gap, 2h + gap]."""
    shape = BumpShape(shape)
    single = bump_shape(shape, h)
    offset = h + gap
    return InitialDatum(
        DatumFamily.TWIN_BUMP, lambda x: single(x) + single(np.asarray(x) - offset),
        support_end=2.0 * h + gap, sigma=sigma, params={"shape": shape.value, "h": h, "gap": gap},
    )


def capped_ground(V: SteadyProfile, z0: float, rho: float, sigma: float = 1.0) -> InitialDatum:
    """V(x - z0) up to z0 + rho, joined to 0 by a cubic on [z0 + rho, z0 + 2 rho]."""
    if rho <= 0.0:
        raise ValidationError(f"rho must be positive, got {rho}")
    cut = z0 + rho

    def render(x):
        x = np.asarray(x, dtype=float)
        return V(x - z0) * (1.0 - _smoothstep((x - cut) / rho))

    return InitialDatum(
        DatumFamily.CAPPED_GROUND, render, support_end=z0 + 2.0 * rho, sigma=sigma,
        params={"z0": z0, "rho": rho},
    )


def bump_offset(
    f: Nonlinearity,
    m: float,
    b: float,
    shape: BumpShape = BumpShape.SMOOTH,
    h: float = 1.0,
    sigma: float = 1.0,
) -> InitialDatum:
    """
    Zero on the support [0, 2 L_m - x'_m] of v_m(. + x'_m), where x'_m solves
    v_m = b v_m'; a unit bump on the next interval of length h.
    """
    bump = build_compact_bump(f, m, BUMP_PROFILE_INTERVALS)
    x_m = bump_robin_point(bump, b)
    start = 2.0 * bump.half_width - x_m
    single = bump_shape(shape, h)
    return InitialDatum(
        DatumFamily.BUMP_OFFSET, lambda x: single(np.asarray(x) - start),
        support_end=start + h, sigma=sigma,
        params={"m": m, "x_m": x_m, "start": start, "h": h, "shape": BumpShape(shape).value},
    )


def field_from_datum(datum: InitialDatum, b: float, cfg: SolverConfig) -> Field:
    """
    Render the datum on [0, L0]; L0 defaults to the support end plus two
    growth margins (cfg must be resolved).
    """
    L0 = cfg.L0 if cfg.L0 is not None else datum.support_end + 2.0 * cfg.growth_margin
    n = int(np.ceil(L0 / cfg.dx))
    x = np.arange(n + 1) * cfg.dx
    values = datum.render(x)
    values[-1] = 0.0
    if b == 0.0:
        values[0] = 0.0
    if not np.any(values > 0.0):
        raise ValidationError("initial datum vanishes on the grid")
    return Field(b=b, dx=cfg.dx, values=values)
