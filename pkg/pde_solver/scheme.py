"""
One IMEX step of u_t = u_xx + f(u) with u(0) = b u_x(0) and u(L) = 0.

Diffusion uses the theta-scheme on a ghost-node Laplacian, reaction is explicit
at the midpoint. The first startup_steps steps run fully implicit to damp the
Crank-Nicolson response to kinks in the initial datum.
"""

import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.linalg import solve_banded

from config import DT, DX, FAR_FIELD_TOL, MAX_T_FACTOR, STARTUP_STEPS, THETA_SCHEME
from constants import BLOWUP_FACTOR, CLIP_TOL, GROWTH_MARGIN_LAMBDA
from errors import NumericalFailure, ValidationError
from nonlinearity import Nonlinearity
from pde_solver.field import Field

logger = logging.getLogger(__name__)


class NumericalBlowup(NumericalFailure):
    """|u| left the comparison-principle bound."""
    pass


class NegativeUndershoot(NumericalFailure):
    """A nodal value went negative beyond the clipping tolerance."""
    pass


@dataclass(frozen=True)
class SolverConfig:
    dx: float = DX
    dt: float = DT
    theta_scheme: float = THETA_SCHEME
    L0: Optional[float] = None
    far_field_tol: float = FAR_FIELD_TOL
    growth_margin: Optional[float] = None
    max_t: Optional[float] = None
    startup_steps: int = STARTUP_STEPS
    clip_tol: float = CLIP_TOL

    def __post_init__(self) -> None:
        if self.dx <= 0.0 or self.dt <= 0.0:
            raise ValidationError(f"dx and dt must be positive, got dx={self.dx}, dt={self.dt}")
        if not 0.0 <= self.theta_scheme <= 1.0:
            raise ValidationError(f"theta_scheme must lie in [0, 1], got {self.theta_scheme}")
        if self.clip_tol < 0.0:
            raise ValidationError(f"clip_tol must be >= 0, got {self.clip_tol}")
        if self.max_t is not None and self.max_t < 0.0:
            raise ValidationError(f"max_t must be >= 0, got {self.max_t}")

    def resolved(self, f: Nonlinearity) -> "SolverConfig":
        """Fill in the lambda-scaled defaults (growth margin 20/lambda, max_t 2000/lambda^2)."""
        margin = self.growth_margin if self.growth_margin is not None else GROWTH_MARGIN_LAMBDA / f.lam
        max_t = self.max_t if self.max_t is not None else MAX_T_FACTOR / f.lam ** 2
        limit = 0.5 / max(float(np.max(np.abs(f.fp(np.linspace(0.0, 1.0, 201))))), 1e-300)
        if self.dt > limit:
            logger.warning("dt=%.3g exceeds 0.5/max|f'|=%.3g; reaction is under-resolved", self.dt, limit)
        return replace(self, growth_margin=margin, max_t=max_t)

    def margin_nodes(self) -> int:
        return int(np.ceil(self.growth_margin / self.dx))

    def to_dict(self):
        return {
            "dx": self.dx, "dt": self.dt, "theta_scheme": self.theta_scheme, "L0": self.L0,
            "far_field_tol": self.far_field_tol, "growth_margin": self.growth_margin,
            "max_t": self.max_t, "startup_steps": self.startup_steps, "clip_tol": self.clip_tol,
        }


def laplacian(u: np.ndarray, dx: float, b: float) -> np.ndarray:
    """Discrete u_xx on nodes 0..n-1 with the ghost node u_{-1} = u_1 - (2 dx / b) u_0 and u_n = 0."""
    out = np.empty(len(u) - 1)
    out[1:] = (u[:-2] - 2.0 * u[1:-1] + u[2:]) / dx ** 2
    if b > 0.0:
        out[0] = (2.0 * u[1] - (2.0 + 2.0 * dx / b) * u[0]) / dx ** 2
    else:
        out[0] = 0.0
    return out


@lru_cache(maxsize=32)
def _implicit_matrix(n: int, dx: float, dt: float, weight: float, b: float) -> np.ndarray:
    """Banded form of I - weight dt L on the n unknowns u_0..u_{n-1}."""
    r = weight * dt / dx ** 2
    ab = np.zeros((3, n))
    ab[0, 1:] = -r
    ab[1, :] = 1.0 + 2.0 * r
    ab[2, :-1] = -r
    if b > 0.0:
        ab[1, 0] = 1.0 + r * (2.0 + 2.0 * dx / b)
        ab[0, 1] = -2.0 * r
    else:
        ab[1, 0] = 1.0
        ab[0, 1] = 0.0
    ab.flags.writeable = False
    return ab


def step(field: Field, cfg: SolverConfig, f: Nonlinearity) -> Field:
    """Advance one time step; returns a new Field."""
    u = field.values
    n, dx, dt, b = field.n, field.dx, cfg.dt, field.b
    weight = 1.0 if field.steps < cfg.startup_steps else cfg.theta_scheme

    lap = laplacian(u, dx, b)
    midpoint = u[:-1] + 0.5 * dt * (lap + f.f(u[:-1]))
    rhs = u[:-1] + (1.0 - weight) * dt * lap + dt * f.f(midpoint)
    if b == 0.0:
        rhs[0] = 0.0
    new = np.empty_like(u)
    new[:-1] = solve_banded((1, 1), _implicit_matrix(n, dx, dt, weight, b), rhs)
    new[-1] = 0.0

    bound = BLOWUP_FACTOR * field.reference_sup
    if not np.all(np.isfinite(new)) or np.max(np.abs(new)) > bound:
        raise NumericalBlowup(f"|u| exceeded {bound:.6g} at t={field.t + dt:.6g}")

    clipped = field.clipped
    negative = new < 0.0
    if np.any(negative):
        floor = float(np.min(new))
        if floor < -cfg.clip_tol * field.reference_sup:
            raise NegativeUndershoot(f"u={floor:.3e} at x={dx * int(np.argmin(new)):.6g}, t={field.t + dt:.6g}")
        clipped += int(np.count_nonzero(negative))
        new[negative] = 0.0

    steps = field.steps + 1
    return replace(field, values=new, t=field.t + dt, steps=steps, clipped=clipped)
