"""Quadrature and root-finding helpers with explicit failure reporting."""

from typing import Callable, List

import numpy as np
from scipy import integrate, optimize

from constants import (
    GAUSS_ORDER,
    QUAD_EPSABS,
    QUAD_EPSREL,
    QUAD_LIMIT,
    ROOT_MERGE_TOL,
    ROOT_XTOL,
)
from errors import NumericalFailure


class QuadratureFailure(NumericalFailure):
    """Adaptive quadrature did not meet its tolerance."""
    pass


def quad_checked(
    func: Callable[[float], float],
    a: float,
    b: float,
    epsabs: float = QUAD_EPSABS,
    epsrel: float = QUAD_EPSREL,
    fail_tol: float = 1e-8,
) -> float:
    """scipy quad that raises QuadratureFailure instead of warning."""
    if a == b:
        return 0.0
    result = integrate.quad(func, a, b, epsabs=epsabs, epsrel=epsrel, limit=QUAD_LIMIT, full_output=1)
    value, abserr = result[0], result[1]
    if not np.isfinite(value) or abserr > fail_tol * max(1.0, abs(value)):
        message = result[3] if len(result) > 3 else "non-finite result"
        raise QuadratureFailure(f"quad on [{a:.6g}, {b:.6g}] failed: err={abserr:.3e} ({message})")
    return float(value)


def sqrt_endpoint_quad(
    func: Callable[[float], float],
    a: float,
    c: float,
    singular: str = "upper",
    **kwargs,
) -> float:
    """
    Integrate func over [a, c] when func has an inverse square-root singularity at
    one endpoint. The substitution s = c - w**2 (or s = a + w**2) leaves a bounded
    integrand 2 w func(s).
    """
    width = np.sqrt(c - a)
    if singular == "upper":
        return quad_checked(lambda w: 2.0 * w * func(c - w * w), 0.0, width, **kwargs)
    if singular == "lower":
        return quad_checked(lambda w: 2.0 * w * func(a + w * w), 0.0, width, **kwargs)
    raise ValueError(f"singular must be 'upper' or 'lower', got {singular!r}")


def gauss_legendre(order: int = GAUSS_ORDER):
    """Gauss-Legendre nodes and weights on [0, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def scan_roots(func: Callable[[np.ndarray], np.ndarray], grid: np.ndarray) -> List[float]:
    """
    All sign changes of a vectorized func on a sorted sample grid, each polished
    by Brent's method. Roots closer than ROOT_MERGE_TOL are merged.
    """
    values = np.asarray(func(grid), dtype=float)
    roots: List[float] = []
    for i in range(len(grid) - 1):
        left, right = values[i], values[i + 1]
        if left == 0.0:
            roots.append(float(grid[i]))
        elif left * right < 0.0:
            root = optimize.brentq(
                lambda s: float(func(np.array([s]))[0]),
                grid[i], grid[i + 1], xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps, maxiter=200,
            )
            roots.append(float(root))
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))

    merged: List[float] = []
    for root in sorted(roots):
        if merged and root - merged[-1] < ROOT_MERGE_TOL:
            continue
        merged.append(root)
    return merged
