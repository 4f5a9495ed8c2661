"""Derived constants of the ground state: A, int sqrt(F), c(b), c_hat, H_k."""

import logging
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, Optional, Tuple

import numpy as np

from constants import A_INTEGRAND_EPS, QUAD_EPSABS, QUAD_EPSREL, RICHARDSON_STEP
from nonlinearity.model import Nonlinearity
from nonlinearity.numerics import quad_checked, sqrt_endpoint_quad
from nonlinearity.reaction import DerivativeUnavailable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DerivedConstants:
    lam: float
    theta: float
    A: float
    I_F: float
    c_hat: Optional[float]
    H_k: Optional[float]
    k_order: Optional[int]
    limit_source: str
    unavailable: Tuple[str, ...] = field(default_factory=tuple)

    def c_b(self, b: float) -> float:
        """c(b) = lambda^2 (1 - b lambda) A^2 / [(1 + b lambda) int_0^theta sqrt(F)]."""
        if b < 0.0:
            raise ValueError(f"b must be >= 0, got {b}")
        bl = b * self.lam
        return self.lam ** 2 * (1.0 - bl) * self.A ** 2 / ((1.0 + bl) * self.I_F)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "A": self.A,
            "I_F": self.I_F,
            "c0": self.c_b(0.0),
            "c_hat": self.c_hat if self.c_hat is not None else "unavailable",
            "H_k": self.H_k if self.H_k is not None else "unavailable",
            "k_order": self.k_order,
            "limit_source": self.limit_source,
        }


def _a_integrand(f: Nonlinearity, s: float) -> float:
    """lambda/sqrt(F(s)) - 1/s written without the 1/s - 1/s cancellation."""
    F = float(f.F(s))
    root = np.sqrt(F)
    return (f.lam ** 2 * s * s - F) / (s * root * (f.lam * s + root))


def _near_zero_limit(f: Nonlinearity) -> Tuple[float, str]:
    """lim_{s->0+} [lambda/sqrt(F) - 1/s]: f''(0)/(6 lambda^2) by series, else Richardson."""
    try:
        return f.derivative_at_zero(2) / (6.0 * f.lam ** 2), "series"
    except DerivativeUnavailable:
        h = RICHARDSON_STEP * f.theta
        return 2.0 * _a_integrand(f, h) - _a_integrand(f, 2.0 * h), "richardson"


def H(f: Nonlinearity, A: float, k: int) -> float:
    """
    H_k = f^(k)(0) A^k / [lambda^2 (k+1)! (k-1)], k >= 2: the coefficient that makes
    A e^{-lambda z} - H_k e^{-k lambda z} solve V'' + f(V) = 0 up to e^{-(k+1) lambda z}.
    """
    if k < 2:
        raise ValueError("H_k is defined for k >= 2")
    return f.derivative_at_zero(k) * A ** k / (f.lam ** 2 * factorial(k + 1) * (k - 1))


def compute_constants(
    f: Nonlinearity,
    epsabs: float = QUAD_EPSABS,
    epsrel: float = QUAD_EPSREL,
    eps: float = A_INTEGRAND_EPS,
) -> DerivedConstants:
    """Compute A, int_0^theta sqrt(F), c_hat and H_k for a validated f."""
    lam, theta = f.lam, f.theta
    mid = 0.5 * theta
    tol = {"epsabs": epsabs, "epsrel": epsrel}

    limit, limit_source = _near_zero_limit(f)
    inner = quad_checked(lambda s: _a_integrand(f, s), eps, mid, **tol)
    outer = sqrt_endpoint_quad(lambda s: lam / np.sqrt(max(float(f.F(s)), 0.0)), mid, theta, **tol)
    exponent = eps * limit + inner + outer - np.log(theta / mid)
    A = theta * float(np.exp(exponent))

    sqrt_F = lambda s: np.sqrt(max(float(f.F(s)), 0.0))
    I_F = quad_checked(sqrt_F, 0.0, mid, **tol) + sqrt_endpoint_quad(sqrt_F, mid, theta, **tol)

    unavailable = []
    try:
        c_hat = f.derivative_at_zero(2) * A ** 3 / (12.0 * I_F)
    except DerivativeUnavailable:
        c_hat = None
        unavailable.append("c_hat")

    H_k = None
    if f.k_order is not None:
        H_k = H(f, A, f.k_order)
    else:
        unavailable.append("H_k")

    logger.debug("A=%.12g I_F=%.12g limit=%s", A, I_F, limit_source)
    return DerivedConstants(
        lam=lam, theta=theta, A=A, I_F=I_F, c_hat=c_hat, H_k=H_k,
        k_order=f.k_order, limit_source=limit_source, unavailable=tuple(unavailable),
    )
