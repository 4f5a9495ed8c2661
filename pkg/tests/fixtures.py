"""
Shared nonlinearities and closed forms for the test suites.

For the cubic f(u) = u (u - 1/4)(1 - u) the ground state is explicit:
with Q(s) = s^2/2 - 5s/6 + 1/4 and A = 6 theta / (3 - 5 theta),
V(z) = k / ((k + 5/6)^2 - 1/2), k = e^{lambda |z|} / A.
"""

import os
from functools import lru_cache

import numpy as np

from nonlinearity import Nonlinearity, TabulatedReaction, quartic_columns

RUN_SLOW = os.getenv("RDT_RUN_SLOW") == "1"

CUBIC_ALPHA = 0.25
CUBIC_LAMBDA = 0.5
CUBIC_THETA = (5.0 - np.sqrt(7.0)) / 6.0
CUBIC_F_ONE = -1.0 / 12.0
CUBIC_A = 6.0 * CUBIC_THETA / (3.0 - 5.0 * CUBIC_THETA)
CUBIC_S0_B3 = (7.5 - np.sqrt(33.75)) / 9.0


@lru_cache(maxsize=None)
def cubic() -> Nonlinearity:
    return Nonlinearity.cubic(CUBIC_ALPHA)


def exact_ground(z):
    """Closed-form V(z) for the cubic with alpha = 1/4."""
    k = np.exp(CUBIC_LAMBDA * np.abs(np.asarray(z, dtype=float))) / CUBIC_A
    return k / ((k + 5.0 / 6.0) ** 2 - 0.5)


def exact_ground_slope(z):
    z = np.asarray(z, dtype=float)
    k = np.exp(CUBIC_LAMBDA * np.abs(z)) / CUBIC_A
    D = (k + 5.0 / 6.0) ** 2 - 0.5
    dV_dk = (D - 2.0 * k * (k + 5.0 / 6.0)) / D ** 2
    return -np.sign(z) * dV_dk * CUBIC_LAMBDA * k


def exact_shift_b3() -> float:
    """z with V(-z) = s0 for b = 3: k(s0) = 5 (1 - s0) / (6 s0), z = 2 ln(A k)."""
    k = 5.0 * (1.0 - CUBIC_S0_B3) / (6.0 * CUBIC_S0_B3)
    return float(np.log(CUBIC_A * k) / CUBIC_LAMBDA)


def mixed_columns(rows: int = 4001, s_max: float = 2.0, with_fpp: bool = True):
    """f(u) = -8u^4 + 9u^3 - 0.75u^2 - 0.25u: alpha = 1/4, lambda = 1/2, min g ~ 1.944 near s = 0.06."""
    s, f, fp, fpp = quartic_columns(0.25, 8.0, rows, s_max)
    return s, f, fp, (fpp if with_fpp else None)


@lru_cache(maxsize=None)
def mixed() -> Nonlinearity:
    s, f, fp, fpp = mixed_columns()
    return Nonlinearity.from_reaction(TabulatedReaction(s, f, fp, fpp=fpp, source="mixed"))
