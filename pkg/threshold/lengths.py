"""Window lengths L(m) that certify spreading once u >= m on an interval of length 2 L(m)."""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from constants import BUMP_LEVELS
from nonlinearity import Nonlinearity
from nonlinearity.numerics import quad_checked
from steady_states import InvalidM, half_width

logger = logging.getLogger(__name__)


def bump_levels(f: Nonlinearity, levels: int = BUMP_LEVELS) -> np.ndarray:
    """m_j = theta + j (1 - theta) / (levels + 1), j = 1..levels."""
    return f.theta + (1.0 - f.theta) * np.arange(1, levels + 1) / (levels + 1)


@dataclass(frozen=True)
class BumpLadder:
    """(m, L_m) pairs for the spreading test, m increasing."""

    levels: Tuple[Tuple[float, float], ...]

    @classmethod
    def build(cls, f: Nonlinearity, levels: int = BUMP_LEVELS) -> "BumpLadder":
        return cls(tuple((float(m), half_width(f, float(m))) for m in bump_levels(f, levels)))

    def shortest(self) -> float:
        return min(L for _, L in self.levels)


def compute_L_of_m(f: Nonlinearity, m: float, levels: int = BUMP_LEVELS) -> float:
    """
    L_m for m in (theta, 1); for m = 1 the smallest L_m' over the ladder; for
    m in (alpha, theta] the comparison bound 1 + sqrt((1 + R^2) e^{QT} / eps - 1)
    with eps = (1 - theta) / 3, T = int_m^{theta + 2 eps} ds / f, R = L_{theta + eps},
    Q = 2 + max f' on [0, 1]. Overflow of e^{QT} gives inf.
    """
    if not f.alpha < m <= 1.0:
        raise InvalidM(f"L(m) needs m in (alpha, 1] = ({f.alpha:.6g}, 1], got {m}")
    if m == 1.0:
        return BumpLadder.build(f, levels).shortest()
    if m > f.theta:
        return half_width(f, m)

    eps = (1.0 - f.theta) / 3.0
    T = quad_checked(lambda s: 1.0 / float(f.f(s)), m, f.theta + 2.0 * eps)
    R = half_width(f, f.theta + eps)
    Q = 2.0 + float(np.max(f.fp(np.linspace(0.0, 1.0, 2001))))
    try:
        growth = math.exp(Q * T)
    except OverflowError:
        logger.warning("L(%.6g): e^{QT} overflows (Q=%.6g, T=%.6g)", m, Q, T)
        return math.inf
    return 1.0 + math.sqrt((1.0 + R * R) * growth / eps - 1.0)
