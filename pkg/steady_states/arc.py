"""
Phase-plane arcs v'^2 = F(v) - q, tabulated as x(v) = int ds / sqrt(F(s) - q)
and inverted back to v(x).

An arc is a chain of pieces; each piece maps a parameter p onto values s(p)
so that dx/dp stays bounded, including at turning points where F - q has a
simple zero (s = top - p**2) and at equilibria approached exponentially
(s = exp(-p) or s = 1 - exp(-p)).
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from constants import GAUSS_ORDER
from errors import NumericalFailure
from nonlinearity import Nonlinearity
from nonlinearity.numerics import gauss_legendre

logger = logging.getLogger(__name__)

# Depth below the top of a level set under which F(top - d) - q is summed
# as 2 d * mean(f) instead of differenced.
GAP_SWITCH = 1e-2
MAX_PANEL_WIDTH = 0.05
MIN_PANELS = 16
NEWTON_ITERATIONS = 60


class InversionFailure(NumericalFailure):
    """x(v) is not monotone or Newton inversion did not converge."""
    pass


class EnergyLevel:
    """The level set F(v) - v'^2 = level, with its turning value top (F(top) = level)."""

    def __init__(self, f: Nonlinearity, top: float, level: Optional[float] = None) -> None:
        self.f = f
        self.top = float(top)
        self.level = float(f.F(top)) if level is None else float(level)
        self._nodes, self._weights = gauss_legendre(GAUSS_ORDER)

    def mean_rate(self, depth) -> np.ndarray:
        """(F(top - d) - level) / (2 d), i.e. the mean of f over [top - d, top]."""
        depth = np.asarray(depth, dtype=float)
        flat = depth.reshape(-1)
        out = np.empty_like(flat)
        near = flat < GAP_SWITCH
        if np.any(near):
            d = flat[near]
            samples = self.f.f(self.top - d[:, None] * self._nodes[None, :])
            out[near] = samples @ self._weights
        far = ~near
        if np.any(far):
            d = flat[far]
            out[far] = (self.f.F(self.top - d) - self.level) / (2.0 * d)
        return out.reshape(depth.shape)

    def gap(self, s) -> np.ndarray:
        """F(s) - level for s <= top, relatively accurate close to top."""
        s = np.asarray(s, dtype=float)
        depth = np.maximum(self.top - s, 0.0)
        return 2.0 * depth * self.mean_rate(depth)

    def slope(self, s) -> np.ndarray:
        """|v'| on the level set at value s."""
        return np.sqrt(np.maximum(self.gap(s), 0.0))


@dataclass(frozen=True)
class ArcPiece:
    value: Callable[[np.ndarray], np.ndarray]     # p -> s
    inverse: Callable[[np.ndarray], np.ndarray]   # s -> p
    speed: Callable[[np.ndarray], np.ndarray]     # dx/dp > 0
    start: float
    stop: float


# ==================== Standard pieces ====================

def turning_piece(level: EnergyLevel, depth: float, reverse: bool = False) -> ArcPiece:
    """
    s = top - w^2 for w in [0, sqrt(depth)]. dx/dw = sqrt(2 / mean_rate(w^2)) has
    no singularity at the turning point. reverse=True walks towards top instead.
    """
    width = float(np.sqrt(depth))
    speed = lambda w: np.sqrt(2.0 / level.mean_rate(np.asarray(w) ** 2))
    if not reverse:
        return ArcPiece(
            value=lambda w: level.top - np.asarray(w) ** 2,
            inverse=lambda s: np.sqrt(np.maximum(level.top - np.asarray(s), 0.0)),
            speed=speed, start=0.0, stop=width,
        )
    return ArcPiece(
        value=lambda u: level.top - np.asarray(u) ** 2,
        inverse=lambda s: -np.sqrt(np.maximum(level.top - np.asarray(s), 0.0)),
        speed=lambda u: speed(np.abs(u)), start=-width, stop=0.0,
    )


def linear_piece(level: EnergyLevel, lo: float, hi: float) -> ArcPiece:
    """s = p on [lo, hi], away from any zero of F - level."""
    return ArcPiece(
        value=lambda p: np.asarray(p, dtype=float),
        inverse=lambda s: np.asarray(s, dtype=float),
        speed=lambda p: 1.0 / np.sqrt(level.gap(p)),
        start=lo, stop=hi,
    )


def decay_piece(level: EnergyLevel, hi: float, q_max: float) -> ArcPiece:
    """s = exp(-q) from s = hi down towards 0 (level must be 0)."""
    return ArcPiece(
        value=lambda q: np.exp(-np.asarray(q)),
        inverse=lambda s: -np.log(np.asarray(s)),
        speed=lambda q: np.exp(-np.asarray(q)) / np.sqrt(level.gap(np.exp(-np.asarray(q)))),
        start=-np.log(hi), stop=q_max,
    )


def approach_piece(level: EnergyLevel, depth: float, q_max: float) -> ArcPiece:
    """s = top - exp(-q) towards an equilibrium at top (F'(top) = 0)."""

    def speed(q):
        d = np.exp(-np.asarray(q))
        return d / np.sqrt(2.0 * d * level.mean_rate(d))

    return ArcPiece(
        value=lambda q: level.top - np.exp(-np.asarray(q)),
        inverse=lambda s: -np.log(level.top - np.asarray(s)),
        speed=speed, start=-np.log(depth), stop=q_max,
    )


# ==================== Arc ====================

class PhasePlaneArc:
    """
    Cumulative x along a chain of pieces, integrated panel by panel with
    Gauss-Legendre rules and inverted by safeguarded Newton inside a panel.
    """

    def __init__(self, pieces: Sequence[ArcPiece], max_panel_width: float = MAX_PANEL_WIDTH) -> None:
        self.pieces: List[ArcPiece] = list(pieces)
        self._nodes, self._weights = gauss_legendre(GAUSS_ORDER)

        owners, lefts, rights, lengths = [], [], [], []
        for k, piece in enumerate(self.pieces):
            count = max(MIN_PANELS, int(np.ceil((piece.stop - piece.start) / max_panel_width)))
            edges = np.linspace(piece.start, piece.stop, count + 1)
            left, right = edges[:-1], edges[1:]
            lengths.append(self._partial(k, left, right))
            owners.append(np.full(count, k))
            lefts.append(left)
            rights.append(right)

        self._owner = np.concatenate(owners)
        self._left = np.concatenate(lefts)
        self._right = np.concatenate(rights)
        panel_lengths = np.concatenate(lengths)
        if not np.all(np.isfinite(panel_lengths)) or np.any(panel_lengths <= 0.0):
            raise InversionFailure("arc has a non-positive or non-finite panel length (non-monotone arc)")
        self._x_left = np.concatenate([[0.0], np.cumsum(panel_lengths)[:-1]])
        self._x_right = self._x_left + panel_lengths
        self.length = float(np.sum(panel_lengths))

    def _partial(self, k: int, a: np.ndarray, p: np.ndarray) -> np.ndarray:
        """int_a^p speed, one Gauss-Legendre rule per entry."""
        a = np.asarray(a, dtype=float)
        width = np.asarray(p, dtype=float) - a
        points = a[:, None] + width[:, None] * self._nodes[None, :]
        speeds = self.pieces[k].speed(points)
        return width * (speeds @ self._weights)

    def position(self, s) -> np.ndarray:
        """x(s) for values s lying on the arc."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        out = np.full(s.shape, np.nan)
        for k, piece in enumerate(self.pieces):
            lo, hi = sorted((float(piece.value(piece.start)), float(piece.value(piece.stop))))
            mask = np.isnan(out) & (s >= lo) & (s <= hi)
            if not np.any(mask):
                continue
            p = np.clip(piece.inverse(s[mask]), piece.start, piece.stop)
            panels = np.nonzero(self._owner == k)[0]
            local = np.clip(np.searchsorted(self._left[panels], p, side="right") - 1, 0, len(panels) - 1)
            idx = panels[local]
            out[mask] = self._x_left[idx] + self._partial(k, self._left[idx], p)
        if np.any(np.isnan(out)):
            raise ValueError("value outside the range covered by the arc")
        return out

    def invert(self, x) -> np.ndarray:
        """s(x) for 0 <= x <= length."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(x < 0.0) or np.any(x > self.length * (1.0 + 1e-14)):
            raise ValueError(f"positions must lie in [0, {self.length}]")
        idx = np.clip(np.searchsorted(self._x_left, x, side="right") - 1, 0, len(self._x_left) - 1)
        out = np.empty_like(x)
        for k, piece in enumerate(self.pieces):
            mask = self._owner[idx] == k
            if np.any(mask):
                p = self._newton(k, idx[mask], x[mask])
                out[mask] = piece.value(p)
        return out

    def _newton(self, k: int, idx: np.ndarray, target: np.ndarray) -> np.ndarray:
        piece = self.pieces[k]
        lo = self._left[idx].copy()
        hi = self._right[idx].copy()
        base = self._x_left[idx]
        frac = np.clip((target - base) / (self._x_right[idx] - base), 0.0, 1.0)
        p = lo + frac * (hi - lo)
        anchor = self._left[idx]

        for _ in range(NEWTON_ITERATIONS):
            residual = base + self._partial(k, anchor, p) - target
            hi = np.where(residual > 0.0, p, hi)
            lo = np.where(residual <= 0.0, p, lo)
            speed = piece.speed(p)
            if np.any(~np.isfinite(speed)) or np.any(speed <= 0.0):
                raise InversionFailure("arc speed lost positivity during inversion (non-monotone arc)")
            step = p - residual / speed
            step = np.where((step < lo) | (step > hi), 0.5 * (lo + hi), step)
            done = np.abs(step - p) <= 4.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(p))
            p = step
            if np.all(done):
                return p
        worst = float(np.max(np.abs(base + self._partial(k, anchor, p) - target)))
        if worst > 1e-12 * max(1.0, self.length):
            raise InversionFailure(f"Newton inversion stalled, residual {worst:.3e}")
        return p
