"""The evolving state u(x, t) on the truncated half-line [0, n dx]."""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np


@dataclass
class Field:
    """
    Nodal values u_i at x_i = i dx, i = 0..n, with the Robin parameter b of
    u(0) = b u_x(0). reference_sup is max(1, ||u(., 0)||) and bounds the run.
    """

    b: float
    dx: float
    values: np.ndarray
    t: float = 0.0
    steps: int = 0
    clipped: int = 0
    reference_sup: Optional[float] = None
    growths: int = field(default=0)

    def __post_init__(self) -> None:
        if self.b < 0.0:
            raise ValueError(f"b must be >= 0, got {self.b}")
        self.values = np.asarray(self.values, dtype=float)
        if self.reference_sup is None:
            self.reference_sup = max(1.0, float(np.max(np.abs(self.values))))

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n + 1) * self.dx

    @property
    def length(self) -> float:
        return self.n * self.dx

    @property
    def sup(self) -> float:
        return float(np.max(self.values))

    def copy(self) -> "Field":
        return replace(self, values=self.values.copy())

    def snapshot(self) -> "Field":
        """Read-only copy handed to hooks."""
        frozen = self.copy()
        frozen.values.flags.writeable = False
        return frozen

    def grown(self) -> "Field":
        """Double the node count by appending zeros; existing values are kept as they are."""
        extended = np.concatenate([self.values, np.zeros(self.n)])
        return replace(self, values=extended, growths=self.growths + 1)
