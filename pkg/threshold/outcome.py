"""Run outcomes decided by certificates: sup u < alpha, or u >= m on a window of length 2 L_m."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from constants import CLASSIFY_INTERVAL
from nonlinearity import Nonlinearity
from pde_solver import Field, RunHook, SolverConfig, run
from threshold.lengths import BumpLadder

logger = logging.getLogger(__name__)


class OutcomeKind(str, Enum):
    SPREADING = "Spreading"
    VANISHING = "Vanishing"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class Outcome:
    """
    Spreading: u >= m on `interval`, whose length is at least 2 L_m.
    Vanishing: sup u < alpha at time t.
    Undecided: neither fired before t.
    """

    kind: OutcomeKind
    t: float
    sup: float
    m: Optional[float] = None
    L_m: Optional[float] = None
    interval: Optional[Tuple[float, float]] = None
    snapshot: Optional[Field] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        out = {"kind": self.kind.value, "t": self.t, "sup": self.sup}
        if self.kind is OutcomeKind.SPREADING:
            out.update({"m": self.m, "L_m": self.L_m, "interval": list(self.interval)})
        return out


def _longest_run(mask: np.ndarray) -> Tuple[int, int]:
    """First and last index of the longest run of True (-1, -1 if none)."""
    if not np.any(mask):
        return -1, -1
    padded = np.concatenate([[False], mask, [False]])
    edges = np.flatnonzero(padded[1:] != padded[:-1])
    starts, stops = edges[::2], edges[1::2]
    k = int(np.argmax(stops - starts))
    return int(starts[k]), int(stops[k] - 1)


def certify(field: Field, f: Nonlinearity, ladder: BumpLadder) -> Optional[Outcome]:
    """The outcome certified by this snapshot, or None."""
    sup = field.sup
    if sup < f.alpha:
        return Outcome(OutcomeKind.VANISHING, field.t, sup, snapshot=field)
    for m, L in ladder.levels:
        if sup < m:
            break
        first, last = _longest_run(field.values >= m)
        if (last - first) * field.dx >= 2.0 * L:
            return Outcome(
                OutcomeKind.SPREADING, field.t, sup, m=m, L_m=L,
                interval=(first * field.dx, last * field.dx), snapshot=field,
            )
    return None


class OutcomeClassifier(RunHook):
    """Stops the run as soon as a certificate fires."""

    name = "classifier"

    def __init__(self, f: Nonlinearity, ladder: BumpLadder, interval: float = CLASSIFY_INTERVAL) -> None:
        super().__init__(interval)
        self.f = f
        self.ladder = ladder
        self.outcome: Optional[Outcome] = None
        self.last: Optional[Field] = None

    def on_snapshot(self, field: Field) -> bool:
        self.last = field
        self.outcome = certify(field, self.f, self.ladder)
        return self.outcome is not None


def classify_run(
    field: Field,
    cfg: SolverConfig,
    f: Nonlinearity,
    ladder: Optional[BumpLadder] = None,
    extra_hooks=(),
) -> Outcome:
    """Run until a certificate fires or cfg.max_t; Undecided carries the time reached."""
    cfg = cfg.resolved(f)
    ladder = ladder or BumpLadder.build(f)
    classifier = OutcomeClassifier(f, ladder)
    record = run(field, cfg, f, [classifier, *extra_hooks])
    if classifier.outcome is not None:
        return classifier.outcome
    final = record.field
    return Outcome(OutcomeKind.UNDECIDED, final.t, final.sup, snapshot=final.snapshot())
