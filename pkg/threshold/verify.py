"""Independent re-checks of Spreading and Vanishing certificates."""

import logging
from dataclasses import dataclass, replace

import numpy as np

from constants import VANISHING_CONFIRM_TIME
from nonlinearity import Nonlinearity
from pde_solver import SnapshotHook, SolverConfig, run
from steady_states import build_compact_bump
from threshold.outcome import Outcome, OutcomeKind

logger = logging.getLogger(__name__)

VERIFY_BUMP_INTERVALS = 2000


@dataclass(frozen=True)
class CertificateCheck:
    passed: bool
    margin: float
    detail: str = ""


def verify_spreading(outcome: Outcome, f: Nonlinearity, n: int = VERIFY_BUMP_INTERVALS) -> CertificateCheck:
    """u >= v_m(. - r) on [r, r + 2 L_m] with v_m built afresh and r the window start."""
    if outcome.kind is not OutcomeKind.SPREADING or outcome.snapshot is None:
        raise ValueError("verify_spreading needs a Spreading outcome with its snapshot")
    bump = build_compact_bump(f, outcome.m, n)
    snapshot = outcome.snapshot
    r = outcome.interval[0]
    x = snapshot.x
    support = (x >= r) & (x <= r + 2.0 * bump.half_width)
    margin = float(np.min(snapshot.values[support] - bump(x[support] - r)))
    return CertificateCheck(margin >= 0.0, margin, f"m={outcome.m:.6g}, L_m={bump.half_width:.6g}, r={r:.6g}")


def verify_vanishing(
    outcome: Outcome,
    cfg: SolverConfig,
    f: Nonlinearity,
    duration: float = VANISHING_CONFIRM_TIME,
) -> CertificateCheck:
    """Continue the run for `duration` and require sup u to stay below alpha and decrease."""
    if outcome.kind is not OutcomeKind.VANISHING or outcome.snapshot is None:
        raise ValueError("verify_vanishing needs a Vanishing outcome with its snapshot")
    start = outcome.snapshot.copy()
    cfg = replace(cfg.resolved(f), max_t=start.t + duration)
    hook = SnapshotHook(1.0)
    run(start, cfg, f, [hook])
    sups = np.array([snap.sup for snap in hook.snapshots])
    increase = float(np.max(np.diff(sups))) if len(sups) > 1 else 0.0
    below = bool(np.all(sups < f.alpha))
    passed = below and increase <= 1e-12 * max(float(sups[0]), np.finfo(float).tiny)
    return CertificateCheck(passed, -increase, f"sup {sups[0]:.3e} -> {sups[-1]:.3e} over t={duration}")
