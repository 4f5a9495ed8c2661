"""Time loop with hooks and append-only domain growth."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from nonlinearity import Nonlinearity
from pde_solver.diagnostics import energy, sign_changes_ux
from pde_solver.field import Field
from pde_solver.scheme import SolverConfig, step

logger = logging.getLogger(__name__)


class RunHook:
    """Called with a read-only snapshot at t0 and every `interval`; return True to stop the run."""

    name = "hook"

    def __init__(self, interval: float) -> None:
        if interval <= 0.0:
            raise ValueError(f"hook interval must be positive, got {interval}")
        self.interval = float(interval)

    def on_snapshot(self, field: Field) -> bool:
        return False


class SnapshotHook(RunHook):
    name = "snapshot"

    def __init__(self, interval: float) -> None:
        super().__init__(interval)
        self.snapshots: List[Field] = []

    def on_snapshot(self, field: Field) -> bool:
        self.snapshots.append(field)
        return False


class RunLogHook(RunHook):
    """Rows (t, umax, argmax, energy, signchanges, domain_len)."""

    name = "run_log"

    def __init__(self, interval: float, f: Nonlinearity) -> None:
        super().__init__(interval)
        self.f = f
        self.rows: List[Tuple[float, float, float, float, int, float]] = []

    def on_snapshot(self, field: Field) -> bool:
        i = int(np.argmax(field.values))
        self.rows.append((
            field.t, float(field.values[i]), i * field.dx,
            energy(field, self.f), sign_changes_ux(field), field.length,
        ))
        return False


@dataclass
class RunRecord:
    field: Field
    stop_reason: str
    stopped_by: Optional[str] = None
    growth_times: List[float] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return self.field.steps

    @property
    def clipped(self) -> int:
        return self.field.clipped

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.field.t,
            "steps": self.steps,
            "stop_reason": self.stop_reason,
            "stopped_by": self.stopped_by,
            "clipped": self.clipped,
            "domain_len": self.field.length,
            "growth_times": list(self.growth_times),
        }


def _needs_growth(values: np.ndarray, margin: int, tol: float) -> bool:
    return bool(np.max(values[max(0, len(values) - 1 - margin):]) > tol)


def run(
    field: Field,
    cfg: SolverConfig,
    f: Nonlinearity,
    hooks: Sequence[RunHook] = (),
) -> RunRecord:
    """
    Advance to cfg.max_t (cfg must be resolved) or until a hook asks to stop.
    Hooks fire on whole multiples of their interval counted in steps from the start.
    """
    if cfg.max_t is None or cfg.growth_margin is None:
        raise ValueError("run needs a resolved SolverConfig (call cfg.resolved(f))")
    total = int(round((cfg.max_t - field.t) / cfg.dt))
    every = [max(1, int(round(hook.interval / cfg.dt))) for hook in hooks]
    margin = cfg.margin_nodes()
    growth_times: List[float] = []

    for k in range(total + 1):
        if k > 0:
            field = step(field, cfg, f)
            while _needs_growth(field.values, margin, cfg.far_field_tol):
                field = field.grown()
                growth_times.append(field.t)
                logger.debug("domain grown to %.6g at t=%.6g", field.length, field.t)
        due = [hook for hook, count in zip(hooks, every) if k % count == 0]
        if due:
            snapshot = field.snapshot()
            for hook in due:
                if hook.on_snapshot(snapshot):
                    logger.debug("run stopped by %s at t=%.6g", hook.name, field.t)
                    return RunRecord(field, "hook", hook.name, growth_times)
    return RunRecord(field, "max_t", None, growth_times)
