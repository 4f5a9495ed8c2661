"""Semi-implicit solver for u_t = u_xx + f(u) on a growing half-line with a Robin boundary."""

from pde_solver.datum import (
    BumpShape,
    DatumFamily,
    InitialDatum,
    bump_offset,
    bump_shape,
    capped_ground,
    field_from_datum,
    scaled_bump,
    twin_bump,
)
from pde_solver.diagnostics import DecayReport, decay_check, energy, robin_residual, sign_changes_ux
from pde_solver.field import Field
from pde_solver.runner import RunHook, RunLogHook, RunRecord, SnapshotHook, run
from pde_solver.scheme import NegativeUndershoot, NumericalBlowup, SolverConfig, laplacian, step

__all__ = [
    "BumpShape",
    "DatumFamily",
    "DecayReport",
    "Field",
    "InitialDatum",
    "NegativeUndershoot",
    "NumericalBlowup",
    "RunHook",
    "RunLogHook",
    "RunRecord",
    "SnapshotHook",
    "SolverConfig",
    "bump_offset",
    "bump_shape",
    "capped_ground",
    "decay_check",
    "energy",
    "field_from_datum",
    "laplacian",
    "robin_residual",
    "run",
    "scaled_bump",
    "sign_changes_ux",
    "step",
    "twin_bump",
]
