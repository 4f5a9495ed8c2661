"""Bistable nonlinearity: validation of condition (F), derived constants, shift regimes."""

from nonlinearity.derived import DerivedConstants, H, compute_constants
from nonlinearity.loader import ConfigParseError, load_nonlinearity, nonlinearity_from_dict
from nonlinearity.model import (
    ConditionCheck,
    NoThetaFound,
    NotBistable,
    Nonlinearity,
    ValidationReport,
    eval_F,
    validate_F,
)
from nonlinearity.numerics import QuadratureFailure
from nonlinearity.reaction import CubicReaction, DerivativeUnavailable, TabulatedReaction, quartic_columns
from nonlinearity.regime import RegimeLabel, RegimeReport, ground_shift_roots, regime_partition, shape_ratio

__all__ = [
    "ConditionCheck",
    "ConfigParseError",
    "CubicReaction",
    "DerivativeUnavailable",
    "DerivedConstants",
    "H",
    "NoThetaFound",
    "NotBistable",
    "Nonlinearity",
    "QuadratureFailure",
    "RegimeLabel",
    "RegimeReport",
    "TabulatedReaction",
    "ValidationReport",
    "compute_constants",
    "eval_F",
    "ground_shift_roots",
    "load_nonlinearity",
    "nonlinearity_from_dict",
    "quartic_columns",
    "regime_partition",
    "shape_ratio",
    "validate_F",
]
