"""Certified run outcomes and bisection of the sharp threshold sigma*."""

from threshold.bisection import (
    BisectionStatus,
    BracketNotFound,
    MaxIterExceeded,
    SigmaProbe,
    ThresholdResult,
    bisect_sigma,
)
from threshold.curve import CurveResult, is_nonincreasing, sigma_star_curve
from threshold.lengths import BumpLadder, bump_levels, compute_L_of_m
from threshold.outcome import Outcome, OutcomeClassifier, OutcomeKind, certify, classify_run
from threshold.verify import CertificateCheck, verify_spreading, verify_vanishing

__all__ = [
    "BisectionStatus",
    "BracketNotFound",
    "BumpLadder",
    "CertificateCheck",
    "CurveResult",
    "MaxIterExceeded",
    "Outcome",
    "OutcomeClassifier",
    "OutcomeKind",
    "SigmaProbe",
    "ThresholdResult",
    "bisect_sigma",
    "bump_levels",
    "certify",
    "classify_run",
    "compute_L_of_m",
    "is_nonincreasing",
    "sigma_star_curve",
    "verify_spreading",
    "verify_vanishing",
]
