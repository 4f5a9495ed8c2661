"""
Validated nonlinearity: condition (F) checks and the constants every other
package reads (alpha, lambda, theta, F(1), K).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from scipy import optimize

from constants import (
    DEFAULT_VALIDATION_SAMPLES,
    K_SAMPLE_RIGHT_END,
    RIGHT_SAMPLE_WIDTH,
    THETA_EDGE_OFFSET,
)
from errors import ValidationError
from nonlinearity.numerics import quad_checked
from nonlinearity.reaction import CubicReaction, DerivativeUnavailable, TabulatedReaction

logger = logging.getLogger(__name__)

Reaction = Union[CubicReaction, TabulatedReaction]

THETA_CHECK = "F has a zero theta in (alpha, 1)"


class NotBistable(ValidationError):
    """The sign pattern of condition (F) is violated."""
    pass


class NoThetaFound(ValidationError):
    """F has no zero in (alpha, 1): balanced or degenerate f."""
    pass


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of every sub-condition of (F) plus the constants found on the way."""

    checks: Tuple[ConditionCheck, ...]
    samples: int
    alpha: Optional[float] = None
    lam: Optional[float] = None
    theta: Optional[float] = None
    F_one: Optional[float] = None
    K_lower: Optional[float] = None
    k_order: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> Tuple[ConditionCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def raise_for_status(self) -> None:
        """Raise NotBistable / NoThetaFound if any sub-condition failed."""
        failed = self.failures()
        if not failed:
            return
        sign_failures = [c for c in failed if c.name != THETA_CHECK]
        if sign_failures:
            names = "; ".join(f"{c.name} ({c.detail})" for c in sign_failures)
            raise NotBistable(f"condition (F) violated: {names}")
        raise NoThetaFound(failed[0].detail)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "alpha": self.alpha,
            "lambda": self.lam,
            "theta": self.theta,
            "F_one": self.F_one,
            "K": self.K_lower,
            "k_order": self.k_order,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _find_alpha(reaction: Reaction, samples: int) -> Optional[float]:
    """First positive zero of f where it turns from negative to positive."""
    grid = np.linspace(0.0, 1.0, samples + 1)[1:-1]
    values = reaction.f(grid)
    positive = np.nonzero(values > 0.0)[0]
    if len(positive) == 0 or positive[0] == 0:
        return None
    i = positive[0]
    return float(optimize.brentq(lambda s: float(reaction.f(s)), grid[i - 1], grid[i], xtol=1e-15))


def _find_theta(reaction: Reaction, alpha: float, samples: int) -> Optional[float]:
    """Smallest zero of F in (alpha, 1): bracketed bisection, then a Newton polish."""
    grid = np.linspace(alpha + THETA_EDGE_OFFSET, 1.0 - THETA_EDGE_OFFSET, samples + 1)
    values = reaction.F(grid)
    if values[0] <= 0.0:
        return None
    crossing = np.nonzero(values <= 0.0)[0]
    if len(crossing) == 0:
        return None
    i = crossing[0]
    theta = float(optimize.brentq(lambda s: float(reaction.F(s)), grid[i - 1], grid[i], xtol=1e-15))
    for _ in range(3):
        slope = -2.0 * float(reaction.f(theta))
        if slope == 0.0:
            break
        candidate = theta - float(reaction.F(theta)) / slope
        if abs(float(reaction.F(candidate))) >= abs(float(reaction.F(theta))):
            break
        theta = candidate
    return theta


def _find_k_order(reaction: Reaction) -> Optional[int]:
    for k in range(2, 7):
        try:
            value = reaction.derivative_at_zero(k)
        except DerivativeUnavailable:
            return None
        if abs(value) > 1e-14:
            return k
    return None


def validate_F(
    reaction: Reaction,
    samples: int = DEFAULT_VALIDATION_SAMPLES,
    delta: float = RIGHT_SAMPLE_WIDTH,
) -> ValidationReport:
    """Check every sub-condition of (F) on a sample grid and compute alpha, theta, lambda, F(1), K."""
    checks = []
    f0 = float(reaction.f(0.0))
    fp0 = float(reaction.fp(0.0))
    checks.append(ConditionCheck("f(0) = 0", abs(f0) <= 1e-12, f"f(0) = {f0:.3e}"))
    checks.append(ConditionCheck("f'(0) < 0", fp0 < 0.0, f"f'(0) = {fp0:.6g}"))
    lam = float(np.sqrt(-fp0)) if fp0 < 0.0 else None

    right_end = 1.0 + delta
    covered = right_end <= reaction.s_max
    checks.append(ConditionCheck("f evaluable on [0, 1 + delta]", covered, f"s_max = {reaction.s_max:.6g}"))

    alpha = _find_alpha(reaction, samples)
    checks.append(ConditionCheck(
        "f changes sign from - to + in (0, 1)", alpha is not None,
        "" if alpha is None else f"alpha = {alpha:.15g}",
    ))

    theta = F_one = K_lower = None
    if alpha is not None:
        grid = np.linspace(0.0, 1.0, samples + 1)[1:-1]
        values = reaction.f(grid)
        left = grid < alpha * (1.0 - 1e-9)
        middle = grid > alpha * (1.0 + 1e-9)
        checks.append(ConditionCheck("f < 0 on (0, alpha)", bool(np.all(values[left] < 0.0))))
        checks.append(ConditionCheck("f > 0 on (alpha, 1)", bool(np.all(values[middle] > 0.0))))
        f1 = float(reaction.f(1.0))
        checks.append(ConditionCheck("f(1) = 0", abs(f1) <= 1e-10, f"f(1) = {f1:.3e}"))
        outside = np.linspace(1.0, right_end, samples + 1)[1:]
        checks.append(ConditionCheck("f < 0 on (1, 1 + delta]", bool(np.all(reaction.f(outside) < 0.0))))

        F_one = float(reaction.F(1.0))
        theta = _find_theta(reaction, alpha, samples)
        if theta is None:
            checks.append(ConditionCheck(
                THETA_CHECK, False,
                f"F(1) = {F_one:.6g}: F has no zero in (alpha, 1), f is balanced or degenerate",
            ))
        else:
            checks.append(ConditionCheck(THETA_CHECK, True, f"theta = {theta:.15g}"))
            inner = np.linspace(0.0, theta, samples + 1)[1:-1]
            checks.append(ConditionCheck("F > 0 on (0, theta)", bool(np.all(reaction.F(inner) > 0.0))))
            checks.append(ConditionCheck("F(1) < 0", F_one < 0.0, f"F(1) = {F_one:.6g}"))

        k_grid = np.linspace(1.0, min(K_SAMPLE_RIGHT_END, reaction.s_max), samples + 1)[1:]
        K_lower = float(-np.min(reaction.fp(k_grid)))

    report = ValidationReport(
        checks=tuple(checks), samples=samples, alpha=alpha, lam=lam, theta=theta,
        F_one=F_one, K_lower=K_lower, k_order=_find_k_order(reaction),
    )
    if report.passed:
        logger.debug("condition (F) holds: alpha=%.6g theta=%.6g lambda=%.6g", alpha, theta, lam)
    else:
        logger.info("condition (F) failed: %s", [c.name for c in report.failures()])
    return report


@dataclass(frozen=True)
class Nonlinearity:
    """A reaction term that passed validate_F, with its scalar constants attached."""

    reaction: Reaction
    alpha: float
    lam: float
    theta: float
    F_one: float
    K_lower: float
    k_order: Optional[int]
    report: ValidationReport = field(repr=False, compare=False)

    @classmethod
    def from_reaction(cls, reaction: Reaction, samples: int = DEFAULT_VALIDATION_SAMPLES) -> "Nonlinearity":
        report = validate_F(reaction, samples)
        report.raise_for_status()
        return cls(
            reaction=reaction, alpha=report.alpha, lam=report.lam, theta=report.theta,
            F_one=report.F_one, K_lower=report.K_lower, k_order=report.k_order, report=report,
        )

    @classmethod
    def cubic(cls, alpha: float) -> "Nonlinearity":
        return cls.from_reaction(CubicReaction(alpha))

    @property
    def kind(self) -> str:
        return self.reaction.kind

    def f(self, u):
        return self.reaction.f(u)

    def fp(self, u):
        return self.reaction.fp(u)

    def F(self, u):
        return self.reaction.F(u)

    def derivative_at_zero(self, k: int) -> float:
        return self.reaction.derivative_at_zero(k)

    def describe(self) -> Dict[str, Any]:
        return {**self.reaction.describe(), **self.report.to_dict()}


def eval_F(f: Nonlinearity, u: float, method: str = "auto") -> float:
    """
    F(u) = -2 int_0^u f(s) ds. The cubic uses its closed form unless method="quad";
    everything else goes through adaptive quadrature.
    """
    if u < 0.0:
        raise ValidationError(f"F is evaluated for u >= 0 only, got {u}")
    if method not in ("auto", "quad"):
        raise ValueError(f"unknown method {method!r}")
    if u == 0.0:
        return 0.0
    if method == "auto" and f.kind == "cubic":
        return float(f.F(u))
    return -2.0 * quad_checked(lambda s: float(f.f(s)), 0.0, u)
