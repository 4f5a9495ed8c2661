"""Bisection of the sharp threshold sigma* for the family sigma * phi."""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from constants import BRACKET_CAP, DEFAULT_MAX_ITER, DEFAULT_TOL_REL, UNDECIDED_RETRY_FACTOR
from errors import NumericalFailure
from nonlinearity import Nonlinearity
from pde_solver import InitialDatum, SolverConfig, field_from_datum
from threshold.lengths import BumpLadder
from threshold.outcome import Outcome, OutcomeKind, classify_run

logger = logging.getLogger(__name__)


class BracketNotFound(NumericalFailure):
    """No Spreading (or Vanishing) sigma within the 2^30 search range."""
    pass


class MaxIterExceeded(NumericalFailure):
    """Iteration budget spent before the bracket reached tol_rel; carries the best bracket."""

    def __init__(self, message: str, result: "ThresholdResult") -> None:
        super().__init__(message)
        self.result = result


class BisectionStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITER = "max_iter"
    UNDECIDED = "undecided"
    STALLED = "stalled"           # bracket endpoints are adjacent floats above tol_rel


@dataclass(frozen=True)
class ThresholdResult:
    sigma_lo: float
    sigma_hi: float
    iterations: int
    endpoint_outcomes: Tuple[Outcome, Outcome]
    phi: Dict[str, Any]
    b: float
    status: BisectionStatus
    tol_rel: float
    history: Tuple[Tuple[float, str], ...] = field(default_factory=tuple)
    undecided_sigma: Optional[float] = None

    @property
    def width(self) -> float:
        return self.sigma_hi - self.sigma_lo

    @property
    def relative_width(self) -> float:
        return self.width / self.sigma_hi

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.sigma_lo + self.sigma_hi)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "b": self.b,
            "sigma_lo": self.sigma_lo,
            "sigma_hi": self.sigma_hi,
            "sigma_mid": self.midpoint,
            "relative_width": self.relative_width,
            "iterations": self.iterations,
            "status": self.status.value,
            "tol_rel": self.tol_rel,
            "phi": self.phi,
            "certificates": {
                "lower": self.endpoint_outcomes[0].to_dict(),
                "upper": self.endpoint_outcomes[1].to_dict(),
            },
            "undecided_sigma": self.undecided_sigma,
            "history": [{"sigma": s, "outcome": k} for s, k in self.history],
        }


class SigmaProbe:
    """Runs sigma * phi to a certificate, retrying an Undecided run once with a longer horizon."""

    def __init__(self, datum: InitialDatum, b: float, cfg: SolverConfig, f: Nonlinearity, ladder: BumpLadder) -> None:
        self.datum = datum
        self.b = b
        self.cfg = cfg.resolved(f)
        self.f = f
        self.ladder = ladder
        self.history: List[Tuple[float, str]] = []

    def __call__(self, sigma: float) -> Outcome:
        field0 = field_from_datum(self.datum.scaled(sigma), self.b, self.cfg)
        outcome = classify_run(field0, self.cfg, self.f, self.ladder)
        if outcome.kind is OutcomeKind.UNDECIDED:
            longer = replace(self.cfg, max_t=self.cfg.max_t * UNDECIDED_RETRY_FACTOR)
            logger.info("sigma=%.17g undecided at t=%.6g; retrying to t=%.6g", sigma, outcome.t, longer.max_t)
            field0 = field_from_datum(self.datum.scaled(sigma), self.b, longer)
            outcome = classify_run(field0, longer, self.f, self.ladder)
        self.history.append((float(sigma), outcome.kind.value))
        logger.debug("sigma=%.17g -> %s at t=%.6g", sigma, outcome.kind.value, outcome.t)
        return outcome


def _find_bracket(probe: SigmaProbe) -> Tuple[float, Outcome, float, Outcome]:
    """Double from 1 until Spreading and halve from 1 until Vanishing."""
    start = probe(1.0)
    lo = hi = None
    if start.kind is OutcomeKind.SPREADING:
        hi = (1.0, start)
    elif start.kind is OutcomeKind.VANISHING:
        lo = (1.0, start)

    sigma = 1.0
    while hi is None:
        sigma *= 2.0
        if sigma > BRACKET_CAP:
            raise BracketNotFound(f"no spreading up to sigma = 2^30 (b={probe.b}); is inf f' > -inf?")
        outcome = probe(sigma)
        if outcome.kind is OutcomeKind.SPREADING:
            hi = (sigma, outcome)
        elif outcome.kind is OutcomeKind.VANISHING:
            lo = (sigma, outcome)

    sigma = 1.0 if lo is None else lo[0]
    while lo is None:
        sigma *= 0.5
        if sigma < 1.0 / BRACKET_CAP:
            raise BracketNotFound(f"no vanishing down to sigma = 2^-30 (b={probe.b})")
        outcome = probe(sigma)
        if outcome.kind is OutcomeKind.VANISHING:
            lo = (sigma, outcome)
        elif outcome.kind is OutcomeKind.SPREADING:
            hi = (sigma, outcome)
    return lo[0], lo[1], hi[0], hi[1]


def bisect_sigma(
    phi: InitialDatum,
    b: float,
    cfg: SolverConfig,
    f: Nonlinearity,
    tol_rel: float = DEFAULT_TOL_REL,
    max_iter: int = DEFAULT_MAX_ITER,
    heuristic: bool = False,
    strict: bool = False,
    ladder: Optional[BumpLadder] = None,
) -> ThresholdResult:
    """
    Bracket sigma* between a certified Vanishing and a certified Spreading value
    and bisect until (hi - lo) / hi <= tol_rel. An Undecided midpoint ends the
    search with the bracket as it stands unless heuristic=True, in which case the
    midpoint goes up when the final sup exceeds theta and down otherwise.
    """
    ladder = ladder or BumpLadder.build(f)
    probe = SigmaProbe(phi, b, cfg, f, ladder)
    lo, lo_outcome, hi, hi_outcome = _find_bracket(probe)
    logger.info("b=%.6g: initial bracket [%.17g, %.17g]", b, lo, hi)

    iterations = 0
    status = BisectionStatus.CONVERGED
    undecided = None
    while (hi - lo) / hi > tol_rel:
        if iterations >= max_iter:
            status = BisectionStatus.MAX_ITER
            break
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            status = BisectionStatus.STALLED
            logger.warning("b=%.6g: bracket [%.17g, %.17g] cannot be split further", b, lo, hi)
            break
        outcome = probe(mid)
        iterations += 1
        if outcome.kind is OutcomeKind.SPREADING:
            hi, hi_outcome = mid, outcome
        elif outcome.kind is OutcomeKind.VANISHING:
            lo, lo_outcome = mid, outcome
        elif heuristic:
            if outcome.sup > f.theta:
                hi, hi_outcome = mid, outcome
            else:
                lo, lo_outcome = mid, outcome
        else:
            status = BisectionStatus.UNDECIDED
            undecided = mid
            logger.warning("b=%.6g: midpoint %.17g stayed undecided; returning bracket as is", b, mid)
            break

    result = ThresholdResult(
        sigma_lo=lo, sigma_hi=hi, iterations=iterations,
        endpoint_outcomes=(lo_outcome, hi_outcome), phi=phi.describe(), b=float(b),
        status=status, tol_rel=tol_rel, history=tuple(probe.history), undecided_sigma=undecided,
    )
    if status is BisectionStatus.MAX_ITER:
        message = f"b={b}: {max_iter} iterations left relative width {result.relative_width:.3e}"
        if strict:
            raise MaxIterExceeded(message, result)
        logger.warning(message)
    return result
