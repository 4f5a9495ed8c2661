"""sigma*(b) over a list of b values, bisections spread over worker threads."""

import asyncio
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

from config import THREADS
from nonlinearity import Nonlinearity
from pde_solver import InitialDatum, SolverConfig
from threshold.bisection import ThresholdResult, bisect_sigma
from threshold.lengths import BumpLadder

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveResult:
    results: List[ThresholdResult]
    monotone: bool

    def rows(self) -> List[tuple]:
        return [
            (r.b, r.sigma_lo, r.sigma_hi, r.midpoint, r.width, r.iterations, r.status.value)
            for r in self.results
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {"monotone": self.monotone, "results": [r.to_dict() for r in self.results]}


def is_nonincreasing(results: Sequence[ThresholdResult]) -> bool:
    """sigma*(b) nonincreasing within bracket widths: lo(b_j) <= hi(b_i) for b_i < b_j."""
    return all(later.sigma_lo <= earlier.sigma_hi for earlier, later in zip(results, results[1:]))


async def _gather(phi, b_list, cfg, f, ladder, threads, kwargs) -> List[ThresholdResult]:
    semaphore = asyncio.Semaphore(max(1, threads))

    async def one(b: float) -> ThresholdResult:
        async with semaphore:
            return await asyncio.to_thread(bisect_sigma, phi, b, cfg, f, ladder=ladder, **kwargs)

    return await asyncio.gather(*(one(b) for b in b_list))


def sigma_star_curve(
    phi: InitialDatum,
    b_list: Sequence[float],
    cfg: SolverConfig,
    f: Nonlinearity,
    threads: int = THREADS,
    **kwargs,
) -> CurveResult:
    """Bisect sigma* at every b; results come back ordered by b."""
    ladder = BumpLadder.build(f)
    results = asyncio.run(_gather(phi, sorted(b_list), cfg, f, ladder, threads, kwargs))
    monotone = is_nonincreasing(results)
    if not monotone:
        logger.warning("sigma*(b) is not nonincreasing within bracket widths")
    return CurveResult(results=list(results), monotone=monotone)
