import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize

logger = logging.getLogger(__name__)


@dataclass
class MultistartResult:
    x: np.ndarray
    value: float
    values: list[float] = field(default_factory=list)
    iterations: list[int] = field(default_factory=list)
    successes: list[bool] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return any(self.successes)


def sphere_starts(n_params: int, restarts: int, seed: int) -> np.ndarray:
    """Starting points drawn uniformly on the unit sphere, one child stream per restart."""
    children = np.random.SeedSequence(seed).spawn(restarts)
    starts = np.empty((restarts, n_params))
    for row, child in zip(starts, children):
        x = np.random.default_rng(child).standard_normal(n_params)
        row[:] = x / np.linalg.norm(x)
    return starts


def _run_single(objective: Callable[[np.ndarray], float], x0: np.ndarray,
                method: str, options: dict):
    return minimize(lambda x: -objective(x), x0, method=method, options=options)


def multistart_maximize(
    objective: Callable[[np.ndarray], float],
    starts: np.ndarray,
    method: str = "L-BFGS-B",
    options: Optional[dict] = None,
    workers: int = 1,
) -> MultistartResult:
    """
    Maximize `objective` by local searches from every row of `starts`.

    Results are collected in start order, so the outcome does not depend on
    how many worker threads ran the searches.
    """
    options = options or {}
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda x0: _run_single(objective, x0, method, options), starts))
    else:
        results = [_run_single(objective, x0, method, options) for x0 in starts]

    values = [float(-r.fun) for r in results]
    best = int(np.argmax(values))
    for i, r in enumerate(results):
        logger.debug("restart %d: value=%.10g success=%s nit=%s", i, values[i], r.success, r.get("nit"))

    report = MultistartResult(
        x=np.asarray(results[best].x),
        value=values[best],
        values=values,
        iterations=[int(r.get("nit", 0) or 0) for r in results],
        successes=[bool(r.success) for r in results],
    )
    if not report.converged:
        logger.warning("none of %d restarts reported convergence", len(results))
    return report


@dataclass
class OptimizationReport:
    best_value: float
    best_state: object
    restarts: int
    values: list[float]
    seed: int
    iterations: list[int]
    converged: bool
    extras: dict = field(default_factory=dict)

    @classmethod
    def from_result(cls, result: MultistartResult, best_state, seed: int) -> "OptimizationReport":
        return cls(
            best_value=result.value,
            best_state=best_state,
            restarts=len(result.values),
            values=result.values,
            seed=seed,
            iterations=result.iterations,
            converged=result.converged,
        )
