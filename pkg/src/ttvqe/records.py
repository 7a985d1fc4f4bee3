"""Common result record for both optimizers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class OptRecord:
    """Outcome of one optimization run.

    ``trace`` holds (evals_used, best_value_so_far) checkpoints and is
    non-increasing in the value; ``evals_used`` counts every objective call.
    ``converged`` is False when the run stopped on a budget/iteration cap or
    a failed line search; ``message`` says which.  ``cache_hits`` counts
    memoized grid lookups that did not spend budget (tensor-train runs only).
    """

    best_theta: np.ndarray
    best_value: float
    evals_used: int
    trace: list[tuple[int, float]] = field(default_factory=list)
    wall_time: float = 0.0
    converged: bool = True
    message: str = ""
    cache_hits: int = 0
