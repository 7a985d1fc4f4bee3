"""Maximal-volume submatrix selection and two-dimensional cross
approximation of an implicitly given matrix.

``maxvol`` finds R rows of a tall N x R matrix B whose square submatrix
B_hat has (locally) maximal |det|, certified by the dominance property
that every entry of B B_hat^{-1} is at most 1 + tol in absolute value.

``cross_approx_2d`` alternates column and row maxvol passes over an entry
oracle, producing the skeleton factors A_C, A_hat, A_R of the rank-R
reconstruction A ~ A_C A_hat^{-1} A_R while tracking the largest entry seen.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg


class MaxvolError(RuntimeError):
    """Raised when no nonsingular R x R submatrix can be located."""


def _lu_row_candidates(mat: np.ndarray) -> np.ndarray:
    """Initial row set from a partially pivoted LU: the first R pivot rows."""
    n_rows, n_cols = mat.shape
    with warnings.catch_warnings():
        # Rank-deficient input triggers a zero-pivot warning; singularity is
        # handled by the caller's jitter-and-retry path.
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        _, piv = scipy.linalg.lu_factor(mat, check_finite=False)
    perm = np.arange(n_rows)
    for i, p in enumerate(piv[:n_cols]):
        perm[i], perm[p] = perm[p], perm[i]
    return perm[:n_cols]


def maxvol(
    mat: np.ndarray,
    tol: float = 0.01,
    max_swaps: int = 100,
    rng: np.random.Generator | None = None,
    return_history: bool = False,
):
    """Select R row indices (0-based) of the N x R matrix ``mat`` forming a
    dominant submatrix: all entries of mat @ inv(mat[rows]) have absolute
    value <= 1 + tol on exit.

    Rows are grown greedily from an LU-pivot seed: while some entry of the
    coefficient matrix exceeds 1 + tol, the offending row replaces the basis
    row it dominates, which multiplies |det| of the submatrix by that entry.
    A square input returns all rows.  Rank-deficient input gets one jitter
    of size 1e-12 before giving up.

    With ``return_history`` also returns the list of |det| values of the
    selected submatrix across swap iterations (for diagnostics).
    """
    if tol <= 0:
        raise ValueError("dominance tolerance must be positive")
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2:
        raise ValueError("maxvol expects a matrix")
    n_rows, n_cols = mat.shape
    if n_rows < n_cols:
        raise ValueError(f"need at least as many rows as columns, got {mat.shape}")
    if n_rows == n_cols:
        rows = np.arange(n_rows)
        return (rows, [abs(np.linalg.det(mat))]) if return_history else rows

    rows = _lu_row_candidates(mat)
    history = [abs(np.linalg.det(mat[rows]))]
    jittered = False
    swaps = 0
    while swaps < max_swaps:
        try:
            # coeff = mat @ inv(mat[rows]); rows of the current basis map to
            # identity rows, so every basis entry is bounded by 1 already.
            coeff = np.linalg.solve(mat[rows].T, mat.T).T
        except np.linalg.LinAlgError:
            # Rank-deficient input: every R x R submatrix is singular.  One
            # jitter makes the matrix full rank almost surely; a second
            # singularity means something is genuinely broken.
            if jittered:
                raise MaxvolError(
                    f"matrix of shape {mat.shape} is rank deficient; no "
                    "nonsingular submatrix found even after jitter"
                ) from None
            if rng is None:
                rng = np.random.default_rng(0)
            mat = mat + 1e-12 * rng.standard_normal(mat.shape)
            jittered = True
            rows = _lu_row_candidates(mat)
            history = [abs(np.linalg.det(mat[rows]))]
            continue
        flat = np.argmax(np.abs(coeff))
        i, j = np.unravel_index(flat, coeff.shape)
        if abs(coeff[i, j]) <= 1.0 + tol:
            break
        rows[j] = i
        history.append(abs(np.linalg.det(mat[rows])))
        swaps += 1
    rows = np.sort(rows)
    return (rows, history) if return_history else rows


@dataclass
class CrossResult:
    """Outcome of a 2-d cross approximation pass.

    ``best_index`` / ``best_value`` give the largest entry among all entries
    the oracle was asked for; ``col_factor`` (N1 x R), ``core`` (R x R) and
    ``row_factor`` (R x N2) are the skeleton factors whose product
    col_factor @ inv(core) @ row_factor reconstructs a rank-R matrix.
    ``evals`` counts oracle entry evaluations; ``truncated`` is set when the
    evaluation budget ran out before the requested iterations finished.
    """

    best_index: tuple[int, int]
    best_value: float
    col_factor: np.ndarray
    core: np.ndarray
    row_factor: np.ndarray
    row_indices: np.ndarray
    col_indices: np.ndarray
    evals: int
    truncated: bool = False


def cross_approx_2d(
    entry_oracle,
    shape: tuple[int, int],
    rank: int,
    iterations: int = 4,
    tol: float = 0.01,
    seed: int = 0,
    max_evals: int | None = None,
) -> CrossResult:
    """Search an implicit N1 x N2 matrix for its largest entry by cross
    approximation with rank ``rank``.

    ``entry_oracle(i, j)`` returns the matrix entry.  Starting from ``rank``
    random columns, the method alternates maxvol row and column selection for
    ``iterations`` rounds, evaluating only the sampled crosses.  Every
    evaluated entry competes for the reported maximum.
    """
    n1, n2 = shape
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if rank > min(n1, n2):
        raise ValueError(f"rank {rank} exceeds matrix shape {shape}")
    rng = np.random.default_rng(seed)

    seen: dict[tuple[int, int], float] = {}
    state = {"best": -np.inf, "best_idx": (0, 0), "truncated": False}

    def lookup(i: int, j: int) -> float:
        key = (int(i), int(j))
        if key not in seen:
            if max_evals is not None and len(seen) >= max_evals:
                state["truncated"] = True
                return 0.0
            value = float(entry_oracle(*key))
            seen[key] = value
            if value > state["best"]:
                state["best"] = value
                state["best_idx"] = key
        return seen[key]

    def block(row_ids: np.ndarray, col_ids: np.ndarray) -> np.ndarray:
        return np.array([[lookup(i, j) for j in col_ids] for i in row_ids])

    all_rows = np.arange(n1)
    all_cols = np.arange(n2)
    col_ids = np.sort(rng.choice(n2, size=rank, replace=False))
    row_ids = np.arange(rank)
    for _ in range(iterations):
        tall = block(all_rows, col_ids)
        if state["truncated"]:
            break
        row_ids = maxvol(tall, tol=tol, rng=rng)
        wide = block(row_ids, all_cols)
        if state["truncated"]:
            break
        col_ids = maxvol(wide.T, tol=tol, rng=rng)

    col_factor = block(all_rows, col_ids)
    row_factor = block(row_ids, all_cols)
    core = col_factor[row_ids]
    return CrossResult(
        best_index=state["best_idx"],
        best_value=state["best"],
        col_factor=col_factor,
        core=core,
        row_factor=row_factor,
        row_indices=row_ids,
        col_indices=col_ids,
        evals=len(seen),
        truncated=state["truncated"],
    )
