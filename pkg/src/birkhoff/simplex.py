"""Dense tableau simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

The origin is feasible, so a single phase suffices. Entering and leaving
variables follow Bland's rule, which rules out cycling on the heavily
degenerate programs produced by interpolation-type data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class LPResult:
    x: np.ndarray
    objective: float
    dual: np.ndarray
    basis: np.ndarray
    iterations: int


class LPError(RuntimeError):
    pass


def solve_standard_lp(
    A: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    *,
    max_iter: int = 100_000,
    tol: float = 1e-11,
) -> LPResult:
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    if np.any(b < 0):
        raise LPError("right-hand side must be non-negative")
    # columns: n structural, m slacks; last column is the rhs
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :n] = c  # reduced costs of the maximisation
    basis = np.arange(n, n + m)
    iterations = 0
    while True:
        entering = np.flatnonzero(T[m, :-1] > tol)
        if entering.size == 0:
            break
        if iterations >= max_iter:
            raise LPError(f"no convergence after {max_iter} pivots")
        j = int(entering[0])
        col = T[:m, j]
        pos = np.flatnonzero(col > tol)
        if pos.size == 0:
            raise LPError("objective unbounded")
        ratios = T[pos, -1] / col[pos]
        best = ratios.min()
        ties = pos[ratios <= best + tol * max(1.0, abs(best))]
        i = int(ties[np.argmin(basis[ties])])
        T[i] /= T[i, j]
        others = np.arange(m + 1) != i
        T[others] -= np.outer(T[others, j], T[i])
        basis[i] = j
        iterations += 1

    # recompute the vertex and its multipliers from the original data
    full = np.hstack([A, np.eye(m)])
    B = full[:, basis]
    xb = np.linalg.solve(B, b)
    x = np.zeros(n + m)
    x[basis] = xb
    cost = np.concatenate([c, np.zeros(m)])
    dual = np.linalg.solve(B.T, cost[basis])
    return LPResult(x[:n], float(c @ x[:n]), dual, basis, iterations)
