"""Pivoted LU with a pivot-ratio singularity test, and SVD null spaces."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

PIVOT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Factorization:
    lu: np.ndarray
    piv: np.ndarray
    pivot_ratio: float
    sign: float
    log_magnitude: float

    @property
    def size(self) -> int:
        return self.lu.shape[0]

    def regular(self, tol: float = PIVOT_TOLERANCE) -> bool:
        return self.pivot_ratio > tol

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return scipy.linalg.lu_solve((self.lu, self.piv), rhs, check_finite=False)


def lu_factor(a: np.ndarray) -> Factorization:
    """Partial-pivoting LU of a square matrix with determinant in sign/log form."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"square matrix required, got shape {a.shape}")
    if a.shape[0] == 0:
        return Factorization(a.copy(), np.zeros(0, dtype=np.int32), 1.0, 1.0, 0.0)
    with warnings.catch_warnings():
        # exactly singular input is a legitimate outcome here, reported via pivot_ratio
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    diag = np.abs(np.diag(lu))
    top = diag.max()
    ratio = float(diag.min() / top) if top > 0 else 0.0
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    sign = (-1.0) ** swaps * float(np.prod(np.sign(np.diag(lu))))
    with np.errstate(divide="ignore"):
        logmag = float(np.sum(np.log(diag)))
    if sign == 0.0:
        logmag = -math.inf
    return Factorization(lu, piv, ratio, sign, logmag)


def equilibrate(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Scale rows then columns to unit max-norm. Returns (scaled, row_scale, col_scale).

    ``scaled = diag(1/row_scale) @ a @ diag(1/col_scale)``; zero rows or
    columns keep scale 1.
    """
    a = np.asarray(a, dtype=float)
    r = np.abs(a).max(axis=1) if a.size else np.ones(a.shape[0])
    r = np.where(r > 0, r, 1.0)
    b = a / r[:, None]
    c = np.abs(b).max(axis=0) if b.size else np.ones(a.shape[1])
    c = np.where(c > 0, c, 1.0)
    return b / c[None, :], r, c


def numerical_rank(s: np.ndarray, tol: float) -> int:
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))
