"""Deterministic sampling grids on balls and boxes.

Ball grids come from a scrambled Halton sequence: even-indexed points fill
the interior uniformly, odd-indexed points lie on the bounding sphere (the
maxima of Lebesgue functions tend to sit there). Box grids are tensor
lattices including the corners. Both are prefix-stable in the sense that
matters for refinement: a Halton grid of size N is a prefix of the grid of
size 2N, and a lattice with p points per axis is contained in the one with
2p - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .errors import BirkhoffError, DimensionMismatchError


@dataclass(frozen=True)
class Ball:
    n: int
    radius: float = 1.0
    center: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"ball radius must be positive, got {self.radius}")
        if self.center is not None and len(self.center) != self.n:
            raise DimensionMismatchError(f"ball center {self.center} is not in R^{self.n}")

    def to_dict(self) -> dict:
        out = {"kind": "ball", "radius": self.radius}
        if self.center is not None:
            out["center"] = list(self.center)
        return out


@dataclass(frozen=True)
class Box:
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise DimensionMismatchError("box bounds have different lengths")
        if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError(f"empty box {self.lower} .. {self.upper}")

    @property
    def n(self) -> int:
        return len(self.lower)

    def to_dict(self) -> dict:
        return {"kind": "box", "lower": list(self.lower), "upper": list(self.upper)}


Domain = Ball | Box


def unit_ball(n: int) -> Ball:
    return Ball(n)


def ball_points(n: int, size: int, seed: int = 0) -> np.ndarray:
    """``size`` points of the closed unit ball in R^n, half of them on the sphere."""
    if size < 1:
        raise BirkhoffError("grid must contain at least one point")
    u = qmc.Halton(d=n + 1, scramble=True, seed=seed).random(size)
    u = np.clip(u, 1e-12, 1 - 1e-12)
    g = ndtri(u[:, :n])
    norms = np.linalg.norm(g, axis=1)
    g[norms == 0] = np.eye(n)[0]
    norms[norms == 0] = 1.0
    dirs = g / norms[:, None]
    radius = np.where(np.arange(size) % 2 == 0, u[:, n] ** (1.0 / n), 1.0)
    return dirs * radius[:, None]


def lattice_points(lower, upper, size: int) -> np.ndarray:
    """Tensor lattice with ``floor(size ** (1/n))`` (at least 2) points per axis."""
    n = len(lower)
    if size < 1:
        raise BirkhoffError("grid must contain at least one point")
    per_axis = max(2, int(np.floor(size ** (1.0 / n) + 1e-9)))
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(lower, upper)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def domain_grid(domain: Domain, size: int, seed: int = 0) -> np.ndarray:
    if isinstance(domain, Ball):
        pts = domain.radius * ball_points(domain.n, size, seed)
        if domain.center is not None:
            pts = pts + np.asarray(domain.center, dtype=float)
        return pts
    if isinstance(domain, Box):
        return lattice_points(domain.lower, domain.upper, size)
    raise TypeError(f"unknown domain {domain!r}")
