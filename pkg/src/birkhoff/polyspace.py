"""Multi-indices, dense real polynomials and directional derivatives.

Column convention used everywhere in the package: inside one degree the
multi-indices are sorted in descending lexicographic order (first coordinate
most significant); across degrees the full basis of ``P_n^d`` is ordered by
ascending total degree. ``basis(2, 2)`` is therefore::

    (0,0), (1,0), (0,1), (2,0), (1,1), (0,2)
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateNodeError,
    DegreeError,
    DimensionMismatchError,
    InvalidDimensionError,
)

MultiIndex = tuple[int, ...]


def _check_dim(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise InvalidDimensionError(f"dimension must be a positive integer, got {n!r}")


def homogeneous_dim(n: int, k: int) -> int:
    """Number of monomials of total degree exactly ``k`` in ``n`` variables."""
    _check_dim(n)
    if k < 0:
        raise DegreeError(f"degree must be non-negative, got {k}")
    value = math.comb(k + n - 1, n - 1)
    if value > sys.maxsize:
        raise OverflowError(f"N({n},{k}) = C({k + n - 1},{n - 1}) exceeds the index range")
    return value


def poly_dim(n: int, d: int) -> int:
    """Dimension of the space of polynomials of degree <= d."""
    return sum(homogeneous_dim(n, k) for k in range(d + 1))


@lru_cache(maxsize=None)
def _enumerate(n: int, k: int) -> tuple[MultiIndex, ...]:
    if n == 1:
        return ((k,),)
    out: list[MultiIndex] = []
    for first in range(k, -1, -1):
        for rest in _enumerate(n - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_multi_indices(n: int, k: int) -> list[MultiIndex]:
    """All ``alpha`` with ``|alpha| = k``, in descending lexicographic order."""
    count = homogeneous_dim(n, k)
    indices = list(_enumerate(int(n), int(k)))
    assert len(indices) == count
    return indices


@lru_cache(maxsize=None)
def _basis(n: int, d: int) -> tuple[MultiIndex, ...]:
    return tuple(a for k in range(d + 1) for a in _enumerate(n, k))


def basis(n: int, d: int) -> list[MultiIndex]:
    """Monomial basis of ``P_n^d``: ascending degree, lex-descending inside a degree."""
    _check_dim(n)
    if d < 0:
        raise DegreeError(f"degree must be non-negative, got {d}")
    return list(_basis(int(n), int(d)))


def degree_slices(n: int, d: int) -> list[slice]:
    """Column range of each homogeneous degree inside :func:`basis`."""
    out, start = [], 0
    for k in range(d + 1):
        stop = start + homogeneous_dim(n, k)
        out.append(slice(start, stop))
        start = stop
    return out


@dataclass(frozen=True, eq=True)
class Polynomial:
    """Real polynomial in ``n`` variables of degree at most ``d``.

    ``coeffs`` maps exponent tuples to coefficients; absent keys are zero and
    the zero polynomial has an empty map.
    """

    n: int
    d: int
    coeffs: Mapping[MultiIndex, float] = field(default_factory=dict)

    def __post_init__(self):
        _check_dim(self.n)
        if self.d < 0:
            raise DegreeError(f"degree bound must be non-negative, got {self.d}")
        clean: dict[MultiIndex, float] = {}
        for alpha, c in dict(self.coeffs).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n:
                raise DimensionMismatchError(f"multi-index {alpha} has length != {self.n}")
            if any(a < 0 for a in alpha):
                raise DegreeError(f"negative exponent in {alpha}")
            if sum(alpha) > self.d:
                raise DegreeError(f"monomial {alpha} exceeds degree bound {self.d}")
            c = float(c)
            if c != 0.0:
                clean[alpha] = c
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    def __hash__(self):
        return hash((self.n, self.d, tuple(sorted(self.coeffs.items()))))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.d == other.d and dict(self.coeffs) == dict(other.coeffs)

    @classmethod
    def zero(cls, n: int, d: int) -> "Polynomial":
        return cls(n, d, {})

    @classmethod
    def from_vector(cls, n: int, d: int, vec: Sequence[float]) -> "Polynomial":
        """Inverse of :meth:`to_vector`."""
        alphas = _basis(n, d)
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (len(alphas),):
            raise DimensionMismatchError(f"expected {len(alphas)} coefficients, got {vec.shape}")
        return cls(n, d, {a: c for a, c in zip(alphas, vec.tolist()) if c != 0.0})

    def to_vector(self) -> np.ndarray:
        """Coefficients in the order of :func:`basis`."""
        alphas = _basis(self.n, self.d)
        return np.array([self.coeffs.get(a, 0.0) for a in alphas], dtype=float)

    @property
    def degree(self) -> int:
        """Actual total degree (-1 for the zero polynomial)."""
        return max((sum(a) for a in self.coeffs), default=-1)

    def with_degree(self, d: int) -> "Polynomial":
        return Polynomial(self.n, d, self.coeffs)

    def _aligned(self, other: "Polynomial") -> int:
        if other.n != self.n:
            raise DimensionMismatchError(f"cannot combine polynomials in {self.n} and {other.n} variables")
        return max(self.d, other.d)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        d = self._aligned(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0.0) + c
        return Polynomial(self.n, d, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, self.d, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, scalar: float) -> "Polynomial":
        return Polynomial(self.n, self.d, {a: scalar * c for a, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __call__(self, x) -> float:
        return eval_poly(self, x)

    def __repr__(self) -> str:
        terms = ", ".join(f"{a}: {c!r}" for a, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), [-e for e in t[0]])))
        return f"Polynomial(n={self.n}, d={self.d}, {{{terms}}})"


def _as_point(x, n: int, what: str = "point") -> np.ndarray:
    arr = np.asarray(x, dtype=float).reshape(-1)
    if arr.shape != (n,):
        raise DimensionMismatchError(f"{what} has {arr.size} coordinates, expected {n}")
    return arr


def monomial_matrix(points, alphas: Sequence[MultiIndex]) -> np.ndarray:
    """``M[i, j] = points[i] ** alphas[j]`` for an ``(m, n)`` array of points."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if not alphas:
        return np.zeros((pts.shape[0], 0))
    exps = np.asarray(alphas, dtype=int)
    if exps.shape[1] != pts.shape[1]:
        raise DimensionMismatchError(f"points have {pts.shape[1]} coordinates, monomials {exps.shape[1]}")
    top = int(exps.max()) if exps.size else 0
    powers = pts[:, :, None] ** np.arange(top + 1)[None, None, :]
    out = np.ones((pts.shape[0], len(alphas)))
    for i in range(pts.shape[1]):
        out *= powers[:, i, exps[:, i]]
    return out


def eval_poly(P: Polynomial, x) -> float:
    """Value of ``P`` at a single point."""
    pt = _as_point(x, P.n)
    total = 0.0
    for alpha, c in P.coeffs.items():
        term = c
        for xi, a in zip(pt, alpha):
            if a:
                term *= xi**a
        total += term
    return float(total)


def eval_many(P: Polynomial, points) -> np.ndarray:
    """Vectorised evaluation at the rows of ``points``."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != P.n:
        raise DimensionMismatchError(f"points have {pts.shape[1]} coordinates, expected {P.n}")
    if not P.coeffs:
        return np.zeros(pts.shape[0])
    alphas = list(P.coeffs)
    return monomial_matrix(pts, alphas) @ np.array([P.coeffs[a] for a in alphas])


def homogeneous_component(P: Polynomial, k: int) -> Polynomial:
    """The part of ``P`` made of monomials of total degree exactly ``k``."""
    if not 0 <= k <= P.d:
        raise DegreeError(f"component {k} outside 0..{P.d}")
    return Polynomial(P.n, P.d, {a: c for a, c in P.coeffs.items() if sum(a) == k})


def tail(P: Polynomial, k: int) -> Polynomial:
    """Sum of the homogeneous components of degree ``>= k``."""
    return Polynomial(P.n, P.d, {a: c for a, c in P.coeffs.items() if sum(a) >= k})


@lru_cache(maxsize=None)
def _binomial_row(a: int) -> tuple[int, ...]:
    return tuple(math.comb(a, j) for j in range(a + 1))


def restrict_to_line(P: Polynomial, v, u) -> list[float]:
    """Coefficients ``c_0..c_d`` of ``t -> P(v + t u)``, by exact expansion."""
    v = _as_point(v, P.n)
    u = _as_point(u, P.n, "direction")
    out = np.zeros(P.d + 1)
    for alpha, c in P.coeffs.items():
        line = np.array([c])
        for vi, ui, a in zip(v, u, alpha):
            if a == 0:
                continue
            # (v_i + t u_i)^a, ascending powers of t
            factor = np.array([b * vi ** (a - j) * ui**j for j, b in enumerate(_binomial_row(a))])
            line = np.convolve(line, factor)
        out[: line.size] += line
    return out.tolist()


def _check_direction(u: np.ndarray, k: int) -> None:
    if k >= 1 and not np.any(u):
        raise DegenerateNodeError(f"order-{k} derivative along the zero direction")


def directional_derivative(P: Polynomial, v, u, k: int) -> float:
    """``d^k/dt^k P(v + t u)`` at ``t = 0``; order 0 is plain evaluation."""
    if k < 0:
        raise DegreeError(f"derivative order must be non-negative, got {k}")
    if k == 0:
        return eval_poly(P, v)
    u_arr = _as_point(u, P.n, "direction")
    _check_direction(u_arr, k)
    if k > P.d:
        _as_point(v, P.n)
        return 0.0
    return math.factorial(k) * restrict_to_line(P, v, u_arr)[k]


@lru_cache(maxsize=None)
def _derivative_terms(n: int, d: int, k: int):
    """Expansion terms of the order-k derivatives of all basis monomials.

    ``weight`` is ``k! * prod C(alpha_i, beta_i)``; summing
    ``weight * u**beta * v**(alpha-beta)`` over ``|beta| = k, beta <= alpha``
    gives the order-k directional derivative of ``x**alpha``; ``incidence``
    scatters terms onto their basis column.
    """
    fact = math.factorial(k)
    cols, betas, rests, weights = [], [], [], []
    for j, alpha in enumerate(_basis(n, d)):
        if sum(alpha) < k:
            continue
        for beta in product(*(range(a + 1) for a in alpha)):
            if sum(beta) != k:
                continue
            w = fact
            for a, b in zip(alpha, beta):
                w *= math.comb(a, b)
            cols.append(j)
            betas.append(beta)
            rests.append(tuple(a - b for a, b in zip(alpha, beta)))
            weights.append(float(w))
    incidence = np.zeros((len(cols), len(_basis(n, d))))
    incidence[np.arange(len(cols)), cols] = 1.0
    return (
        np.array(betas, dtype=int).reshape(-1, n),
        np.array(rests, dtype=int).reshape(-1, n),
        np.array(weights),
        incidence,
    )


def derivative_matrix(points, directions, k: int, n: int, d: int) -> np.ndarray:
    """Order-``k`` directional derivatives of every basis monomial.

    Row ``i`` holds ``D^k_{u_i} x^alpha (v_i)`` for all columns of
    ``basis(n, d)``. Directions are ignored when ``k == 0``.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    m = pts.shape[0]
    if pts.shape[1] != n:
        raise DimensionMismatchError(f"points have {pts.shape[1]} coordinates, expected {n}")
    if k == 0:
        dirs = np.zeros_like(pts)
    else:
        dirs = np.atleast_2d(np.asarray(directions, dtype=float))
        if dirs.shape != pts.shape:
            raise DimensionMismatchError(f"directions shape {dirs.shape} != points shape {pts.shape}")
        zero = ~np.any(dirs, axis=1)
        if np.any(zero):
            raise DegenerateNodeError(f"order-{k} derivative along the zero direction (rows {np.flatnonzero(zero).tolist()})")
    if k > d or m == 0:
        return np.zeros((m, len(_basis(n, d))))
    betas, rests, weights, incidence = _derivative_terms(n, d, k)
    ar = np.arange(d + 1)
    upow = dirs[:, :, None] ** ar[None, None, :]
    vpow = pts[:, :, None] ** ar[None, None, :]
    terms = np.broadcast_to(weights, (m, weights.size)).copy()
    for i in range(n):
        terms *= upow[:, i, betas[:, i]] * vpow[:, i, rests[:, i]]
    return terms @ incidence


def derivative_values(P: Polynomial, points, direction, k: int) -> np.ndarray:
    """``D^k_u P`` at each row of ``points`` for one fixed direction."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    dirs = np.broadcast_to(_as_point(direction, P.n, "direction"), pts.shape)
    return derivative_matrix(pts, dirs, k, P.n, P.d) @ P.to_vector()


def random_polynomial(rng: np.random.Generator, n: int, d: int, homogeneous: bool = False) -> Polynomial:
    """Polynomial with standard normal coefficients; handy for tests and experiments."""
    alphas: Iterable[MultiIndex] = _enumerate(n, d) if homogeneous else _basis(n, d)
    alphas = list(alphas)
    return Polynomial(n, d, dict(zip(alphas, rng.standard_normal(len(alphas)).tolist())))
