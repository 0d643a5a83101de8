"""Markov constants, the staged norming bound, Remez-type thetas and the robustness bound."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .errors import BirkhoffError, DegreeError
from .grids import Ball
from .solver import Scheme, estimate_direction_theta
from .vandermonde import DirectionSet

CLOSED_FORM_TOL = 1e-12


class NormingWarning(UserWarning):
    """Scheme data lies outside the unit ball assumed by the norming bound."""


def chebyshev_coefficients(d: int) -> list[int]:
    """Integer power-basis coefficients of ``T_d``, ascending."""
    if d < 0:
        raise DegreeError(f"Chebyshev degree must be non-negative, got {d}")
    prev, cur = [1], [0, 1]
    if d == 0:
        return prev
    for _ in range(d - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def chebyshev_derivative_at_one(d: int, k: int) -> float:
    """``T_d^{(k)}(1)``, computed exactly on integer coefficients."""
    if d < 0 or k < 0:
        raise DegreeError(f"arguments must be non-negative, got d={d}, k={k}")
    if k > d:
        return 0.0
    coeffs = chebyshev_coefficients(d)
    for _ in range(k):
        coeffs = [i * c for i, c in enumerate(coeffs)][1:]
    return float(sum(coeffs))


def markov_constants(d: int) -> list[float]:
    return [chebyshev_derivative_at_one(d, k) for k in range(d + 1)]


@dataclass
class NormingBoundTrace:
    d: int
    m: list[float]
    theta: list[float]
    kappa: list[float]
    tau: list[float]  # tau_d, tau_{d-1}, ..., tau_0
    bound: float
    closed_form: float

    def to_dict(self) -> dict:
        return asdict(self)


def closed_form_bound(kappa: Sequence[float], m: Sequence[float], k: int = 0) -> float:
    """``sum_{l>=k} kappa_l prod_{k<=j<l} (1 + m_j kappa_j)``."""
    total, prod = 0.0, 1.0
    for l in range(k, len(kappa)):
        total += kappa[l] * prod
        prod *= 1.0 + m[l] * kappa[l]
    return total


def norming_bound(theta: Sequence[float], d: int | None = None) -> NormingBoundTrace:
    """Upper bound on the norming constant from per-degree direction constants.

    ``theta[k]`` is the norming constant of the order-``k`` directions for
    degree-``k`` forms on the unit ball. The bound is evaluated by the
    backward recurrence and checked against its closed form.
    """
    theta = [float(t) for t in theta]
    if d is None:
        d = len(theta) - 1
    if len(theta) != d + 1:
        raise DegreeError(f"need {d + 1} theta values for degree {d}, got {len(theta)}")
    if any(not t > 0 for t in theta):
        raise BirkhoffError(f"theta values must be positive, got {theta}")
    m = markov_constants(d)
    kappa = [t / math.factorial(k) for k, t in enumerate(theta)]
    tau = [kappa[d]]
    for k in range(d - 1, -1, -1):
        tau.append(kappa[k] + (1.0 + m[k] * kappa[k]) * tau[-1])
    closed = closed_form_bound(kappa, m)
    bound = tau[-1]
    if math.isfinite(bound) and abs(bound - closed) > CLOSED_FORM_TOL * max(1.0, abs(bound)):
        raise ArithmeticError(f"recurrence {bound!r} and closed form {closed!r} disagree")
    return NormingBoundTrace(d, m, theta, kappa, tau, bound, closed)


def chebyshev_t(d: int, x: float) -> float:
    """``T_d(x)``; the hyperbolic closed form is used for ``|x| > 1``."""
    if d == 0:
        return 1.0
    if d == 1:
        return float(x)
    if abs(x) <= 1.0:
        return math.cos(d * math.acos(x))
    sign = 1.0 if x > 0 or d % 2 == 0 else -1.0
    try:
        return sign * math.cosh(d * math.acosh(abs(x)))
    except OverflowError:
        return sign * math.inf


def remez_theta(omega: float, n: int, d: int) -> float:
    """Remez-type constant ``T_d((1 + s) / (1 - s))`` with ``s = (1 - omega)^(1/n)``."""
    if not 0.0 < omega <= 1.0:
        raise BirkhoffError(f"omega must lie in (0, 1], got {omega}")
    if n < 1 or d < 0:
        raise DegreeError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if omega == 1.0:
        return 1.0
    # 1 - s without cancellation for tiny omega
    one_minus_s = -math.expm1(math.log1p(-omega) / n)
    if one_minus_s == 0.0:
        return math.inf
    x = (2.0 - one_minus_s) / one_minus_s
    return chebyshev_t(d, x)


def robustness_bound(N: float, E: float, h: float) -> float:
    """Worst-case distance ``2 N (E + h)`` between the minimax fit and the ideal approximant."""
    if N < 0 or E < 0 or h < 0:
        raise BirkhoffError(f"inputs must be non-negative, got N={N}, E={E}, h={h}")
    return 2.0 * N * (E + h)


def estimate_thetas(scheme: Scheme, grid_size: int = 4096, seed: int = 0) -> list[float]:
    """Grid estimates of the per-order direction constants of a scheme on the unit ball.

    Directions longer than 1 are scaled onto the unit sphere and points outside
    the ball are reported, both with a :class:`NormingWarning`. Shorter
    directions are kept as they are, since shrinking a direction weakens its
    functional.
    """
    ball = Ball(scheme.n)
    outside = [nd.point for nd in scheme.nodes if np.linalg.norm(nd.point) > 1.0 + 1e-12]
    if outside:
        warnings.warn(f"{len(outside)} sample points lie outside the unit ball", NormingWarning, stacklevel=2)
    thetas = [1.0]
    for k in range(1, scheme.d + 1):
        dirs = []
        for nd in scheme.nodes_of_order(k):
            u = np.asarray(nd.direction)
            r = np.linalg.norm(u)
            if r > 1.0 + 1e-12:
                warnings.warn(
                    f"order-{k} direction {nd.direction} has norm {r:.6g} > 1; normalised",
                    NormingWarning,
                    stacklevel=2,
                )
                u = u / r
            dirs.append(tuple(u))
        ds = DirectionSet(scheme.n, k, tuple(dirs))
        thetas.append(estimate_direction_theta(ds, ball, grid_size, seed, normalize=False))
    return thetas


def scheme_norming_bound(scheme: Scheme, grid_size: int = 4096, seed: int = 0) -> NormingBoundTrace:
    """Norming bound of an exact scheme fed with grid-estimated thetas."""
    return norming_bound(estimate_thetas(scheme, grid_size, seed), scheme.d)
