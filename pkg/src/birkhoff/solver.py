"""Schemes of directional-derivative samples and their interpolation.

The staged solver recovers the homogeneous components from the top degree
down: order-``k`` samples only see components of degree ``>= k``, and on the
degree-``k`` component itself an order-``k`` derivative along ``u`` is
``k!`` times evaluation at ``u``. Each stage is thus a homogeneous
Vandermonde solve on the order-``k`` directions, with right-hand sides
corrected by the already-recovered higher components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BirkhoffError,
    DegenerateNodeError,
    DimensionMismatchError,
    SchemeShapeError,
    SingularSchemeError,
)
from .grids import Ball, Domain, domain_grid
from .linalg import PIVOT_TOLERANCE, equilibrate, lu_factor, numerical_rank
from .polyspace import (
    Polynomial,
    basis,
    degree_slices,
    derivative_matrix,
    enumerate_multi_indices,
    homogeneous_dim,
    monomial_matrix,
    poly_dim,
)
from .vandermonde import DirectionSet, build_homogeneous_vandermonde, check_scheme_regularity


@dataclass(frozen=True)
class Node:
    """The functional ``P -> D^order_direction P(point)``."""

    order: int
    point: tuple[float, ...]
    direction: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.order < 0:
            raise BirkhoffError(f"node order must be non-negative, got {self.order}")
        object.__setattr__(self, "point", tuple(float(x) for x in self.point))
        if self.order == 0:
            object.__setattr__(self, "direction", None)
            return
        if self.direction is None:
            raise DegenerateNodeError(f"order-{self.order} node at {self.point} has no direction")
        u = tuple(float(x) for x in self.direction)
        if len(u) != len(self.point):
            raise DimensionMismatchError(f"direction {u} and point {self.point} differ in length")
        if not any(u):
            raise DegenerateNodeError(f"order-{self.order} node at {self.point} has zero direction")
        object.__setattr__(self, "direction", u)


@dataclass(frozen=True)
class Scheme:
    """Nodes of a Birkhoff problem on polynomials of degree ``<= d`` in R^n.

    The scheme is *exact* when order ``k`` carries exactly ``N(n, k)`` nodes
    for every ``k = 0..d``; anything else is an extended scheme, usable for
    dense solves and minimax fitting only.
    """

    n: int
    d: int
    nodes: tuple[Node, ...]
    domain: Domain | None = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        for nd in self.nodes:
            if len(nd.point) != self.n:
                raise DimensionMismatchError(f"node point {nd.point} is not in R^{self.n}")
            if nd.order > self.d:
                raise SchemeShapeError(f"node of order {nd.order} exceeds degree {self.d}", [nd.order])

    def order_counts(self) -> list[int]:
        counts = [0] * (self.d + 1)
        for nd in self.nodes:
            counts[nd.order] += 1
        return counts

    @property
    def is_exact(self) -> bool:
        return all(c == homogeneous_dim(self.n, k) for k, c in enumerate(self.order_counts()))

    def nodes_of_order(self, k: int) -> list[Node]:
        return [nd for nd in self.nodes if nd.order == k]

    def indices_of_order(self, k: int) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.order == k]

    def points(self) -> np.ndarray:
        return np.array([nd.point for nd in self.nodes], dtype=float).reshape(len(self.nodes), self.n)

    def directions(self) -> np.ndarray:
        zero = (0.0,) * self.n
        return np.array([nd.direction or zero for nd in self.nodes], dtype=float).reshape(len(self.nodes), self.n)

    def get_domain(self) -> Domain:
        return self.domain if self.domain is not None else Ball(self.n)


@dataclass(frozen=True)
class SampleSet:
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __len__(self):
        return len(self.values)


def _values(scheme: Scheme, samples) -> np.ndarray:
    vals = np.asarray(samples.values if isinstance(samples, SampleSet) else samples, dtype=float)
    if vals.shape[0] != len(scheme.nodes):
        raise DimensionMismatchError(f"{vals.shape[0]} samples for {len(scheme.nodes)} nodes")
    return vals


def functional_matrix(scheme: Scheme, d: int | None = None) -> np.ndarray:
    """Row ``i``: node ``i`` applied to every monomial of ``basis(n, d)``."""
    d = scheme.d if d is None else d
    out = np.zeros((len(scheme.nodes), poly_dim(scheme.n, d)))
    pts, dirs = scheme.points(), scheme.directions()
    for k in range(scheme.d + 1):
        rows = scheme.indices_of_order(k)
        if rows:
            out[rows] = derivative_matrix(pts[rows], dirs[rows], k, scheme.n, d)
    return out


def apply_functionals(scheme: Scheme, P: Polynomial) -> np.ndarray:
    """Sample vector ``(w_i(P))_i`` of a polynomial on the scheme."""
    if P.n != scheme.n:
        raise DimensionMismatchError(f"polynomial in {P.n} variables, scheme in {scheme.n}")
    d = max(P.d, scheme.d)
    return functional_matrix(scheme, d) @ P.with_degree(d).to_vector()


def _require_exact(scheme: Scheme) -> None:
    if not scheme.is_exact:
        counts = scheme.order_counts()
        bad = [k for k, c in enumerate(counts) if c != homogeneous_dim(scheme.n, k)]
        raise SchemeShapeError(
            "staged solve needs exactly N(n,k) nodes of each order; offending orders: "
            + ", ".join(f"{k} ({counts[k]} vs {homogeneous_dim(scheme.n, k)})" for k in bad),
            bad,
        )


def _stage_factors(scheme: Scheme, tol: float):
    """LU factors of the normalised Vandermonde matrix of each order >= 1.

    Every degree is checked before any solve so that the error names the
    smallest singular degree.
    """
    factors, failing = {}, []
    for k in range(1, scheme.d + 1):
        nodes = scheme.nodes_of_order(k)
        ds = DirectionSet(scheme.n, k, tuple(nd.direction for nd in nodes))
        fac = lu_factor(build_homogeneous_vandermonde(ds, normalize=True))
        if not fac.regular(tol):
            failing.append(k)
        factors[k] = fac
    if failing:
        raise SingularSchemeError(
            f"homogeneous Vandermonde system singular at degree {failing[0]} (all failing: {failing})",
            degree=failing[0],
            degrees=failing,
        )
    return factors


def _staged_coefficients(scheme: Scheme, psi: np.ndarray, tol: float) -> np.ndarray:
    """Coefficient vectors (columns) for one or many right-hand sides (columns of ``psi``)."""
    _require_exact(scheme)
    factors = _stage_factors(scheme, tol)
    n, d = scheme.n, scheme.d
    psi = psi.reshape(len(scheme.nodes), -1)
    coef = np.zeros((poly_dim(n, d), psi.shape[1]))
    slices = degree_slices(n, d)
    pts, dirs = scheme.points(), scheme.directions()
    for k in range(d, -1, -1):
        rows = scheme.indices_of_order(k)
        if k < d:
            # order-k functionals of the components already recovered above k
            higher = slice(slices[k + 1].start, None)
            dm = derivative_matrix(pts[rows], dirs[rows], k, n, d)
            rhs = psi[rows] - dm[:, higher] @ coef[higher]
        else:
            rhs = psi[rows].copy()
        if k == 0:
            # single evaluation node: the constant term absorbs the remainder
            coef[slices[0]] = rhs[:1]
            continue
        lengths = np.linalg.norm(dirs[rows], axis=1)
        rhs = rhs / (math.factorial(k) * lengths[:, None] ** k)
        coef[slices[k]] = factors[k].solve(rhs)
    return coef


def solve_staged(scheme: Scheme, samples, tol: float = PIVOT_TOLERANCE) -> Polynomial:
    """Unique polynomial of degree ``<= d`` matching every sample of an exact scheme."""
    psi = _values(scheme, samples)
    coef = _staged_coefficients(scheme, psi, tol)[:, 0]
    return Polynomial.from_vector(scheme.n, scheme.d, coef)


@dataclass
class FullSolveResult:
    polynomial: Polynomial | None
    singular: bool
    rank: int
    size: tuple[int, int]
    conditioning: float
    null_space: list[Polynomial] = field(default_factory=list)

    @property
    def null_polynomial(self) -> Polynomial | None:
        return self.null_space[0] if self.null_space else None


def solve_full(scheme: Scheme, samples=None, tol: float = PIVOT_TOLERANCE) -> FullSolveResult:
    """Dense solve of all functionals against the full monomial basis.

    Serves as the brute-force oracle for :func:`solve_staged`. The matrix is
    row/column equilibrated before an SVD; ``conditioning`` is the ratio of
    the smallest to the largest singular value and rank deficiency is declared
    below ``tol``. Without samples only the singularity probe runs, which
    also accepts non-square schemes.
    """
    m = functional_matrix(scheme)
    scaled, rs, cs = equilibrate(m)
    _, s, vt = np.linalg.svd(scaled)
    rows, cols = m.shape
    rank = numerical_rank(s, tol)
    cond = float(s[-1] / s[0]) if rows >= cols and s[0] > 0 else 0.0
    singular = rank < cols
    null = []
    if singular:
        for y in vt[rank:]:
            x = y / cs
            null.append(Polynomial.from_vector(scheme.n, scheme.d, x / np.linalg.norm(x)))
    result = FullSolveResult(None, singular, rank, (rows, cols), cond, null)
    if samples is None:
        return result
    psi = _values(scheme, samples)
    if rows != cols:
        raise SchemeShapeError(f"dense solve needs a square system, got {rows} functionals for {cols} monomials")
    if singular:
        return result
    b = psi / rs
    y = np.linalg.solve(scaled, b)
    y += np.linalg.solve(scaled, b - scaled @ y)  # one step of iterative refinement
    result.polynomial = Polynomial.from_vector(scheme.n, scheme.d, y / cs)
    return result


def irregularity_witness(scheme: Scheme, tol: float = PIVOT_TOLERANCE) -> Polynomial | None:
    """Nonzero polynomial annihilated by every functional of an irregular exact scheme.

    Built as in the converse argument: take the smallest singular degree
    ``l``, a nonzero degree-``l`` form ``Q`` vanishing at the order-``l``
    directions, then subtract the unique degree ``< l`` interpolant of
    ``Q``'s lower-order samples. Returns ``None`` for regular schemes.
    """
    report = check_scheme_regularity(scheme, tol)
    if report.regular:
        return None
    l = report.failing_degrees[0]
    nodes = scheme.nodes_of_order(l)
    ds = DirectionSet(scheme.n, l, tuple(nd.direction for nd in nodes))
    _, _, vt = np.linalg.svd(build_homogeneous_vandermonde(ds, normalize=True))
    form = Polynomial(scheme.n, scheme.d, dict(zip(enumerate_multi_indices(scheme.n, l), vt[-1].tolist())))
    lower = Scheme(scheme.n, l - 1, tuple(nd for nd in scheme.nodes if nd.order < l))
    psi = apply_functionals(lower, form)
    correction = solve_staged(lower, psi, tol) if l >= 1 else Polynomial.zero(scheme.n, 0)
    return form - correction.with_degree(scheme.d)


def cardinal_basis(scheme: Scheme, tol: float = PIVOT_TOLERANCE) -> list[Polynomial]:
    """Dual basis ``l_j`` with ``w_i(l_j) = delta_ij`` for an exact regular scheme."""
    coef = _cardinal_matrix(scheme, tol)
    return [Polynomial.from_vector(scheme.n, scheme.d, coef[:, j]) for j in range(coef.shape[1])]


def _cardinal_matrix(scheme: Scheme, tol: float) -> np.ndarray:
    m = len(scheme.nodes)
    return _staged_coefficients(scheme, np.eye(m), tol)


def lebesgue_function(scheme: Scheme, points, tol: float = PIVOT_TOLERANCE) -> np.ndarray:
    """``sum_j |l_j(x)|`` at each row of ``points``."""
    coef = _cardinal_matrix(scheme, tol)
    vals = monomial_matrix(points, basis(scheme.n, scheme.d)) @ coef
    return np.abs(vals).sum(axis=1)


def estimate_norming_constant(
    scheme: Scheme,
    domain: Domain | None = None,
    grid_size: int = 4096,
    seed: int = 0,
    tol: float = PIVOT_TOLERANCE,
) -> float:
    """Grid maximum of the Lebesgue function: a lower estimate of the norming constant."""
    domain = domain if domain is not None else scheme.get_domain()
    pts = domain_grid(domain, grid_size, seed)
    return float(lebesgue_function(scheme, pts, tol).max())


def homogeneous_lebesgue(ds: DirectionSet, points, normalize: bool = True, tol: float = PIVOT_TOLERANCE) -> np.ndarray:
    """Lebesgue function of degree-``k`` forms interpolated at the directions."""
    if ds.k == 0:
        return np.ones(np.atleast_2d(points).shape[0])
    a = build_homogeneous_vandermonde(ds, normalize=normalize)
    fac = lu_factor(a)
    if not fac.regular(tol):
        raise SingularSchemeError(f"direction set singular at degree {ds.k}", degree=ds.k)
    coef = fac.solve(np.eye(a.shape[0]))
    vals = monomial_matrix(points, enumerate_multi_indices(ds.n, ds.k)) @ coef
    return np.abs(vals).sum(axis=1)


def estimate_direction_theta(
    ds: DirectionSet,
    domain: Domain | None = None,
    grid_size: int = 4096,
    seed: int = 0,
    normalize: bool = True,
    tol: float = PIVOT_TOLERANCE,
) -> float:
    """Grid estimate of the norming constant of evaluations at the directions, for degree-k forms.

    Directions are scaled to unit length first unless ``normalize=False``.
    """
    domain = domain if domain is not None else Ball(ds.n)
    pts = domain_grid(domain, grid_size, seed)
    return float(homogeneous_lebesgue(ds, pts, normalize, tol).max())


def scheme_from_arrays(n: int, d: int, orders: Sequence[int], points, directions=None, domain=None) -> Scheme:
    """Convenience constructor from parallel arrays."""
    pts = np.asarray(points, dtype=float).reshape(len(orders), n)
    dirs = None if directions is None else np.asarray(directions, dtype=float).reshape(len(orders), n)
    nodes = []
    for i, k in enumerate(orders):
        u = None if k == 0 or dirs is None else tuple(dirs[i])
        nodes.append(Node(int(k), tuple(pts[i]), u))
    return Scheme(n, d, tuple(nodes), domain)


def random_exact_scheme(rng: np.random.Generator, n: int, d: int, point_radius: float = 1.0) -> Scheme:
    """Exact scheme with points uniform in the ball and unit directions uniform on the sphere."""
    nodes = []
    for k in range(d + 1):
        for _ in range(homogeneous_dim(n, k)):
            p = rng.standard_normal(n)
            p *= point_radius * rng.random() ** (1.0 / n) / np.linalg.norm(p)
            if k == 0:
                nodes.append(Node(0, tuple(p)))
            else:
                u = rng.standard_normal(n)
                nodes.append(Node(k, tuple(p), tuple(u / np.linalg.norm(u))))
    return Scheme(n, d, tuple(nodes))


def taylor_scheme(d: int, point: float = 0.0) -> Scheme:
    """Univariate scheme sampling the k-th derivative at one point for every k = 0..d."""
    return Scheme(1, d, tuple(Node(k, (point,), (1.0,) if k else None) for k in range(d + 1)))


def univariate_scheme(points: Sequence[float]) -> Scheme:
    """Univariate scheme taking the (k)-th derivative at ``points[k]``."""
    d = len(points) - 1
    return Scheme(1, d, tuple(Node(k, (float(p),), (1.0,) if k else None) for k, p in enumerate(points)))
