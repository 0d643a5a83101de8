"""Homogeneous Vandermonde matrices and per-degree regularity of a scheme."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import DegenerateNodeError, DimensionMismatchError, SchemeShapeError
from .linalg import PIVOT_TOLERANCE, lu_factor
from .polyspace import enumerate_multi_indices, homogeneous_dim, monomial_matrix

if TYPE_CHECKING:
    from .solver import Scheme

log = logging.getLogger(__name__)

CROSS_CHECK_TOL = 1e-8


@dataclass(frozen=True)
class DirectionSet:
    """Directions ``s_1..s_m`` in R^n used as evaluation points for degree-``k`` forms."""

    n: int
    k: int
    directions: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        dirs = tuple(tuple(float(x) for x in u) for u in self.directions)
        for u in dirs:
            if len(u) != self.n:
                raise DimensionMismatchError(f"direction {u} is not in R^{self.n}")
            if self.k >= 1 and not any(u):
                raise DegenerateNodeError("zero direction in an order >= 1 direction set")
        object.__setattr__(self, "directions", dirs)

    def array(self) -> np.ndarray:
        return np.array(self.directions, dtype=float).reshape(len(self.directions), self.n)

    def normalized(self) -> np.ndarray:
        a = self.array()
        if self.k == 0:
            return a
        return a / np.linalg.norm(a, axis=1)[:, None]

    @property
    def is_square(self) -> bool:
        return len(self.directions) == homogeneous_dim(self.n, self.k)


@dataclass(frozen=True)
class Determinant:
    sign: float
    log_magnitude: float
    regular: bool = True
    pivot_ratio: float = 1.0

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log_magnitude) if self.sign else 0.0


@dataclass
class DegreeRegularity:
    k: int
    size: int
    regular: bool
    conditioning: float
    determinant_sign: float
    determinant_log: float
    planar_log: float | None = None
    warnings: list[str] = field(default_factory=list)


@dataclass
class RegularityReport:
    n: int
    d: int
    per_degree: list[DegreeRegularity]
    tolerance: float = PIVOT_TOLERANCE

    @property
    def regular(self) -> bool:
        return all(r.regular for r in self.per_degree)

    @property
    def failing_degrees(self) -> list[int]:
        return [r.k for r in self.per_degree if not r.regular]

    def to_dict(self) -> dict:
        per = []
        for r in self.per_degree:
            row = asdict(r)
            row["determinant_log"] = _json_float(r.determinant_log)
            per.append(row)
        return {
            "n": self.n,
            "d": self.d,
            "regular": self.regular,
            "failing_degrees": self.failing_degrees,
            "pivot_tolerance": self.tolerance,
            "per_degree": per,
        }


def _json_float(x: float):
    return x if math.isfinite(x) else ("-inf" if x < 0 else "inf")


def _require_square(ds: DirectionSet) -> None:
    need = homogeneous_dim(ds.n, ds.k)
    if len(ds.directions) != need:
        raise SchemeShapeError(
            f"degree {ds.k} needs {need} directions in R^{ds.n}, got {len(ds.directions)}", [ds.k]
        )


def build_homogeneous_vandermonde(ds: DirectionSet, normalize: bool = False) -> np.ndarray:
    """``A[i, j] = s_i ** alpha_j`` with ``alpha`` in descending lex order."""
    _require_square(ds)
    pts = ds.normalized() if normalize else ds.array()
    return monomial_matrix(pts, enumerate_multi_indices(ds.n, ds.k))


def vandermonde_determinant(ds: DirectionSet, tol: float = PIVOT_TOLERANCE) -> Determinant:
    """Determinant of the homogeneous Vandermonde matrix, in sign/log form.

    The factorization runs on unit-length directions; the reported
    determinant is that of the matrix built from the directions as given,
    recovered by adding ``k * sum(log|s_i|)``.
    """
    fac = lu_factor(build_homogeneous_vandermonde(ds, normalize=True))
    log_scale = ds.k * float(np.sum(np.log(np.linalg.norm(ds.array(), axis=1)))) if ds.k else 0.0
    logmag = fac.log_magnitude + log_scale if fac.sign else -math.inf
    return Determinant(fac.sign, logmag, fac.regular(tol), fac.pivot_ratio)


def planar_product_determinant(ds: DirectionSet) -> Determinant:
    """Product of the 2x2 determinants ``det[s_i, s_j]`` over all pairs ``i < j``."""
    if ds.n != 2:
        raise DimensionMismatchError(f"planar product formula needs n = 2, got n = {ds.n}")
    _require_square(ds)
    a = ds.array()
    sign, logmag = 1.0, 0.0
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            det = a[i, 0] * a[j, 1] - a[i, 1] * a[j, 0]
            if det == 0.0:
                return Determinant(0.0, -math.inf, False, 0.0)
            sign *= math.copysign(1.0, det)
            logmag += math.log(abs(det))
    return Determinant(sign, logmag)


def direction_sets(scheme: "Scheme") -> list[DirectionSet]:
    """Order-by-order direction sets of a scheme (order 0 gets a placeholder)."""
    out = []
    for k in range(scheme.d + 1):
        nodes = scheme.nodes_of_order(k)
        if k == 0:
            dirs = [tuple([0.0] * scheme.n)] * len(nodes)
        else:
            dirs = [nd.direction for nd in nodes]
        out.append(DirectionSet(scheme.n, k, tuple(dirs)))
    return out


def check_scheme_regularity(scheme: "Scheme", tol: float = PIVOT_TOLERANCE) -> RegularityReport:
    """Per-degree Vandermonde verdicts for an exact scheme.

    Only directions are read; point positions never affect the report.
    """
    bad = [k for k, count in enumerate(scheme.order_counts()) if count != homogeneous_dim(scheme.n, k)]
    if bad:
        detail = ", ".join(
            f"order {k}: {scheme.order_counts()[k]} nodes, need {homogeneous_dim(scheme.n, k)}" for k in bad
        )
        raise SchemeShapeError(f"scheme is not exact ({detail})", bad)
    rows = [DegreeRegularity(0, 1, True, 1.0, 1.0, 0.0)]
    for ds in direction_sets(scheme)[1:]:
        det = vandermonde_determinant(ds, tol)
        row = DegreeRegularity(ds.k, len(ds.directions), det.regular, det.pivot_ratio, det.sign, det.log_magnitude)
        if ds.n == 2:
            planar = planar_product_determinant(ds)
            row.planar_log = _json_float(planar.log_magnitude)
            _cross_check(row, det, planar)
        rows.append(row)
    return RegularityReport(scheme.n, scheme.d, rows, tol)


def _cross_check(row: DegreeRegularity, det: Determinant, planar: Determinant) -> None:
    if not det.regular or not planar.regular:
        if det.regular != planar.regular:
            row.warnings.append("planar product formula and factorization disagree on singularity")
        return
    scale = max(1.0, abs(det.log_magnitude))
    if abs(det.log_magnitude - planar.log_magnitude) > CROSS_CHECK_TOL * scale:
        row.warnings.append(
            f"log|det| mismatch: factorization {det.log_magnitude!r}, planar {planar.log_magnitude!r}"
        )
    if det.sign != planar.sign:
        # the planar product and the lex column order agree in sign for exact data
        row.warnings.append("determinant sign differs from planar product formula")
    for w in row.warnings:
        log.warning("degree %d: %s", row.k, w)


def pairwise_independent(directions: Sequence[Sequence[float]], tol: float = 1e-12) -> bool:
    """True when no two planar directions are parallel."""
    a = np.asarray(directions, dtype=float)
    a = a / np.linalg.norm(a, axis=1)[:, None]
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if abs(a[i, 0] * a[j, 1] - a[i, 1] * a[j, 0]) <= tol:
                return False
    return True
