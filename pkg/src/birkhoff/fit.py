"""Minimax fitting over directional-derivative functionals and the noise experiment."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BirkhoffError, FitError, SingularSchemeError
from .grids import Domain, domain_grid
from .linalg import PIVOT_TOLERANCE
from .norming import robustness_bound
from .polyspace import Polynomial, enumerate_multi_indices, eval_many, homogeneous_dim, monomial_matrix
from .simplex import LPError, solve_standard_lp
from .solver import Scheme, apply_functionals, functional_matrix, lebesgue_function
from .vandermonde import DirectionSet

CERTIFICATE_TOL = 1e-8


@dataclass(frozen=True)
class FitProblem:
    scheme: Scheme
    values: tuple[float, ...]
    degree: int | None = None

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) != len(self.scheme.nodes):
            raise BirkhoffError(f"{len(vals)} values for {len(self.scheme.nodes)} nodes")
        if not vals:
            raise BirkhoffError("fit problem without measurements")
        object.__setattr__(self, "values", vals)

    @property
    def d(self) -> int:
        return self.scheme.d if self.degree is None else self.degree


@dataclass
class FitResult:
    polynomial: Polynomial
    achieved_residual: float
    iterations: int
    duality_gap: float = 0.0


def minimax_fit(problem: FitProblem) -> FitResult:
    """Polynomial of degree ``<= d`` minimising ``max_i |w_i(P) - psi_i|``.

    With ``T = max|psi|`` the program is posed as maximising ``s = T - t``
    so that ``P = 0, s = 0`` is a feasible vertex; the result is certified by
    the simplex multipliers (dual feasibility and a zero duality gap).
    """
    n, d = problem.scheme.n, problem.d
    psi = np.asarray(problem.values)
    W = functional_matrix(problem.scheme, d)
    top = float(np.abs(psi).max())
    if top == 0.0:
        return FitResult(Polynomial.zero(n, d), 0.0, 0)
    psi_n = psi / top
    scale = np.abs(W).max(axis=0)
    keep = np.flatnonzero(scale > 0)
    Wk = W[:, keep] / scale[keep]
    rows, p = Wk.shape
    ones = np.ones((rows, 1))
    A = np.block([[Wk, -Wk, ones], [-Wk, Wk, ones]])
    b = np.concatenate([1.0 + psi_n, 1.0 - psi_n])
    c = np.zeros(2 * p + 1)
    c[-1] = 1.0
    try:
        lp = solve_standard_lp(A, b, c)
    except LPError as exc:
        raise FitError(f"minimax program failed: {exc}") from exc
    coef = np.zeros(W.shape[1])
    coef[keep] = (lp.x[:p] - lp.x[p : 2 * p]) / scale[keep] * top
    residual_n = float(np.abs(Wk @ (lp.x[:p] - lp.x[p : 2 * p]) - psi_n).max())
    gap = _certify(Wk, b, lp.dual, residual_n)
    poly = Polynomial.from_vector(n, d, coef)
    achieved = float(np.abs(W @ coef - psi).max())
    return FitResult(poly, achieved, lp.iterations, gap * top)


def _certify(Wk: np.ndarray, b: np.ndarray, dual: np.ndarray, residual_n: float) -> float:
    """Check the multipliers prove optimality of the normalised residual."""
    rows = Wk.shape[0]
    y1, y2 = dual[:rows], dual[rows:]
    problems = []
    if dual.min() < -CERTIFICATE_TOL:
        problems.append(f"negative multiplier {dual.min():.3e}")
    stationarity = np.abs(Wk.T @ (y1 - y2)).max() if Wk.size else 0.0
    if stationarity > CERTIFICATE_TOL:
        problems.append(f"stationarity violated by {stationarity:.3e}")
    if dual.sum() < 1.0 - CERTIFICATE_TOL:
        problems.append(f"multipliers sum to {dual.sum():.12g} < 1")
    # dual value b.y bounds s = 1 - t from above, so 1 - b.y is a lower bound on t
    gap = residual_n - (1.0 - float(b @ dual))
    if abs(gap) > CERTIFICATE_TOL:
        problems.append(f"duality gap {gap:.3e}")
    if problems:
        raise FitError("optimality certificate failed: " + "; ".join(problems))
    return abs(gap)


def exact_subscheme(scheme: Scheme, tol: float = PIVOT_TOLERANCE) -> Scheme:
    """Greedily pick ``N(n, k)`` nodes of each order with a regular direction set."""
    chosen = []
    for k in range(scheme.d + 1):
        need = homogeneous_dim(scheme.n, k)
        nodes = scheme.nodes_of_order(k)
        picked: list = []
        for nd in nodes:
            if len(picked) == need:
                break
            if k == 0:
                picked.append(nd)
                continue
            trial = picked + [nd]
            ds = DirectionSet(scheme.n, k, tuple(x.direction for x in trial))
            a = _rows_vandermonde(ds)
            s = np.linalg.svd(a, compute_uv=False)
            if s[-1] > tol * s[0]:
                picked = trial
        if len(picked) < need:
            raise SingularSchemeError(
                f"order {k}: no regular subset of {need} directions among {len(nodes)} nodes", degree=k
            )
        chosen.extend(picked)
    return Scheme(scheme.n, scheme.d, tuple(chosen), scheme.domain)


def _rows_vandermonde(ds: DirectionSet) -> np.ndarray:
    return monomial_matrix(ds.normalized(), enumerate_multi_indices(ds.n, ds.k))


@dataclass
class Target:
    """Non-polynomial truth for the noise experiment.

    ``evaluate`` maps an ``(m, n)`` array of points to values, ``functionals``
    maps a scheme to its exact sample vector and ``ideal`` is the caller's
    best approximant in ``P_n^d``.
    """

    evaluate: Callable[[np.ndarray], np.ndarray]
    functionals: Callable[[Scheme], np.ndarray]
    ideal: Polynomial


@dataclass
class TrialRecord:
    trial: int
    noise_seed: int
    residual: float
    truth_residual: float
    grid_error: float
    bound: float
    ratio: float


@dataclass
class RobustReport:
    n: int
    d: int
    noise_h: float
    trials: list[TrialRecord]
    norming_constant: float
    norming_source: str
    approximation_error: float
    approximation_error_kind: str
    grid_size: int
    seed: int
    domain: dict = field(default_factory=dict)

    @property
    def max_ratio(self) -> float:
        return max(t.ratio for t in self.trials)

    @property
    def mean_ratio(self) -> float:
        return float(np.mean([t.ratio for t in self.trials]))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["summary"] = {"max_ratio": self.max_ratio, "mean_ratio": self.mean_ratio}
        return out


def trial_seed(seed: int, trial: int) -> int:
    """Independent stream per (seed, trial) so trials can run in any order."""
    return int(np.random.SeedSequence([seed, trial]).generate_state(1, dtype=np.uint64)[0])


def robust_experiment(
    true_f: Polynomial | Target,
    scheme: Scheme,
    noise_h: float,
    trials: int,
    seed: int = 0,
    grid_size: int = 4096,
    domain: Domain | None = None,
) -> RobustReport:
    """Fit noisy samples repeatedly and compare the error with ``2 N (E + h)``.

    ``N`` is the grid maximum of the Lebesgue function of the scheme (or of a
    regular exact subscheme when the scheme is overdetermined); on the grid it
    bounds ``|Q(x)|`` by ``N max_i |w_i(Q)|`` for every ``Q`` of degree ``<= d``,
    so the grid error of each trial is compared against a valid bound.
    """
    if noise_h < 0:
        raise BirkhoffError(f"noise amplitude must be non-negative, got {noise_h}")
    if trials < 1:
        raise BirkhoffError("at least one trial is required")
    domain = domain if domain is not None else scheme.get_domain()
    grid = domain_grid(domain, grid_size, seed)
    if scheme.is_exact:
        sub, source = scheme, "exact"
    else:
        sub, source = exact_subscheme(scheme), "subscheme"
    N = float(lebesgue_function(sub, grid).max())

    if isinstance(true_f, Polynomial):
        ideal = true_f.with_degree(max(true_f.d, scheme.d))
        clean = apply_functionals(scheme, true_f)
        E, kind = 0.0, "exact"
    else:
        ideal = true_f.ideal
        clean = np.asarray(true_f.functionals(scheme), dtype=float)
        grid_gap = float(np.abs(true_f.evaluate(grid) - eval_many(ideal, grid)).max())
        sample_gap = float(np.abs(clean - apply_functionals(scheme, ideal)).max())
        E, kind = max(grid_gap, sample_gap), "estimate"
    ideal_samples = apply_functionals(scheme, ideal)
    ideal_grid = eval_many(ideal, grid)

    records = []
    for t in range(trials):
        ns = trial_seed(seed, t)
        rng = np.random.default_rng(ns)
        noisy = clean + rng.uniform(-noise_h, noise_h, size=clean.shape)
        fit = minimax_fit(FitProblem(scheme, tuple(noisy)))
        err = float(np.abs(eval_many(fit.polynomial, grid) - ideal_grid).max())
        bound = robustness_bound(N, E, noise_h)
        ratio = err / bound if bound > 0 else (0.0 if err <= 1e-9 else float("inf"))
        records.append(
            TrialRecord(
                t,
                ns,
                fit.achieved_residual,
                float(np.abs(ideal_samples - noisy).max()),
                err,
                bound,
                ratio,
            )
        )
    return RobustReport(
        scheme.n,
        scheme.d,
        float(noise_h),
        records,
        N,
        source,
        E,
        kind,
        grid_size,
        seed,
        domain.to_dict(),
    )


def least_squares_fit(scheme: Scheme, values: Sequence[float], degree: int | None = None) -> Polynomial:
    """Normal-equations fit; internal cross-check for :func:`minimax_fit` only."""
    d = scheme.d if degree is None else degree
    W = functional_matrix(scheme, d)
    coef, *_ = np.linalg.lstsq(W, np.asarray(values, dtype=float), rcond=None)
    return Polynomial.from_vector(scheme.n, d, coef)
