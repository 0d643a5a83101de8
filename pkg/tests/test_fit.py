import numpy as np
import pytest
from scipy.optimize import linprog

from birkhoff.errors import BirkhoffError, SingularSchemeError
from birkhoff.fit import (
    FitProblem,
    Target,
    exact_subscheme,
    least_squares_fit,
    minimax_fit,
    robust_experiment,
    trial_seed,
)
from birkhoff.polyspace import Polynomial, random_polynomial
from birkhoff.simplex import LPError, solve_standard_lp
from birkhoff.solver import Node, Scheme, apply_functionals, functional_matrix, random_exact_scheme
from birkhoff.vandermonde import check_scheme_regularity


def oversampled_scheme(rng, n, d, extra):
    base = random_exact_scheme(rng, n, d)
    more = random_exact_scheme(rng, n, d)
    nodes = list(base.nodes) + [nd for nd in more.nodes if nd.order > 0][:extra]
    return Scheme(n, d, tuple(nodes))


def minimax_oracle(W, psi):
    """min t s.t. |W a - psi| <= t, solved by HiGHS."""
    m, p = W.shape
    c = np.r_[np.zeros(p), 1.0]
    A = np.block([[W, -np.ones((m, 1))], [-W, -np.ones((m, 1))]])
    b = np.r_[psi, -psi]
    res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * p + [(0, None)], method="highs")
    assert res.status == 0
    return res.fun


class TestSimplex:
    def test_against_highs(self, rng):
        for _ in range(30):
            m, n = rng.integers(3, 12, 2)
            A = rng.uniform(-1, 2, (m, n))
            b = rng.uniform(0, 3, m)
            c = rng.uniform(-1, 2, n)
            A[0] = np.abs(A[0]) + 0.1  # keeps the program bounded
            ours = solve_standard_lp(A, b, c)
            ref = linprog(-c, A_ub=A, b_ub=b, method="highs")
            assert ours.objective == pytest.approx(-ref.fun, abs=1e-10)
            assert np.all(A @ ours.x <= b + 1e-10) and np.all(ours.x >= -1e-12)
            assert ours.dual @ b == pytest.approx(ours.objective, abs=1e-9)

    def test_unbounded(self):
        with pytest.raises(LPError):
            solve_standard_lp(np.array([[-1.0]]), np.array([1.0]), np.array([1.0]))

    def test_negative_rhs(self):
        with pytest.raises(LPError):
            solve_standard_lp(np.eye(1), np.array([-1.0]), np.ones(1))

    def test_degenerate(self):
        # many ties at the origin
        A = np.vstack([np.eye(3), -np.eye(3) + 1, np.ones((1, 3))])
        b = np.r_[np.zeros(3), np.zeros(3), 1.0]
        res = solve_standard_lp(A, b, np.ones(3))
        assert res.objective == pytest.approx(0.0, abs=1e-12)


class TestMinimax:
    def test_exact_data_is_interpolated(self, rng):
        scheme = random_exact_scheme(rng, 2, 2)
        truth = random_polynomial(rng, 2, 2)
        res = minimax_fit(FitProblem(scheme, tuple(apply_functionals(scheme, truth))))
        assert res.achieved_residual < 1e-9

    def test_constant_fit(self):
        s = Scheme(1, 0, (Node(0, (0.0,)), Node(0, (0.5,)), Node(0, (1.0,))))
        res = minimax_fit(FitProblem(s, (0.0, 1.0, 0.2)))
        assert res.polynomial.to_vector()[0] == pytest.approx(0.5, abs=1e-12)
        assert res.achieved_residual == pytest.approx(0.5, abs=1e-12)

    def test_zero_data(self, rng):
        s = oversampled_scheme(rng, 2, 2, 3)
        res = minimax_fit(FitProblem(s, (0.0,) * len(s.nodes)))
        assert res.achieved_residual == 0.0 and res.polynomial.coeffs == {}

    @pytest.mark.parametrize("n,d", [(1, 3), (2, 2), (2, 3), (3, 2)])
    def test_matches_oracle(self, rng, n, d):
        for _ in range(5):
            s = oversampled_scheme(rng, n, d, 4)
            psi = rng.standard_normal(len(s.nodes))
            res = minimax_fit(FitProblem(s, tuple(psi)))
            best = minimax_oracle(functional_matrix(s), psi)
            assert res.achieved_residual == pytest.approx(best, abs=1e-8 * max(1, best))
            assert res.duality_gap <= 1e-8 * np.abs(psi).max()

    def test_beats_least_squares(self, rng):
        s = oversampled_scheme(rng, 2, 2, 4)
        psi = rng.standard_normal(len(s.nodes))
        ls = least_squares_fit(s, psi)
        res = minimax_fit(FitProblem(s, tuple(psi)))
        assert res.achieved_residual <= np.abs(apply_functionals(s, ls) - psi).max() + 1e-12

    def test_lower_degree(self, rng):
        s = oversampled_scheme(rng, 2, 3, 2)
        res = minimax_fit(FitProblem(s, tuple(rng.standard_normal(len(s.nodes))), degree=1))
        assert res.polynomial.d == 1

    def test_value_count(self, rng):
        with pytest.raises(BirkhoffError):
            FitProblem(random_exact_scheme(rng, 1, 2), (1.0,))


class TestSubscheme:
    def test_picks_regular_exact(self, rng):
        s = oversampled_scheme(rng, 2, 3, 5)
        sub = exact_subscheme(s)
        assert sub.is_exact and check_scheme_regularity(sub).regular

    def test_skips_parallel(self):
        nodes = [Node(0, (0, 0)), Node(1, (0, 0), (1, 0)), Node(1, (0, 0), (-2, 0)), Node(1, (0, 0), (0, 1))]
        sub = exact_subscheme(Scheme(2, 1, tuple(nodes)))
        assert [nd.direction for nd in sub.nodes[1:]] == [(1.0, 0.0), (0.0, 1.0)]

    def test_impossible(self):
        nodes = [Node(0, (0, 0)), Node(1, (0, 0), (1, 0)), Node(1, (0, 0), (-2, 0))]
        with pytest.raises(SingularSchemeError):
            exact_subscheme(Scheme(2, 1, tuple(nodes)))


class TestRobust:
    def test_polynomial_truth(self, rng):
        s = oversampled_scheme(rng, 2, 2, 3)
        truth = random_polynomial(rng, 2, 2)
        rep = robust_experiment(truth, s, 0.01, 10, seed=3, grid_size=512)
        assert rep.approximation_error == 0.0 and rep.norming_source == "subscheme"
        assert rep.max_ratio <= 1.0
        assert len(rep.trials) == 10

    def test_deterministic(self, rng):
        s = random_exact_scheme(rng, 2, 2)
        truth = random_polynomial(rng, 2, 2)
        a = robust_experiment(truth, s, 0.05, 5, seed=11, grid_size=256).to_dict()
        b = robust_experiment(truth, s, 0.05, 5, seed=11, grid_size=256).to_dict()
        assert a == b

    def test_trial_seeds_independent_of_count(self):
        assert [trial_seed(4, t) for t in range(3)] == [trial_seed(4, t) for t in range(5)][:3]

    def test_target(self):
        s = Scheme(1, 1, (Node(0, (0.0,)), Node(1, (0.0,), (1.0,)), Node(0, (0.5,))))

        def functionals(scheme):
            return np.array([np.exp(nd.point[0]) for nd in scheme.nodes])

        target = Target(lambda x: np.exp(x[:, 0]), functionals, Polynomial(1, 1, {(0,): 1.0, (1,): 1.0}))
        rep = robust_experiment(target, s, 0.0, 3, grid_size=128)
        assert rep.approximation_error_kind == "estimate" and rep.approximation_error > 0
        assert rep.max_ratio <= 1.0

    def test_bad_inputs(self, rng):
        s = random_exact_scheme(rng, 1, 1)
        with pytest.raises(BirkhoffError):
            robust_experiment(Polynomial.zero(1, 1), s, -1.0, 1)
        with pytest.raises(BirkhoffError):
            robust_experiment(Polynomial.zero(1, 1), s, 0.1, 0)
