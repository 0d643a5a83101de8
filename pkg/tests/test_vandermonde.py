import math
from itertools import permutations

import numpy as np
import pytest

from birkhoff.errors import DegenerateNodeError, DimensionMismatchError, SchemeShapeError
from birkhoff.solver import Node, Scheme, random_exact_scheme
from birkhoff.vandermonde import (
    DirectionSet,
    build_homogeneous_vandermonde,
    check_scheme_regularity,
    pairwise_independent,
    planar_product_determinant,
    vandermonde_determinant,
)

from conftest import planar_scheme


def leibniz_det(a):
    """Permutation-expansion determinant, independent of any factorization."""
    n = len(a)
    total = 0.0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1.0) ** inversions
        for i, j in enumerate(perm):
            term *= a[i][j]
        total += term
    return total


def unit_directions(rng, n, m):
    u = rng.standard_normal((m, n))
    return u / np.linalg.norm(u, axis=1)[:, None]


class TestBuild:
    def test_identity(self):
        a = build_homogeneous_vandermonde(DirectionSet(2, 1, ((1, 0), (0, 1))))
        np.testing.assert_array_equal(a, np.eye(2))

    def test_quadratic_rows(self):
        a = build_homogeneous_vandermonde(DirectionSet(2, 2, ((1, 0), (1, 1), (0, 1))))
        np.testing.assert_array_equal(a, [[1, 0, 0], [1, 1, 1], [0, 0, 1]])

    @pytest.mark.parametrize("k", [0, 1, 4, 7])
    def test_univariate(self, k):
        a = build_homogeneous_vandermonde(DirectionSet(1, k, ((1.5,),)))
        assert a.shape == (1, 1) and a[0, 0] == 1.5**k

    def test_wrong_cardinality(self):
        with pytest.raises(SchemeShapeError):
            build_homogeneous_vandermonde(DirectionSet(2, 2, ((1, 0), (0, 1))))

    def test_zero_direction(self):
        with pytest.raises(DegenerateNodeError):
            DirectionSet(2, 1, ((0, 0), (1, 0)))


class TestDeterminant:
    def test_worked_example(self):
        dirs = ((1, 0), (1, 1), (0, 1))
        expected = leibniz_det([[1, 0, 0], [1, 1, 1], [0, 0, 1]])
        assert expected == 1.0
        det = vandermonde_determinant(DirectionSet(2, 2, dirs))
        assert det.regular
        assert det.value == pytest.approx(expected, rel=1e-12)

    def test_repeated_direction(self):
        assert not vandermonde_determinant(DirectionSet(2, 2, ((1, 0), (1, 0), (0, 1)))).regular
        assert not vandermonde_determinant(DirectionSet(3, 1, ((1, 2, 3), (0, 1, 0), (1, 2, 3)))).regular

    def test_parallel_pair(self):
        assert not vandermonde_determinant(DirectionSet(2, 1, ((1, 0), (2, 0)))).regular

    def test_against_leibniz(self, rng):
        for n, k in [(2, 1), (2, 3), (3, 1), (3, 2), (2, 5)]:
            m = math.comb(n + k - 1, n - 1)
            dirs = rng.uniform(-2, 2, (m, n))
            ds = DirectionSet(n, k, tuple(map(tuple, dirs)))
            expected = leibniz_det(build_homogeneous_vandermonde(ds).tolist())
            det = vandermonde_determinant(ds)
            assert det.sign == math.copysign(1.0, expected)
            assert det.log_magnitude == pytest.approx(math.log(abs(expected)), rel=1e-10, abs=1e-10)

    def test_scale_invariance_of_verdict(self, rng):
        for _ in range(50):
            dirs = unit_directions(rng, 3, 6)
            ds = DirectionSet(3, 2, tuple(map(tuple, dirs)))
            scaled = dirs * rng.uniform(-5, 5, (6, 1))
            det, det2 = vandermonde_determinant(ds), vandermonde_determinant(DirectionSet(3, 2, tuple(map(tuple, scaled))))
            assert det.regular == det2.regular
            assert det.pivot_ratio == pytest.approx(det2.pivot_ratio, rel=1e-9)

    def test_generic_directions_are_regular(self, rng):
        for n in (1, 2, 3):
            for k in range(1, 5):
                m = math.comb(n + k - 1, n - 1)
                for _ in range(50):
                    ds = DirectionSet(n, k, tuple(map(tuple, unit_directions(rng, n, m))))
                    assert vandermonde_determinant(ds).regular

    def test_cone_directions_are_singular(self):
        # six points on x^2 + y^2 = z^2 are roots of a nonzero quadratic form
        angles = np.linspace(0, 2 * np.pi, 6, endpoint=False) + 0.1
        dirs = tuple((math.cos(t), math.sin(t), 1.0) for t in angles)
        assert not vandermonde_determinant(DirectionSet(3, 2, dirs)).regular


class TestPlanar:
    def test_examples(self):
        assert planar_product_determinant(DirectionSet(2, 1, ((1, 0), (0, 1)))).value == 1.0
        assert planar_product_determinant(DirectionSet(2, 2, ((1, 0), (1, 1), (0, 1)))).value == 1.0
        assert planar_product_determinant(DirectionSet(2, 2, ((1, 0), (1, 1), (2, 2)))).value == 0.0

    def test_requires_plane(self):
        with pytest.raises(DimensionMismatchError):
            planar_product_determinant(DirectionSet(3, 1, ((1, 0, 0), (0, 1, 0), (0, 0, 1))))

    def test_matches_factorization_including_sign(self, rng):
        for k in range(1, 7):
            for _ in range(20):
                ds = DirectionSet(2, k, tuple(map(tuple, rng.uniform(-1, 1, (k + 1, 2)))))
                a, b = vandermonde_determinant(ds), planar_product_determinant(ds)
                assert a.sign == b.sign
                assert a.log_magnitude == pytest.approx(b.log_magnitude, rel=1e-8, abs=1e-8)

    def test_verdict_is_pairwise_independence(self, rng):
        for k in range(1, 7):
            for _ in range(20):
                dirs = unit_directions(rng, 2, k + 1)
                if rng.random() < 0.5:
                    i, j = rng.choice(k + 1, 2, replace=False)
                    dirs[j] = -2.5 * dirs[i]
                ds = DirectionSet(2, k, tuple(map(tuple, dirs)))
                assert vandermonde_determinant(ds).regular == pairwise_independent(dirs)


class TestSchemeRegularity:
    DIRS = {1: [(1, 0), (0, 1)], 2: [(1, 0), (1, 1), (0, 1)]}

    def test_regular_planar(self):
        report = check_scheme_regularity(planar_scheme(2, self.DIRS))
        assert report.regular
        assert [r.k for r in report.per_degree] == [0, 1, 2]
        assert all(not r.warnings for r in report.per_degree)

    def test_irregular_at_two_only(self):
        dirs = dict(self.DIRS)
        dirs[2] = [(1, 0), (1, 0), (0, 1)]
        report = check_scheme_regularity(planar_scheme(2, dirs))
        assert report.failing_degrees == [2]
        assert report.to_dict()["regular"] is False

    def test_points_do_not_matter(self, rng):
        base = random_exact_scheme(rng, 3, 3)
        moved = Scheme(3, 3, tuple(Node(nd.order, tuple(rng.standard_normal(3) * 10), nd.direction) for nd in base.nodes))
        assert check_scheme_regularity(base).to_dict() == check_scheme_regularity(moved).to_dict()

    def test_shape_error_lists_orders(self):
        s = Scheme(2, 2, (Node(0, (0, 0)), Node(1, (0, 0), (1, 0)), Node(2, (0, 0), (1, 0))))
        with pytest.raises(SchemeShapeError) as exc:
            check_scheme_regularity(s)
        assert exc.value.orders == [1, 2]
