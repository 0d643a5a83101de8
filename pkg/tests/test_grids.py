import numpy as np
import pytest

from birkhoff.errors import BirkhoffError
from birkhoff.grids import Ball, Box, ball_points, domain_grid, lattice_points


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_ball_points_inside_with_sphere_half(n):
    pts = ball_points(n, 1000, seed=2)
    r = np.linalg.norm(pts, axis=1)
    assert pts.shape == (1000, n)
    assert np.all(r <= 1 + 1e-12)
    np.testing.assert_allclose(r[1::2], 1.0, atol=1e-12)


def test_ball_points_nested_and_seeded():
    a, b = ball_points(2, 256, seed=4), ball_points(2, 1024, seed=4)
    np.testing.assert_array_equal(a, b[:256])
    assert not np.array_equal(a, ball_points(2, 256, seed=5))


def test_scaled_ball():
    pts = domain_grid(Ball(2, 2.0, (1.0, -1.0)), 300)
    assert np.all(np.linalg.norm(pts - [1.0, -1.0], axis=1) <= 2.0 + 1e-12)


def test_lattice_corners_and_nesting():
    coarse = lattice_points([0.0], [1.0], 5)
    fine = lattice_points([0.0], [1.0], 9)
    assert coarse[0, 0] == 0.0 and coarse[-1, 0] == 1.0
    assert set(map(tuple, coarse)) <= set(map(tuple, fine))
    box = lattice_points([0, 0], [1, 2], 25)
    assert {tuple(p) for p in box} >= {(0.0, 0.0), (1.0, 2.0), (0.0, 2.0), (1.0, 0.0)}


def test_box_domain():
    pts = domain_grid(Box((-1.0,), (2.0,)), 31)
    assert pts.min() == -1.0 and pts.max() == 2.0


def test_bad_size():
    with pytest.raises(BirkhoffError):
        ball_points(2, 0)
