import numpy as np
import pytest

from birkhoff.solver import Node, Scheme


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def worked_scheme():
    """n=1, d=2: value at 0, first derivative at 1, second derivative at 0."""
    return Scheme(1, 2, (Node(0, (0.0,)), Node(1, (1.0,), (1.0,)), Node(2, (0.0,), (1.0,))))


def planar_scheme(d, directions_by_order, points=None, rng=None):
    """Exact planar scheme from explicit per-order direction lists."""
    rng = rng or np.random.default_rng(0)
    nodes = [Node(0, tuple(rng.uniform(-0.5, 0.5, 2)))]
    for k in range(1, d + 1):
        for u in directions_by_order[k]:
            p = tuple(rng.uniform(-0.5, 0.5, 2)) if points is None else points
            nodes.append(Node(k, p, tuple(u)))
    return Scheme(2, d, tuple(nodes))


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number, ok, detail):
    """Store and print the one-line verdict of an acceptance criterion."""
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
