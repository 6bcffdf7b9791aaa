import numpy as np
import pytest

from polyangles import build_simplex, cube, regular_polygon, regular_simplex


@pytest.fixture(scope="session")
def cube3():
    return cube(3)


@pytest.fixture(scope="session")
def regular_tetra():
    return regular_simplex(3)


@pytest.fixture(scope="session")
def right_corner_tetra():
    # unit corner simplex: origin plus the three standard basis points
    return build_simplex(
        np.array([
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ])
    )


@pytest.fixture(scope="session")
def square():
    return regular_polygon(4)
