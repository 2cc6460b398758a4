"""Shared fixtures: two hand-checkable 3x3 instances plus corpus helpers."""

import numpy as np
import pytest

from paretosimplex import CriteriaMatrix

# Efficient set is the closed edge between vertices 1 and 2: those vertices
# and the open face {1,2} pass their certificate programs, nothing else does.
EDGE_ONLY_ROWS = [[1.0, 2.0, -4.0], [2.0, -5.0, 1.0], [0.0, 3.0, -0.5]]

# Weights (1,2,1) tie every column at 2, so all feasible points are efficient.
ALL_EFFICIENT_ROWS = [[1.0, 2.0, -5.0], [2.0, 1.0, -1.0], [-3.0, -2.0, 9.0]]


@pytest.fixture
def edge_matrix() -> CriteriaMatrix:
    return CriteriaMatrix(EDGE_ONLY_ROWS)


@pytest.fixture
def full_matrix() -> CriteriaMatrix:
    return CriteriaMatrix(ALL_EFFICIENT_ROWS)


def random_matrix(rng: np.random.Generator, k: int | None = None, n: int | None = None) -> CriteriaMatrix:
    """Random integer criteria matrix with entries in [-9, 9]."""
    if k is None:
        k = int(rng.integers(2, 7))
    if n is None:
        n = int(rng.integers(2, 7))
    return CriteriaMatrix(rng.integers(-9, 10, size=(k, n)).astype(float))


def random_point_on_support(rng: np.random.Generator, n: int, support) -> np.ndarray:
    """Coordinates with mass exactly on the 1-based ``support`` columns,
    each component comfortably above the zero threshold."""
    support = list(support)
    coords = np.zeros(n)
    mass = rng.uniform(0.05, 1.0, len(support))
    coords[[j - 1 for j in support]] = mass / mass.sum()
    return coords


def barycenter(n: int, support) -> np.ndarray:
    support = list(support)
    coords = np.zeros(n)
    coords[[j - 1 for j in support]] = 1.0 / len(support)
    return coords
