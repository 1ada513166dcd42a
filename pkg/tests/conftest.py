import numpy as np
import pytest

from grassmann_kit.grassmann import random_horizontal
from grassmann_kit.stiefel import random_stiefel


def make_pair(seed, n, p, sigma1=None):
    """Random base ``U`` and horizontal ``D``, optionally rescaled to ``||D||_2 = sigma1``."""
    rng = np.random.default_rng(seed)
    U = random_stiefel(n, p, rng)
    D = random_horizontal(U, rng)
    if sigma1 is not None:
        D *= sigma1 / np.linalg.norm(D, 2)
    return U, D


def proj(Y):
    return Y @ Y.T


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def curvature_fixture():
    """The Gr(4, 2) plane spanned by B1 = [[1, 1], [-1, 1]] and B2 = [[-1, 1], [-1, -1]]."""
    U = np.eye(4)[:, :2]
    B1 = np.array([[1.0, 1.0], [-1.0, 1.0]])
    B2 = np.array([[-1.0, 1.0], [-1.0, -1.0]])
    D1 = np.vstack([np.zeros((2, 2)), B1])
    D2 = np.vstack([np.zeros((2, 2)), B2])
    return U, D1, D2
