import numpy as np
import pytest

from cli.loader import load_algebra
from numerics.config import SolverConfig

CATALOG_KEYS = ["abelian:3", "abelian:4", "abelian:5", "abelian:6",
                "heisenberg3", "so3", "paper6", "poincare-sub"]
NONABELIAN_KEYS = ["heisenberg3", "so3", "paper6", "poincare-sub"]


@pytest.fixture
def cfg():
    """Default tolerances with fewer quadrature panels."""
    return SolverConfig(quadrature_panels=2)


@pytest.fixture
def rng():
    return np.random.default_rng(20241018)


@pytest.fixture(scope="session")
def nil6():
    return load_algebra("paper6")


@pytest.fixture(scope="session")
def heisenberg():
    return load_algebra("heisenberg3")


@pytest.fixture(scope="session")
def so3():
    return load_algebra("so3")


@pytest.fixture(scope="session")
def poincare():
    return load_algebra("poincare-sub")


@pytest.fixture(scope="session", params=CATALOG_KEYS)
def catalog_alg(request):
    return load_algebra(request.param)


@pytest.fixture(scope="session", params=NONABELIAN_KEYS)
def nonabelian_alg(request):
    return load_algebra(request.param)


def small_point(rng, dim, radius):
    return rng.uniform(-radius, radius, dim)
