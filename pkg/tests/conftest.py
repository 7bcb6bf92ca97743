import numpy as np
import pytest

from gsample import build_laplacian, eigendecompose, gen_sensor


@pytest.fixture(scope="session")
def path2():
    """Two-node path graph objects: (graph, laplacian, basis)."""
    from gsample import Graph
    g = Graph(2, np.array([[0.0, 1.0], [1.0, 0.0]]))
    lap = build_laplacian(g)
    return g, lap, eigendecompose(lap)


@pytest.fixture(scope="session")
def sensor8():
    """Small sensor graph reused across tests: (graph, laplacian, basis)."""
    g = gen_sensor(8, 5, seed=11)
    lap = build_laplacian(g)
    return g, lap, eigendecompose(lap)


@pytest.fixture(scope="session")
def sensor10():
    g = gen_sensor(10, 6, seed=5)
    lap = build_laplacian(g)
    return g, lap, eigendecompose(lap)
