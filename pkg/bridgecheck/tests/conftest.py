"""
Shared fixtures for BRIDGEcheck tests.
"""

import pytest

from bridgecheck.graph import Graph, gen_barbell, gen_chain_sbm
from bridgecheck.spectral import weight_map


@pytest.fixture(scope="module")
def barbell():
    """The 2 x K_8 barbell with a rare bridge."""
    return gen_barbell(8)


@pytest.fixture(scope="module")
def barbell_rmap(barbell):
    """Weight map of the barbell at lambda = 2."""
    return weight_map(barbell.graph, 2.0)


@pytest.fixture(scope="module")
def chain():
    """The {10, 15, 20} clique chain."""
    return gen_chain_sbm([10, 15, 20])


@pytest.fixture(scope="module")
def chain_rmap(chain):
    """Weight map of the chain at lambda = 2."""
    return weight_map(chain.graph, 2.0)


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def path4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
