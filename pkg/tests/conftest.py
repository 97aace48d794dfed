"""
Shared fixtures for the spectral walk tests.
"""

import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from model.graph import build_graph, gen_path, gen_tree_fig4
from model.lanczos import lanczos_run, unit_vector
from model.spectral import measure_from_jacobi


def walk_setup(g, o):
    """(jacobi, basis, measure) for a walk started at vertex o."""
    jacobi, basis = lanczos_run(g, unit_vector(g.n, o))
    return jacobi, basis, measure_from_jacobi(jacobi)


@pytest.fixture
def edge():
    return build_graph(2, [(0, 1)])


@pytest.fixture
def tree():
    return gen_tree_fig4()


@pytest.fixture
def path4():
    return gen_path(4)


@pytest.fixture
def edge_walk(edge):
    return walk_setup(edge, 0)


@pytest.fixture
def tree_walk(tree):
    return walk_setup(tree, 0)


@pytest.fixture
def path4_walk(path4):
    return walk_setup(path4, 1)


@pytest.fixture
def tree_atoms():
    """Exact tree measure: atoms ascending, weights to match."""
    outer, inner = np.sqrt(2 + np.sqrt(3)), np.sqrt(2 - np.sqrt(3))
    w_outer, w_inner = (3 + np.sqrt(3)) / 12, (3 - np.sqrt(3)) / 12
    return (np.array([-outer, -inner, inner, outer]),
            np.array([w_outer, w_inner, w_inner, w_outer]))
