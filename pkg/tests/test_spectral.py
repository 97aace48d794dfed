"""
Tests for orthogonal polynomials, the Stieltjes transform and the spectral measure.
"""

import numpy as np
import pytest

from model.errors import IndexOutOfRange, NotAnAtom, PoleAtAtom
from model.graph import gen_kite, gen_path, gen_random
from model.lanczos import JacobiCoefficients, krylov_moments, unit_vector
from model.oracle import chebyshev_u
from model.spectral import (SpectralMeasure, eval_poly_p, eval_poly_p_monic, eval_poly_p_scaled,
                            eval_poly_q1, is_atom, matrix_element, measure_from_jacobi, moments,
                            poly_table, stieltjes, weight_by_residue)

from tests.conftest import walk_setup


def test_p0_is_one(tree_walk):
    jacobi = tree_walk[0]
    assert eval_poly_p(jacobi, 0, 0.7) == 1.0
    assert np.all(eval_poly_p(jacobi, 0, np.linspace(-2, 2, 5)) == 1.0)


def test_tree_p2_at_zero(tree_walk):
    assert eval_poly_p(tree_walk[0], 2, 0.0) == pytest.approx(-np.sqrt(4.5), abs=1e-12)


def test_path_top_polynomial_vanishes_on_atoms(path4_walk):
    jacobi = path4_walk[0]
    for l in range(1, 5):
        assert abs(eval_poly_p(jacobi, 4, 2 * np.cos(l * np.pi / 5))) <= 1e-10


def test_poly_table_shape(tree_walk):
    jacobi = tree_walk[0]
    x = np.linspace(-1, 1, 7)
    assert poly_table(jacobi, x).shape == (7, 5)
    assert poly_table(jacobi, x, 2).shape == (7, 3)
    with pytest.raises(IndexOutOfRange):
        eval_poly_p(jacobi, 5, 0.0)


def test_monic_and_scaled_agree(tree_walk):
    jacobi = tree_walk[0]
    x = 0.37
    for k in range(jacobi.dim + 1):
        value, log_prefactor = eval_poly_p_scaled(jacobi, k, x)
        monic, _ = eval_poly_p_monic(jacobi, k, x)
        assert value * np.exp(log_prefactor) == pytest.approx(monic, abs=1e-12)


def test_monic_tree_characteristic_polynomial(tree_walk):
    jacobi = tree_walk[0]
    x, h = 0.8, 1e-6
    value, derivative = eval_poly_p_monic(jacobi, 4, x)
    assert value == pytest.approx(x ** 4 - 4 * x ** 2 + 1, abs=1e-12)
    assert derivative == pytest.approx(4 * x ** 3 - 8 * x, abs=1e-12)
    numeric = (eval_poly_p_monic(jacobi, 4, x + h)[0] - eval_poly_p_monic(jacobi, 4, x - h)[0]) / (2 * h)
    assert derivative == pytest.approx(numeric, abs=1e-6)


def test_associated_polynomials(tree_walk):
    jacobi = tree_walk[0]
    assert eval_poly_q1(jacobi, 0, 5.0) == 1.0
    assert eval_poly_q1(jacobi, 1, 1.0) == pytest.approx(1.0, abs=1e-12)
    for x in (-1.3, 0.4, 2.5):
        assert eval_poly_q1(jacobi, 3, x) == pytest.approx(x ** 3 - x, abs=1e-12)
    with pytest.raises(IndexOutOfRange):
        eval_poly_q1(jacobi, 4, 0.0)


def test_stieltjes_single_edge(edge_walk):
    assert stieltjes(edge_walk[0], 2j) == pytest.approx(-0.4j, abs=1e-15)


def test_stieltjes_leading_moment(tree_walk):
    z = 1e6j
    assert abs(stieltjes(tree_walk[0], z) * z - 1) <= 1e-6


def test_stieltjes_path_chebyshev(path4_walk):
    expected = 3 * chebyshev_u(2, 1.5) / chebyshev_u(4, 1.5)
    assert expected == pytest.approx(24 / 55)
    assert stieltjes(path4_walk[0], 3.0) == pytest.approx(expected, abs=1e-14)


def test_stieltjes_matches_measure_sum(tree_walk):
    jacobi, _, measure = tree_walk
    for z in (0.3 + 0.2j, -2.5, 4j):
        assert stieltjes(jacobi, z) == pytest.approx(measure.stieltjes(z), abs=1e-12)


def test_stieltjes_pole(edge_walk):
    with pytest.raises(PoleAtAtom):
        stieltjes(edge_walk[0], 1.0)


def test_path_measure(path4_walk):
    measure = path4_walk[2]
    l = np.arange(4, 0, -1)
    assert np.allclose(measure.atoms, 2 * np.cos(l * np.pi / 5), atol=1e-12)
    assert np.allclose(measure.weights, 0.4 * np.sin(2 * l * np.pi / 5) ** 2, atol=1e-12)


def test_tree_measure(tree_walk, tree_atoms):
    measure = tree_walk[2]
    atoms, weights = tree_atoms
    assert np.max(np.abs(measure.atoms - atoms)) <= 1e-10
    assert np.max(np.abs(measure.weights - weights)) <= 1e-10
    assert abs(measure.weights.sum() - 1) <= 1e-10


def test_single_atom_measure():
    measure = measure_from_jacobi(JacobiCoefficients.from_lists([0.5], []))
    assert measure.atoms.tolist() == [0.5]
    assert measure.weights.tolist() == [1.0]


def test_weight_by_residue_examples(edge_walk, path4_walk, tree_walk):
    assert weight_by_residue(edge_walk[0], 1.0) == pytest.approx(0.5, abs=1e-12)
    x = 2 * np.cos(np.pi / 5)
    assert weight_by_residue(path4_walk[0], x) == pytest.approx(0.4 * np.sin(2 * np.pi / 5) ** 2, abs=1e-10)
    x = np.sqrt(2 + np.sqrt(3))
    assert weight_by_residue(tree_walk[0], x) == pytest.approx((3 + np.sqrt(3)) / 12, abs=1e-10)


def test_not_an_atom(tree_walk):
    assert not is_atom(tree_walk[0], 0.3)
    with pytest.raises(NotAnAtom):
        weight_by_residue(tree_walk[0], 0.3)


@pytest.mark.parametrize("seed", range(6))
def test_residue_weights_match_eigenvector_weights(seed):
    g = gen_random(12, 0.3, seed)
    jacobi, _, measure = walk_setup(g, 0)
    residues = [weight_by_residue(jacobi, x) for x in measure.atoms]
    assert np.max(np.abs(np.array(residues) - measure.weights)) <= 1e-8


@pytest.mark.parametrize("seed", range(6))
def test_quadrature_is_exact_on_moments(seed):
    g = gen_random(15, 0.25, seed)
    jacobi, _, measure = walk_setup(g, 3)
    m_max = 2 * jacobi.dim - 1
    diff = moments(measure, m_max) - krylov_moments(g, unit_vector(g.n, 3), m_max)
    scale = np.abs(measure.atoms[None, :]) ** np.arange(m_max + 1)[:, None] @ measure.weights
    assert np.all(np.abs(diff) <= 1e-8 * np.maximum(1.0, scale))


def test_matrix_element(tree, tree_walk):
    jacobi, basis, measure = tree_walk
    dense = tree.to_dense()
    for k in range(jacobi.dim):
        for power in range(4):
            direct = basis[k] @ np.linalg.matrix_power(dense, power)[:, 0]
            assert matrix_element(measure, jacobi, k, power) == pytest.approx(direct, abs=1e-12)


def test_measure_document(tree_walk):
    measure = tree_walk[2]
    doc = measure.to_dict()
    assert len(doc["atoms"]) == 4
    assert set(doc["atoms"][0]) == {"x", "weight"}
    again = SpectralMeasure.from_dict(doc)
    assert np.array_equal(again.atoms, measure.atoms)
    assert np.array_equal(again.weights, measure.weights)


@pytest.mark.parametrize("seed", range(4))
def test_polynomials_orthonormal_under_measure(seed):
    g = gen_random(16, 0.25, seed)
    jacobi, _, measure = walk_setup(g, 2)
    table = poly_table(jacobi, measure.atoms, jacobi.dim - 1)
    gram = table.T @ (measure.weights[:, None] * table)
    assert np.max(np.abs(gram - np.eye(jacobi.dim))) <= 1e-8


def test_tree_polynomials_orthonormal(tree_walk):
    jacobi, _, measure = tree_walk
    table = poly_table(jacobi, measure.atoms, jacobi.dim - 1)
    gram = table.T @ (measure.weights[:, None] * table)
    assert np.max(np.abs(gram - np.eye(4))) <= 1e-12


@pytest.mark.parametrize("graph,start", [(gen_random(25, 0.2, 1), 0), (gen_random(40, 0.1, 5), 7),
                                         (gen_kite(3, 6), 0), (gen_path(9), 4)])
def test_atoms_are_simple(graph, start):
    jacobi, _, measure = walk_setup(graph, start)
    assert measure.size == jacobi.dim
    assert np.min(np.diff(measure.atoms)) > 0
    assert np.all(measure.weights > 0)


@pytest.mark.parametrize("seed", range(3))
def test_stieltjes_agrees_with_measure_on_grid(seed):
    g = gen_random(20, 0.2, seed)
    jacobi, _, measure = walk_setup(g, 0)
    for imag in (0.5, 1.0, 2.0):
        for real in np.linspace(-4, 4, 17):
            z = complex(real, imag)
            assert stieltjes(jacobi, z) == pytest.approx(measure.stieltjes(z), abs=1e-10)
            assert stieltjes(jacobi, z.conjugate()) == pytest.approx(measure.stieltjes(z.conjugate()), abs=1e-10)


@pytest.fixture(scope="module")
def long_chain():
    """End-vertex Jacobi chain of the 2000-vertex path: alphas 0, betas 1."""
    jacobi = JacobiCoefficients.from_lists(np.zeros(2000), np.ones(1999))
    return jacobi, measure_from_jacobi(jacobi)


def test_long_chain_stieltjes(long_chain):
    jacobi, measure = long_chain
    with np.errstate(over="raise", invalid="raise"):
        for z in (3 + 1j, -2.5 + 0.5j, 0.1 + 2j):
            assert stieltjes(jacobi, z) == pytest.approx(measure.stieltjes(z), abs=1e-10)
        assert stieltjes(jacobi, 3.0) == pytest.approx((3 - np.sqrt(5)) / 2, abs=1e-12)


def test_long_chain_residues(long_chain):
    jacobi, measure = long_chain
    l = 2000 - np.arange(2000)
    closed = 2 / 2001 * np.sin(l * np.pi / 2001) ** 2
    with np.errstate(over="raise", invalid="raise"):
        middle = weight_by_residue(jacobi, measure.atoms[1000])
        top = weight_by_residue(jacobi, measure.atoms[-1])
    assert middle == pytest.approx(closed[1000], rel=1e-6)
    assert middle == pytest.approx(measure.weights[1000], rel=1e-6)
    assert top == pytest.approx(closed[-1], rel=1e-4)


def test_long_chain_rejects_non_atoms(long_chain):
    jacobi, measure = long_chain
    midpoint = (measure.atoms[-1] + measure.atoms[-2]) / 2
    with np.errstate(over="raise", invalid="raise"):
        assert is_atom(jacobi, measure.atoms[-1])
        assert not is_atom(jacobi, midpoint)
        assert not is_atom(jacobi, float(midpoint))
        assert not is_atom(jacobi, np.float64(3.0))
        with pytest.raises(NotAnAtom):
            weight_by_residue(jacobi, midpoint)
