"""
Tests for the dense exact-evolution oracle, special functions and closed-form limits.
"""

import math

import numpy as np
import pytest

from model.errors import OutOfRange, TooLarge
from model.graph import build_graph, gen_path, gen_random
from model.lanczos import unit_vector
from model.oracle import (bessel_j, chebyshev_u, dense_eig, exact_evolution, exact_series,
                          kite_limit_amplitude, kite_limit_density, kite_limit_fourier,
                          oracle_measure, path_limit_density, path_limit_fourier, path_limit_q0)

from tests.conftest import walk_setup


def bessel_series(l, x, terms=60):
    """Ascending series sum_m (-1)^m (x/2)^(l+2m) / (m! (m+l)!)."""
    return sum((-1) ** m * (x / 2) ** (l + 2 * m) / (math.factorial(m) * math.factorial(m + l))
               for m in range(terms))


def test_dense_eig_path():
    eig = dense_eig(gen_path(4))
    assert np.allclose(eig.eigenvalues, 2 * np.cos(np.arange(4, 0, -1) * np.pi / 5), atol=1e-12)
    with pytest.raises(TooLarge):
        dense_eig(gen_path(10), cap=5)


def test_exact_evolution_examples(tree):
    assert np.allclose(exact_evolution(tree, 2, 0.0), unit_vector(6, 2), atol=1e-12)
    edge = build_graph(2, [(0, 1)])
    assert np.allclose(exact_evolution(edge, 0, np.pi), [-1, 0], atol=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_exact_evolution_is_unitary(seed):
    g = gen_random(25, 0.15, seed)
    psi = exact_series(g, 0, np.linspace(0, 20, 9))
    assert np.max(np.abs(np.linalg.norm(psi, axis=1) - 1)) <= 1e-10


def test_oracle_measure_matches_lanczos_measure(tree, tree_walk):
    measure = tree_walk[2]
    reference = oracle_measure(tree, 0)
    assert reference.size == measure.size
    assert np.allclose(reference.atoms, measure.atoms, atol=1e-10)
    assert np.allclose(reference.weights, measure.weights, atol=1e-10)


@pytest.mark.parametrize("seed", range(4))
def test_oracle_measure_random(seed):
    g = gen_random(18, 0.2, seed)
    measure = walk_setup(g, 1)[2]
    reference = oracle_measure(g, 1)
    assert reference.size == measure.size
    assert np.allclose(reference.atoms, measure.atoms, atol=1e-8)
    assert np.allclose(reference.weights, measure.weights, atol=1e-8)


def test_bessel_values():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(1, 2.0) == pytest.approx(0.5767248078, abs=1e-10)
    for l in range(6):
        for x in (0.3, 2.0, 7.5):
            assert bessel_j(l, x) == pytest.approx(bessel_series(l, x), abs=1e-10)


def test_bessel_recurrence_and_sum_rule():
    for x in (0.5, 3.0, 11.0, 40.0):
        for l in range(1, 40):
            lhs = bessel_j(l - 1, x) + bessel_j(l + 1, x)
            assert lhs == pytest.approx(2 * l / x * bessel_j(l, x), abs=1e-10)
    for x in (0.5, 3.0, 11.0):
        total = bessel_j(0, x) ** 2 + 2 * sum(bessel_j(l, x) ** 2 for l in range(1, 65))
        assert total == pytest.approx(1.0, abs=1e-8)


def test_bessel_domain():
    with pytest.raises(OutOfRange):
        bessel_j(65, 1.0)
    with pytest.raises(OutOfRange):
        bessel_j(1.5, 1.0)
    with pytest.raises(OutOfRange):
        bessel_j(2, 2000.0)


def test_chebyshev_values():
    assert chebyshev_u(0, 0.3) == 1.0
    assert chebyshev_u(1, 0.3) == pytest.approx(0.6)
    assert chebyshev_u(4, np.cos(np.pi / 5)) == pytest.approx(0.0, abs=1e-12)
    theta = 0.7
    assert chebyshev_u(6, np.cos(theta)) == pytest.approx(np.sin(7 * theta) / np.sin(theta), abs=1e-12)
    assert chebyshev_u(4, 1.5) == pytest.approx(55.0)
    with pytest.raises(OutOfRange):
        chebyshev_u(-1, 0.0)


def test_kite_limit_amplitude():
    assert kite_limit_amplitude(0, 0.0) == 1
    assert kite_limit_amplitude(2, 0.0) == 0
    assert kite_limit_amplitude(0, 1e-6) == pytest.approx(1.0, abs=1e-10)
    assert kite_limit_amplitude(1, 1.0) == pytest.approx(-2j * bessel_series(2, 2.0), abs=1e-10)


def test_kite_limit_is_complete():
    total = sum(abs(kite_limit_amplitude(l, 3.0)) ** 2 for l in range(201))
    assert total == pytest.approx(1.0, abs=1e-6)


def test_path_limit_q0_small_time():
    assert path_limit_q0(0.0) == 1
    assert path_limit_q0(1e-4) == pytest.approx(1.0, abs=1e-6)


def test_path_limit_density():
    assert path_limit_density(2.0) == 0.0
    assert path_limit_density(-3.0) == 0.0
    assert path_limit_density(1.0) == pytest.approx(np.sqrt(3) / (2 * np.pi))
    assert abs(path_limit_fourier(0.0) - 1) <= 1e-8
    assert abs(path_limit_fourier(2.0) - path_limit_q0(2.0)) <= 1e-8


@pytest.mark.parametrize("k", [2, 10, 100])
def test_kite_limit_density_normalized(k):
    assert abs(kite_limit_fourier(k, 0.0) - 1) <= 1e-8
    edge = 2 * np.sqrt(k + 1)
    assert kite_limit_density(k, edge) == pytest.approx(0.0, abs=1e-6)
    assert kite_limit_density(k, -edge) == pytest.approx(0.0, abs=1e-6)
    assert kite_limit_density(k, edge + 0.1) == 0.0


def test_kite_limit_density_value():
    assert kite_limit_density(2, 0.0) == pytest.approx(np.sqrt(12) / (4 * np.pi))
    with pytest.raises(OutOfRange):
        kite_limit_density(1, 0.0)
